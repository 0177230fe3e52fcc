#include "doctest.h"
#include "harmonic/errors.hpp"
#include "harmonic/games.hpp"
#include "harmonic/json_io.hpp"

#include <sstream>

using namespace harmonic;

namespace {

Rat inv_sq(std::uint64_t n) { return make_rat(Int(1), to_int(n) * to_int(n)); }

// sum_{n >= n0} 100/n^4 < 100/(3(n0-3)(n0-2)(n0-1))
Rat quartic_tail(std::uint64_t n0) {
  const Int a = to_int(n0);
  return Rat(100) / Rat(3 * (a - 3) * (a - 2) * (a - 1));
}

}  // namespace

TEST_CASE("greedy harmonic subseries hits 9/20 exactly") {
  const GreedyResult g = greedy_subseries(make_rat(9, 20), harmonic_series(), 1000);
  CHECK(g.residual == 0);
  CHECK(g.indices == std::vector<std::uint64_t>{3, 9, 180});
}

TEST_CASE("greedy residual is nonnegative and shrinks with n_max") {
  for (const SeriesSpec& s : {harmonic_series(), odd_harmonic_series(), inverse_squares()}) {
    const Rat target = s.name == "1/n^2" ? make_rat(1, 2) : make_rat(7, 11);
    Rat prev = target;
    for (std::uint64_t n_max : {10, 100, 1000, 5000}) {
      const GreedyResult g = greedy_subseries(target, s, n_max);
      CHECK(g.residual >= 0);
      CHECK(g.residual <= prev);
      prev = g.residual;
    }
    // For a divergent series or a target inside the range, the residual
    // is below the last skipped term.
    CHECK(prev < s.term(Int(1000)));
  }
  CHECK_THROWS_AS(greedy_subseries(Rat(0), harmonic_series(), 10), InputError);
}

TEST_CASE("smooth replaceability") {
  CHECK(smooth_replaceability_check(harmonic_series(), 2, 1000, 10000));
  // 1 > sum_{k>=2} 1/k^2 = pi^2/6 - 1
  CHECK_FALSE(smooth_replaceability_check(inverse_squares(1), 1, 1, 10000,
                                          [](std::uint64_t N) { return make_rat(Int(1), to_int(N + 1)); }));
  const SeriesSpec geometric{"2^-n", [](const Int& n) { return Rat(Int(1), int_pow(Int(2), n.get_ui())); }, 1};
  CHECK_FALSE(smooth_replaceability_check(geometric, 1, 20, 200));
  // 1/n^2 with an integral tail floor 1/(N+1).
  CHECK(smooth_replaceability_check(inverse_squares(), 3, 500, 100,
                                    [](std::uint64_t N) { return make_rat(Int(1), to_int(N + 1)); }));
}

TEST_CASE("unit-fraction moves of game six stay within main term and bound") {
  const GameConfig c = game_preset("g6");
  for (std::uint64_t k = c.start_k; k < c.start_k + 200; ++k) {
    const Int n = c.index_map(k);
    for (const auto& [j, move] : c.moves) {
      const std::vector<Rat> e = move_effect(move, n);
      for (int i = 0; i < 2; ++i) {
        const Rat main = i == j ? *c.main_term(i, n) : Rat(0);
        REQUIRE(abs(e[i] - main) <= c.perturbation_bound(n));
      }
    }
  }
}

TEST_CASE("every preset validates") {
  for (const auto& name : preset_names()) {
    const GameConfig c = game_preset(name);
    CHECK_NOTHROW(validate_config(c, c.start_k + 500));
  }
  CHECK_THROWS_AS(game_preset("nope"), ConfigInvalidError);
  GameConfig bad = game_preset("g3");
  bad.perturbation_tail = [](std::uint64_t) { return Rat(0); };
  CHECK_THROWS_AS(validate_config(bad, 200), ConfigInvalidError);
  GameConfig bad_start = game_preset("g5");
  bad_start.start = {Rat(0)};
  CHECK_THROWS_AS(validate_config(bad_start, 200), ConfigInvalidError);
}

TEST_CASE("game three: distance envelope for seeded random adversaries") {
  const GameConfig c = game_preset("g3");
  const std::vector<Rat> target{make_rat(1, 10000)};
  const Rat drift = 2 * quartic_tail(c.start_k);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Trajectory t = run_game(c, target, {AdversaryKind::seeded_random, seed}, 1000);
    const auto cases = case_occurrences(t);
    CHECK(cases[0].case1 > 0);
    CHECK(cases[0].case2 > 0);
    std::optional<std::uint64_t> last_case2;
    for (const auto& s : t.steps) {
      REQUIRE(abs(s.perturbation[0]) <= c.perturbation_bound(s.n));
      if (s.eps[0] == 0) last_case2 = s.n.get_ui();
      if (last_case2) REQUIRE(distance_upper(s.state, target) <= 3 * inv_sq(*last_case2) + drift);
    }
  }
}

TEST_CASE("game three: overshooter and zero adversaries converge") {
  const GameConfig c = game_preset("g3");
  for (auto kind : {AdversaryKind::zero, AdversaryKind::overshooter}) {
    const Trajectory t = run_game(c, c.default_target, {kind, 0}, 10000);
    CHECK(distance_upper(t.final_state(), c.default_target) < make_rat(1, 10000000));
  }
}

TEST_CASE("target zero never triggers case one; default target starts with case two") {
  const GameConfig c = game_preset("g3");
  const Trajectory zero = run_game(c, {Rat(0)}, {AdversaryKind::zero, 0}, 200);
  CHECK(case_occurrences(zero)[0].case1 == 0);
  const Trajectory def = run_game(c, c.default_target, {AdversaryKind::zero, 0}, 200);
  CHECK(def.steps.front().eps[0] == 0);
}

TEST_CASE("game six moves both coordinates in both directions") {
  const GameConfig c = game_preset("g6");
  const Trajectory t = run_game(c, c.default_target, {AdversaryKind::seeded_random, 7}, 2000);
  const auto cases = case_occurrences(t);
  for (int j = 0; j < 2; ++j) {
    CHECK(cases[j].case1 > 0);
    CHECK(cases[j].case2 > 0);
  }
}

TEST_CASE("game five alternates coordinates") {
  const GameConfig c = game_preset("g5");
  const Trajectory t = run_game(c, c.default_target, {AdversaryKind::zero, 0}, 100);
  for (const auto& s : t.steps) CHECK((s.eps[0] == -1) != (s.eps[1] == -1));
}

TEST_CASE("trajectories replay bit for bit, also through JSON lines") {
  for (const auto& name : {"g3", "g4-squares", "g4-odd", "g4-30k1", "g5", "g6"}) {
    const GameConfig c = game_preset(name);
    const Trajectory t = run_game(c, c.default_target, {AdversaryKind::seeded_random, 3}, 300);
    CHECK_NOTHROW(replay(c, t));
    std::stringstream ss;
    write_trajectory_jsonl(ss, c, t);
    const std::vector<Enc> last = replay_jsonl(c, ss);
    for (std::size_t j = 0; j < last.size(); ++j) {
      CHECK(last[j].lo_rat() == t.final_state()[j].lo_rat());
      CHECK(last[j].hi_rat() == t.final_state()[j].hi_rat());
    }
  }
}

TEST_CASE("tampered trajectories are rejected") {
  const GameConfig c = game_preset("g3");
  Trajectory t = run_game(c, c.default_target, {AdversaryKind::seeded_random, 1}, 100);
  Trajectory flipped = t;
  flipped.steps[10].eps[0] ^= 1;
  CHECK_THROWS_AS(replay(c, flipped), MismatchError);
  Trajectory greedy_bob = t;
  greedy_bob.steps[5].perturbation[0] = 2 * c.perturbation_bound(greedy_bob.steps[5].n);
  CHECK_THROWS_AS(replay(c, greedy_bob), MismatchError);
}

TEST_CASE("same seed, same trajectory") {
  const GameConfig c = game_preset("g3");
  const Trajectory a = run_game(c, c.default_target, {AdversaryKind::seeded_random, 42}, 500);
  const Trajectory b = run_game(c, c.default_target, {AdversaryKind::seeded_random, 42}, 500);
  const Trajectory d = run_game(c, c.default_target, {AdversaryKind::seeded_random, 43}, 500);
  CHECK(a.final_state()[0].lo_rat() == b.final_state()[0].lo_rat());
  CHECK(a.steps[0].perturbation[0] != d.steps[0].perturbation[0]);
  CHECK(parse_adversary("random") == AdversaryKind::seeded_random);
  CHECK_THROWS_AS(parse_adversary("nice"), InputError);
}
