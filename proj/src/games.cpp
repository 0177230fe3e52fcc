#include "harmonic/games.hpp"

#include <algorithm>
#include <random>

#include "harmonic/errors.hpp"

namespace harmonic {

namespace {

Rat inv(const Int& n) { return Rat(Int(1), n); }

Rat inv_pow(const Int& n, unsigned p) { return Rat(Int(1), int_pow(n, p)); }

// sum_{n >= n0} 100/n^4 < 100/(3(n0-3)(n0-2)(n0-1)), n0 >= 4.
Rat quartic_tail(const Int& n0, const Rat& C) {
  if (n0 < 4) throw ConfigInvalidError("quartic tail bound needs n >= 4");
  return C / Rat(3 * (n0 - 3) * (n0 - 2) * (n0 - 1));
}

GameConfig greedy_preset(const std::string& name, std::uint64_t start, unsigned power,
                         std::pair<Rat, Rat> interval, Rat default_target) {
  GameConfig c;
  c.name = name;
  c.dim = 1;
  c.start_k = start;
  c.index_map = [](std::uint64_t k) -> Int { return to_int(k); };
  c.index_map_name = "n=k";
  c.main_term = [power](int, const Int& n) -> std::optional<Rat> { return inv_pow(n, power); };
  c.multiplier = 1;
  c.perturbation_bound = [](const Int&) -> Rat { return Rat(0); };
  c.perturbation_tail = [](std::uint64_t) -> Rat { return Rat(0); };
  c.start = {Rat(0)};
  c.winning_interval = interval;
  c.default_target = {default_target};
  return c;
}

// Game #3 played on the rounds n = map(k) with main term 1/n^2 and
// Bob's allowance 100/n^4.
GameConfig quartic_preset(const std::string& name, std::uint64_t start_k, std::function<Int(std::uint64_t)> map,
                          std::string map_name) {
  GameConfig c;
  c.name = name;
  c.dim = 1;
  c.start_k = start_k;
  c.index_map = map;
  c.index_map_name = std::move(map_name);
  c.main_term = [](int, const Int& n) -> std::optional<Rat> { return inv_pow(n, 2); };
  c.multiplier = 3;
  c.perturbation_bound = [](const Int& n) -> Rat { return Rat(100) * inv_pow(n, 4); };
  // The played indices are a subset of n >= map(k).
  c.perturbation_tail = [map](std::uint64_t k) -> Rat { return quartic_tail(map(k), Rat(100)); };
  c.start = {Rat(0)};
  c.default_target = {make_rat(1, 10000)};
  return c;
}

}  // namespace

SeriesSpec harmonic_series() {
  return {"1/n", [](const Int& n) { return inv(n); }, 1};
}

SeriesSpec odd_harmonic_series() {
  return {"1/(2n-1)", [](const Int& n) { return inv(2 * n - 1); }, 1};
}

SeriesSpec inverse_squares(std::uint64_t start) {
  return {"1/n^2", [](const Int& n) { return inv_pow(n, 2); }, start};
}

GreedyResult greedy_subseries(const Rat& target, const SeriesSpec& series, std::uint64_t n_max) {
  if (target <= 0) throw InputError("greedy_subseries: target must be positive");
  GreedyResult r;
  r.residual = target;
  for (std::uint64_t n = series.start; n <= n_max && r.residual > 0; ++n) {
    const Rat t = series.term(to_int(n));
    if (t <= r.residual) {
      r.residual -= t;
      r.indices.push_back(n);
    }
  }
  return r;
}

bool smooth_replaceability_check(const SeriesSpec& series, std::uint64_t n_lo, std::uint64_t n_hi,
                                 std::uint64_t horizon, const std::function<Rat(std::uint64_t N)>& tail_floor) {
  constexpr long prec = 128;
  n_lo = std::max(n_lo, series.start);
  for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
    Enc tail = Enc::from_int(0, prec);
    for (std::uint64_t k = n + 1; k <= n + horizon; ++k) tail += Enc::from_rat(series.term(to_int(k)), prec);
    if (tail_floor) tail += tail_floor(n + horizon);
    if (!tail.certainly_gt(series.term(to_int(n)))) return false;
  }
  return true;
}

std::vector<Rat> move_effect(const UnitFractionMove& move, const Int& n) {
  std::vector<Rat> v{Rat(0), Rat(0)};
  auto add = [&](std::int64_t a, int sign) {
    const Int an = to_int(a) * n;
    v[0] += sign * inv(an);
    v[1] += sign * inv(an * (an + 1));
  };
  for (auto a : move.add) add(a, 1);
  for (auto a : move.remove) add(a, -1);
  return v;
}

std::vector<std::string> preset_names() {
  return {"g1", "g2", "g3", "g4-squares", "g4-odd", "g4-30k1", "g5", "g6"};
}

GameConfig game_preset(const std::string& name) {
  if (name == "g1") return greedy_preset("g1", 1, 1, {Rat(0), Rat(1000)}, make_rat(9, 20));
  if (name == "g2") {
    // [0, pi^2/6 - 1]; the upper end is rounded down.
    return greedy_preset("g2", 2, 2, {Rat(0), make_rat(6449, 10000)}, make_rat(1, 2));
  }
  if (name == "g3") {
    GameConfig c = quartic_preset("g3", 100, [](std::uint64_t k) -> Int { return to_int(k); }, "n=k");
    c.winning_interval = {make_rat(4, 100000), make_rat(3, 10000)};
    return c;
  }
  if (name == "g4-odd") return quartic_preset(name, 51, [](std::uint64_t k) -> Int { return 2 * to_int(k) - 1; }, "n=2k-1");
  if (name == "g4-30k1") return quartic_preset(name, 4, [](std::uint64_t k) -> Int { return 30 * to_int(k) + 1; }, "n=30k+1");
  if (name == "g4-squares") {
    // Bob perturbs 1/n^2 by 100/n^3; on n = k^2 that is 1/k^4 against 100/k^6.
    GameConfig c;
    c.name = name;
    c.start_k = 15;
    c.index_map = [](std::uint64_t k) -> Int { return to_int(k) * to_int(k); };
    c.index_map_name = "n=k^2";
    c.main_term = [](int, const Int& n) -> std::optional<Rat> { return inv_pow(n, 2); };
    c.perturbation_bound = [](const Int& n) -> Rat { return Rat(100) * inv_pow(n, 3); };
    // sum_{l >= k} 100/l^6 < 100/(5 (k-1)^5)
    c.perturbation_tail = [](std::uint64_t k) -> Rat { return Rat(20) * inv_pow(to_int(k - 1), 5); };
    c.start = {Rat(0)};
    c.default_target = {make_rat(4, 100000)};
    return c;
  }
  if (name == "g5") {
    GameConfig c;
    c.name = name;
    c.dim = 2;
    c.start_k = 100;
    c.index_map = [](std::uint64_t k) -> Int { return to_int(k); };
    c.index_map_name = "n=k";
    c.main_term = [](int j, const Int& n) -> std::optional<Rat> {
      const bool odd = mpz_odd_p(n.get_mpz_t()) != 0;
      if ((j == 0) == odd) return inv_pow(n, 2);
      return std::nullopt;
    };
    c.perturbation_bound = [](const Int& n) -> Rat { return Rat(100) * inv_pow(n, 4); };
    c.perturbation_tail = [](std::uint64_t k) -> Rat { return quartic_tail(to_int(k), Rat(100)); };
    c.start = {Rat(0), Rat(0)};
    c.default_target = {make_rat(1, 20000), make_rat(1, 20000)};
    return c;
  }
  if (name == "g6") {
    GameConfig c;
    c.name = name;
    c.dim = 2;
    // From k = 13 on, the vertical main terms of later rounds sum to more
    // than four times the current one.
    c.start_k = 13;
    c.index_map = [](std::uint64_t k) -> Int { return 30 * to_int(k) * to_int(k) + 1; };
    c.index_map_name = "n=30k^2+1";
    c.main_term = [](int j, const Int& n) -> std::optional<Rat> {
      return j == 0 ? Rat(inv(30 * n)) : Rat(inv(9 * n * n));
    };
    c.perturbation_bound = [](const Int& n) -> Rat { return inv_pow(n, 3); };
    // sum_{l >= k} 1/(30 l^2)^3 < 1/(27000 * 5 (k-1)^5)
    c.perturbation_tail = [](std::uint64_t k) -> Rat { return Rat(Int(1), 135000 * int_pow(to_int(k - 1), 5)); };
    c.start = {Rat(0), Rat(0)};
    c.moves = {{0, {"1/(15n) + 1/(20n) - 1/(12n)", {15, 20}, {12}}}, {1, {"1/(2n) - 1/(3n) - 1/(6n)", {2}, {3, 6}}}};
    const Int n0 = c.index_map(c.start_k);
    c.default_target = {make_rat(3, 2) * inv(30 * n0), make_rat(3, 2) * inv(9 * n0 * n0)};
    return c;
  }
  throw ConfigInvalidError("unknown game preset '" + name + "'");
}

void validate_config(const GameConfig& config, std::uint64_t k_end) {
  if (config.dim < 1) throw ConfigInvalidError(config.name + ": dimension must be positive");
  if (static_cast<int>(config.start.size()) != config.dim)
    throw ConfigInvalidError(config.name + ": start point has the wrong dimension");
  if (config.multiplier < 1) throw ConfigInvalidError(config.name + ": threshold multiplier below 1");
  for (std::uint64_t k = config.start_k; k < k_end; ++k) {
    const Int n = config.index_map(k);
    const Rat tail = config.perturbation_tail(k);
    if (tail < config.perturbation_bound(n))
      throw ConfigInvalidError(config.name + ": perturbation tail below the round bound at k=" + std::to_string(k));
    for (int j = 0; j < config.dim; ++j) {
      const auto m = config.main_term(j, n);
      if (!m) continue;
      if (*m <= 0) throw ConfigInvalidError(config.name + ": non-positive main term");
      if (tail > 0 && !(config.multiplier * *m > *m + tail))
        throw ConfigInvalidError(config.name + ": threshold does not exceed main term plus perturbation tail at k=" +
                                 std::to_string(k));
    }
    for (const auto& [j, move] : config.moves) {
      const auto eff = move_effect(move, n);
      const Rat bound = config.perturbation_bound(n);
      for (int i = 0; i < config.dim; ++i) {
        const Rat expected = i == j ? config.main_term(j, n).value_or(Rat(0)) : Rat(0);
        const Rat dev = eff[i] - expected;
        if (abs(dev) > bound)
          throw ConfigInvalidError(config.name + ": move '" + move.name + "' deviates beyond the bound at k=" +
                                   std::to_string(k));
      }
    }
  }
}

std::string to_string(AdversaryKind k) {
  switch (k) {
    case AdversaryKind::zero:
      return "zero";
    case AdversaryKind::seeded_random:
      return "random";
    case AdversaryKind::overshooter:
      return "overshooter";
  }
  return "zero";
}

AdversaryKind parse_adversary(const std::string& s) {
  if (s == "zero") return AdversaryKind::zero;
  if (s == "random" || s == "seeded-random") return AdversaryKind::seeded_random;
  if (s == "overshooter") return AdversaryKind::overshooter;
  throw ConfigInvalidError("unknown adversary '" + s + "'");
}

namespace {

// Alice's decisions for one round, then x += eps * main. Returns eps.
std::vector<std::int8_t> alice_moves(const GameConfig& config, const Int& n, const std::vector<Rat>& target,
                                     std::vector<Enc>& x) {
  std::vector<std::int8_t> eps(config.dim, -1);
  for (int j = 0; j < config.dim; ++j) {
    const auto m = config.main_term(j, n);
    if (!m) continue;
    eps[j] = x[j].certainly_le(target[j] - config.multiplier * *m) ? 1 : 0;
    if (eps[j]) x[j] += *m;
  }
  return eps;
}

std::vector<Enc> start_state(const GameConfig& config) {
  std::vector<Enc> x;
  for (const auto& s : config.start) x.push_back(Enc::from_rat(s, config.precision));
  return x;
}

}  // namespace

Trajectory run_game(const GameConfig& config, const std::vector<Rat>& target, const AdversarySpec& adversary,
                    std::uint64_t rounds) {
  if (static_cast<int>(target.size()) != config.dim)
    throw InputError(config.name + ": target has " + std::to_string(target.size()) + " coordinates, expected " +
                     std::to_string(config.dim));
  validate_config(config, config.start_k + rounds);

  Trajectory t;
  t.config_name = config.name;
  t.target = target;
  t.adversary = adversary;
  t.start = start_state(config);
  t.steps.reserve(rounds);

  std::mt19937_64 gen(adversary.seed);
  const Rat two32 = Rat(Int(1) << 32);
  std::vector<Enc> x = t.start;
  for (std::uint64_t k = config.start_k; k < config.start_k + rounds; ++k) {
    TrajectoryStep step;
    step.k = k;
    step.n = config.index_map(k);
    step.eps = alice_moves(config, step.n, target, x);
    const Rat bound = config.perturbation_bound(step.n);
    for (int j = 0; j < config.dim; ++j) {
      Rat d = 0;
      switch (adversary.kind) {
        case AdversaryKind::zero:
          break;
        case AdversaryKind::seeded_random: {
          // Top 33 bits, shifted to [-2^32, 2^32).
          const auto v = static_cast<std::int64_t>(gen() >> 31) - (std::int64_t{1} << 32);
          d = bound * Rat(to_int(v)) / two32;
          break;
        }
        case AdversaryKind::overshooter:
          d = x[j].mid_rat() < target[j] ? bound : Rat(-bound);
          break;
      }
      step.perturbation.push_back(d);
      if (d != 0) x[j] += d;
    }
    step.state = x;
    t.steps.push_back(std::move(step));
  }
  return t;
}

std::vector<std::vector<Enc>> replay_states(const GameConfig& config, const Trajectory& t) {
  std::vector<std::vector<Enc>> out;
  out.reserve(t.steps.size());
  std::vector<Enc> x = start_state(config);
  for (const auto& step : t.steps) {
    const Int n = config.index_map(step.k);
    if (n != step.n) throw MismatchError("replay: round index differs at k=" + std::to_string(step.k));
    const auto eps = alice_moves(config, n, t.target, x);
    if (eps != step.eps) throw MismatchError("replay: eps differs at k=" + std::to_string(step.k));
    const Rat bound = config.perturbation_bound(n);
    for (int j = 0; j < config.dim; ++j) {
      const Rat& d = step.perturbation.at(j);
      if (abs(d) > bound) throw MismatchError("replay: logged perturbation exceeds the bound");
      if (d != 0) x[j] += d;
    }
    out.push_back(x);
  }
  return out;
}

std::vector<Enc> replay(const GameConfig& config, const Trajectory& t) {
  const auto states = replay_states(config, t);
  for (std::size_t i = 0; i < states.size(); ++i)
    for (int j = 0; j < config.dim; ++j)
      if (!states[i][j].identical(t.steps[i].state.at(j)))
        throw MismatchError("replay: state differs at k=" + std::to_string(t.steps[i].k));
  return states.empty() ? start_state(config) : states.back();
}

std::vector<CaseCounts> case_occurrences(const Trajectory& t) {
  std::vector<CaseCounts> out(t.target.size());
  for (const auto& step : t.steps) {
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (step.eps[j] == 1) {
        ++out[j].case1;
        if (!out[j].first_case1_k) out[j].first_case1_k = step.k;
      } else if (step.eps[j] == 0) {
        ++out[j].case2;
        if (!out[j].first_case2_k) out[j].first_case2_k = step.k;
      }
    }
  }
  return out;
}

Rat distance_upper(const std::vector<Enc>& x, const std::vector<Rat>& target) {
  Rat best = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const Rat d = std::max(abs(x[j].hi_rat() - target[j]), abs(x[j].lo_rat() - target[j]));
    best = std::max(best, d);
  }
  return best;
}

bool in_winning_interval(const GameConfig& config, const std::vector<Rat>& target) {
  if (!config.winning_interval) return true;
  const auto& [lo, hi] = *config.winning_interval;
  for (const auto& v : target)
    if (v < lo || v >= hi) return false;
  return true;
}

}  // namespace harmonic
