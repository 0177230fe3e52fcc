#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "harmonic/enc.hpp"
#include "harmonic/rat.hpp"

namespace harmonic {

// A series of positive terms term(n), n >= start.
struct SeriesSpec {
  std::string name;
  std::function<Rat(const Int& n)> term;
  std::uint64_t start = 1;
};

SeriesSpec harmonic_series();      // 1/n, n >= 1
SeriesSpec odd_harmonic_series();  // 1/(2n-1), n >= 1
SeriesSpec inverse_squares(std::uint64_t start = 2);

struct GreedyResult {
  std::vector<std::uint64_t> indices;
  Rat residual;
};

// x_{n+1} = x_n + term(n) iff x_n + term(n) <= target, for start <= n <= n_max.
GreedyResult greedy_subseries(const Rat& target, const SeriesSpec& series, std::uint64_t n_max);

// True iff, for every n in [n_lo, n_hi], a certified lower bound of
// sum_{k>n} term(k) strictly exceeds term(n). The tail is bounded below by
// the partial sum up to `horizon` terms past n; `tail_floor(N)` may add a
// certified lower bound for sum_{k>N} term(k).
bool smooth_replaceability_check(const SeriesSpec& series, std::uint64_t n_lo, std::uint64_t n_hi,
                                 std::uint64_t horizon,
                                 const std::function<Rat(std::uint64_t N)>& tail_floor = nullptr);

// Difference of unit-fraction terms (sum over add - sum over remove) of
// (1/(a n), 1/(a n (a n + 1))).
struct UnitFractionMove {
  std::string name;
  std::vector<std::int64_t> add;
  std::vector<std::int64_t> remove;
};

std::vector<Rat> move_effect(const UnitFractionMove& move, const Int& n);

struct GameConfig {
  std::string name;
  int dim = 1;
  std::uint64_t start_k = 1;
  // Round k plays the series index n(k).
  std::function<Int(std::uint64_t k)> index_map;
  std::string index_map_name;
  // Main term of coordinate j at index n, or nullopt if the round does not
  // move coordinate j.
  std::function<std::optional<Rat>(int j, const Int& n)> main_term;
  Rat multiplier = 3;
  // Bob's allowance per coordinate and played round.
  std::function<Rat(const Int& n)> perturbation_bound;
  // Upper bound of sum_{l >= k} perturbation_bound(n(l)).
  std::function<Rat(std::uint64_t k)> perturbation_tail;
  std::vector<Rat> start;
  // Moves whose exact effect must stay within main term + bound.
  std::vector<std::pair<int, UnitFractionMove>> moves;
  // Targets proved winnable, [lo, hi) per coordinate (1-D presets only).
  std::optional<std::pair<Rat, Rat>> winning_interval;
  std::vector<Rat> default_target;
  long precision = 256;
};

// Names: g1, g2, g3, g4-squares, g4-odd, g4-30k1, g5, g6.
std::vector<std::string> preset_names();
GameConfig game_preset(const std::string& name);

// Checks, for played rounds k in [start_k, k_end): multiplier * main >
// main + perturbation_tail(k) (multiplier >= 1 if there is no perturbation),
// and that each move's exact effect is within the bound. Throws
// ConfigInvalidError.
void validate_config(const GameConfig& config, std::uint64_t k_end);

enum class AdversaryKind { zero, seeded_random, overshooter };

struct AdversarySpec {
  AdversaryKind kind = AdversaryKind::zero;
  std::uint64_t seed = 0;
};

std::string to_string(AdversaryKind k);
AdversaryKind parse_adversary(const std::string& s);

struct TrajectoryStep {
  std::uint64_t k = 0;
  Int n;
  std::vector<Enc> state;        // after the round
  std::vector<std::int8_t> eps;  // -1 if the coordinate was not moved
  std::vector<Rat> perturbation;
};

struct Trajectory {
  std::string config_name;
  std::vector<Rat> target;
  AdversarySpec adversary;
  std::vector<Enc> start;
  std::vector<TrajectoryStep> steps;

  const std::vector<Enc>& final_state() const { return steps.empty() ? start : steps.back().state; }
};

// Plays `rounds` played rounds from start_k. Validates the config first.
Trajectory run_game(const GameConfig& config, const std::vector<Rat>& target, const AdversarySpec& adversary,
                    std::uint64_t rounds);

// Re-runs the rounds with the logged perturbations and returns the state
// after each round. Throws MismatchError if an eps bit differs or a logged
// perturbation exceeds the bound.
std::vector<std::vector<Enc>> replay_states(const GameConfig& config, const Trajectory& t);

// As replay_states, and each logged state must match bit for bit.
std::vector<Enc> replay(const GameConfig& config, const Trajectory& t);

struct CaseCounts {
  std::uint64_t case1 = 0;  // threshold satisfied, term added
  std::uint64_t case2 = 0;
  std::optional<std::uint64_t> first_case1_k;
  std::optional<std::uint64_t> first_case2_k;
};

std::vector<CaseCounts> case_occurrences(const Trajectory& t);

// Certified upper bound on max_j |x_j - target_j|.
Rat distance_upper(const std::vector<Enc>& x, const std::vector<Rat>& target);

bool in_winning_interval(const GameConfig& config, const std::vector<Rat>& target);

}  // namespace harmonic
