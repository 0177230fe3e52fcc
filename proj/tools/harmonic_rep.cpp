// harmonic_rep: verify the lemma, certify the ball, represent targets and
// play the warm-up games from the command line.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "harmonic/certifier.hpp"
#include "harmonic/errors.hpp"
#include "harmonic/games.hpp"
#include "harmonic/json_io.hpp"
#include "harmonic/representer.hpp"

using namespace harmonic;

namespace {

constexpr long kCliDefaultPrecision = 256;

long resolve_precision(long flag) {
  long bits = flag;
  if (bits == 0) {
    bits = kCliDefaultPrecision;
    if (const char* env = std::getenv("HARMONIC_REP_PRECISION")) {
      try {
        bits = std::stol(env);
      } catch (const std::exception&) {
        throw InputError(std::string("HARMONIC_REP_PRECISION is not an integer: ") + env);
      }
    }
  }
  if (bits < 64) throw InputError("precision must be at least 64 bits");
  return bits;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open " + path + " for writing");
  f << text;
}

// --- verify-lemma ---

struct VerifyOptions {
  bool inject_fault = false;
  std::string format = "text";
  std::uint64_t k_max = 200;
};

int cmd_verify_lemma(const VerifyOptions& o) {
  LemmaData data = build_lemma_data();
  if (o.inject_fault) {
    // Perturb T_3 = 7 {12, 15} to 7 {12, 16}; the constants are recomputed.
    auto families = data.families;
    families[2].remove_set = {84, 112};
    data = make_lemma_data(data.M, families);
  }
  const IdentityReport report = verify_power_sum_identities(data);
  const bool disjoint = pairwise_disjoint(data);
  const bool unique = uniqueness_scan(data, o.k_max);
  const bool ok = report.all_ok() && disjoint && unique;

  if (o.format == "json") {
    Json j{{"identities", to_json(report)},
           {"disjoint", disjoint},
           {"uniqueness", {{"k_max", o.k_max}, {"ok", unique}}},
           {"m", data.m},
           {"c", Json::array({to_fraction_string(data.families[0].c), to_fraction_string(data.families[1].c),
                              to_fraction_string(data.families[2].c)})},
           {"ok", ok}};
    std::cout << j.dump(2) << '\n';
  } else {
    for (const auto& e : report.entries)
      std::cout << (e.ok ? "ok    " : "FAIL  ") << e.name << (e.expect_equal ? "  [=]" : "  [!=]") << '\n';
    std::cout << (disjoint ? "ok    " : "FAIL  ") << "sets pairwise disjoint\n";
    std::cout << (unique ? "ok    " : "FAIL  ") << "a(k^2 m+1) distinct for k <= " << o.k_max << '\n';
    std::cout << (ok ? "all checks passed" : "verification failed") << '\n';
  }
  return ok ? 0 : 1;
}

// --- certify-ball ---

struct BallOptions {
  long precision = 0;
  std::string out = "certificate.json";
  std::uint64_t K = 0;
};

int cmd_certify_ball(const BallOptions& o) {
  PipelineConfig config;
  config.precision = resolve_precision(o.precision);
  if (o.K) config.K_override = o.K;
  const FullCertificate cert = full_certificate(config);
  write_file(o.out, to_json(cert).dump(2) + "\n");

  std::cout << "K = " << cert.K << (cert.K_certified ? " (certified)" : " (NOT certified, overridden)") << '\n';
  std::cout << "center (x 1e-6):\n";
  for (const auto& c : cert.faces.center) {
    const Enc scaled = c * Enc::from_int(1000000, c.precision());
    std::cout << "  " << scaled.mid_string(30) << '\n';
  }
  std::cout << "radius_lb (faces)     = " << Enc::from_rat(cert.faces.radius_lower_bound, 128).mid_string(6) << '\n';
  std::cout << "radius_lb (ellipsoid) = " << Enc::from_rat(cert.ellipsoid.radius_lower_bound, 128).mid_string(6)
            << '\n';
  std::cout << "written " << o.out << '\n';
  return 0;
}

// --- represent ---

struct RepresentOptions {
  std::vector<std::string> q;
  std::vector<std::string> box_frac;
  std::uint64_t k_max = 2000;
  bool emit_a = false;
  std::string out = "representation.json";
  std::uint64_t K = 0;
  long precision = 0;
};

Vec3R parse_vec3(const std::vector<std::string>& v) {
  if (v.size() != 3) throw InputError("expected three coordinates");
  return {parse_rational(v[0]), parse_rational(v[1]), parse_rational(v[2])};
}

int cmd_represent(const RepresentOptions& o) {
  const LemmaData data = build_lemma_data();
  const Rat C = asymptotic_error_max(data);
  std::uint64_t K = o.K;
  if (K == 0) K = find_K(C, data, 10000).K;
  if (o.k_max <= K) throw InputError("--kmax must exceed K = " + std::to_string(K));

  PSettings settings;
  settings.precision = resolve_precision(o.precision);
  settings.max_width = std::nullopt;

  Vec3R q;
  if (!o.box_frac.empty()) {
    const PEnclosure p = compute_p(K, data, settings);
    q = box_Q(K, p.p, data).point_at_fraction(parse_vec3(o.box_frac));
  } else if (!o.q.empty()) {
    q = parse_vec3(o.q);
  } else {
    throw InputError("one of --q or --box-frac is required");
  }

  const RepresentationCertificate cert = represent_auto(q, o.k_max, data, K, C, settings);
  write_file(o.out, to_json(cert).dump(2) + "\n");
  if (o.emit_a) {
    for (const auto& n : cert.A_prefix) std::cout << n.get_str() << '\n';
  } else {
    std::cout << "K = " << K << ", k_max = " << o.k_max << ", |A_prefix| = " << cert.A_prefix.size() << '\n';
    for (int j = 0; j < 3; ++j)
      std::cout << "residual[" << j + 1 << "] = " << cert.residual[j].to_string(8) << "  bound "
                << Enc::from_rat(cert.tail_bound[j], 128).mid_string(6) << '\n';
    std::cout << "written " << o.out << '\n';
  }
  return residual_within_bound(cert) ? 0 : 2;
}

// --- game ---

struct GameOptions {
  std::string preset = "g3";
  std::vector<std::string> target;
  std::string adversary = "zero";
  std::uint64_t seed = 0;
  std::uint64_t rounds = 10000;
  std::string out = "trajectory.jsonl";
};

int cmd_game(const GameOptions& o) {
  GameConfig config = game_preset(o.preset);
  std::vector<Rat> target = config.default_target;
  if (!o.target.empty()) {
    target.clear();
    for (const auto& s : o.target) target.push_back(parse_rational(s));
  }
  if (static_cast<int>(target.size()) != config.dim)
    throw InputError("preset " + o.preset + " expects " + std::to_string(config.dim) + " target coordinates");
  if (!in_winning_interval(config, target))
    std::cerr << "warning: target is outside the winning interval of " << o.preset
              << "; convergence is not guaranteed\n";

  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw InputError("cannot open " + o.out + " for writing");

  if (config.multiplier == 1) {
    // Greedy presets run in exact arithmetic; rounds is the last index.
    if (target[0] <= 0) throw InputError("greedy presets need a positive target");
    const SeriesSpec series = o.preset == "g1" ? harmonic_series() : inverse_squares(config.start_k);
    const GreedyResult g = greedy_subseries(target[0], series, o.rounds);
    f << Json{{"type", "header"}, {"preset", o.preset}, {"target", to_fraction_string(target[0])}}.dump() << '\n';
    Rat x = 0;
    for (auto n : g.indices) {
      x += series.term(to_int(n));
      f << Json{{"n", n}, {"state", to_fraction_string(x)}}.dump() << '\n';
    }
    std::cout << "terms = " << g.indices.size() << ", residual = " << Enc::from_rat(g.residual, 128).mid_string(8)
              << '\n';
    return 0;
  }

  const Trajectory t = run_game(config, target, {parse_adversary(o.adversary), o.seed}, o.rounds);
  write_trajectory_jsonl(f, config, t);
  const auto cases = case_occurrences(t);
  for (std::size_t j = 0; j < cases.size(); ++j)
    std::cout << "coordinate " << j + 1 << ": case 1 x" << cases[j].case1 << ", case 2 x" << cases[j].case2 << '\n';
  std::cout << "final distance <= " << Enc::from_rat(distance_upper(t.final_state(), target), 128).mid_string(8)
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified subseries representations of harmonic-type series"};
  app.require_subcommand(1);

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify-lemma", "check the power-sum identities, disjointness and uniqueness");
  verify->add_flag("--inject-fault", vo.inject_fault, "perturb T_3 (test hook)");
  verify->add_option("--format", vo.format)->check(CLI::IsMember({"json", "text"}));
  verify->add_option("--kmax", vo.k_max, "uniqueness scan bound");

  BallOptions bo;
  auto* ball = app.add_subcommand("certify-ball", "run the full pipeline and write certificate.json");
  ball->add_option("--precision", bo.precision, "bits (default 256 or HARMONIC_REP_PRECISION)");
  ball->add_option("--out", bo.out);
  ball->add_option("--K", bo.K, "use this K instead of the certified one");

  RepresentOptions ro;
  auto* rep = app.add_subcommand("represent", "represent a target in the box");
  auto* q_opt = rep->add_option("--q", ro.q, "target x y z (fractions or decimals)")->expected(3);
  rep->add_option("--box-frac", ro.box_frac, "u1 u2 u3 in [0,1]")->expected(3)->excludes(q_opt);
  rep->add_option("--kmax", ro.k_max);
  rep->add_flag("--emit-a", ro.emit_a, "print the elements of A, one per line");
  rep->add_option("--out", ro.out);
  rep->add_option("--K", ro.K, "use this K instead of the certified one");
  rep->add_option("--precision", ro.precision);

  GameOptions go;
  auto* game = app.add_subcommand("game", "play a warm-up game preset");
  game->add_option("--preset", go.preset)->check(CLI::IsMember(preset_names()));
  game->add_option("--target", go.target, "one value per coordinate");
  game->add_option("--adversary", go.adversary)->check(CLI::IsMember({"zero", "random", "seeded-random", "overshooter"}));
  game->add_option("--seed", go.seed);
  game->add_option("--rounds", go.rounds);
  game->add_option("--out", go.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 4;
  }

  try {
    if (*verify) return cmd_verify_lemma(vo);
    if (*ball) return cmd_certify_ball(bo);
    if (*rep) return cmd_represent(ro);
    if (*game) return cmd_game(go);
  } catch (const StageError& e) {
    std::cerr << "error: stage " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return 0;
}
