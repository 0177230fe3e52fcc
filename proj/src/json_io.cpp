#include "harmonic/json_io.hpp"

#include <string>

#include "harmonic/errors.hpp"

namespace harmonic {

namespace {

Json frac(const Rat& r) { return to_fraction_string(r); }

Json rat_vec(const std::vector<Rat>& v) {
  Json a = Json::array();
  for (const auto& r : v) a.push_back(frac(r));
  return a;
}

std::string dec(const Rat& r, int digits = 20) { return Enc::from_rat(r, 256).mid_string(digits); }

std::string bits(const std::array<std::uint8_t, 3>& e) {
  return std::string{static_cast<char>('0' + e[0]), static_cast<char>('0' + e[1]), static_cast<char>('0' + e[2])};
}

Json bool_vec(const std::array<bool, 3>& b) { return Json::array({b[0], b[1], b[2]}); }

}  // namespace

Json enc_json(const Enc& e) { return e.to_string(); }

Json vec_json(const Vec3E& v) { return Json::array({enc_json(v[0]), enc_json(v[1]), enc_json(v[2])}); }

Json vec_json(const Vec3R& v) { return Json::array({frac(v[0]), frac(v[1]), frac(v[2])}); }

Json int_json(const Int& n) {
  if (n.fits_slong_p()) return static_cast<std::int64_t>(n.get_si());
  return n.get_str();
}

Json to_json(const IdentityReport& r) {
  Json a = Json::array();
  for (const auto& e : r.entries)
    a.push_back({{"name", e.name},
                 {"lhs", frac(e.lhs)},
                 {"rhs", frac(e.rhs)},
                 {"relation", e.expect_equal ? "=" : "!="},
                 {"ok", e.ok}});
  return a;
}

Json to_json(const CCertificate& c) {
  Json j{{"C", frac(c.C)},
         {"n_verified", c.n_verified},
         {"expansion_ok", c.expansion_ok},
         {"scan_ok", c.scan_ok},
         {"tail_ok", c.tail_ok},
         {"certified", c.certified()},
         {"max_scanned", frac(c.max_scanned)},
         {"tail_worst", frac(c.tail_worst)},
         {"tail_gap", frac(c.tail_gap)}};
  if (c.first_violation) {
    const auto& v = *c.first_violation;
    j["first_violation"] = {{"j", v.j}, {"coord", v.coord}, {"n", v.n}, {"scaled_error", frac(v.scaled_error)}};
  }
  return j;
}

Json to_json(const KCertificate& k) {
  Json table = Json::array();
  for (const auto& row : k.table)
    table.push_back({{"k", row.k}, {"cond17", bool_vec(row.cond17)}, {"cond18", bool_vec(row.cond18)}});
  Json crude = Json::array();
  for (int j = 0; j < 3; ++j)
    crude.push_back({{"j", j + 1},
                     {"lhs17", frac(k.crude.lhs17[j])},
                     {"rhs17", frac(k.crude.rhs17[j])},
                     {"lhs18", frac(k.crude.lhs18[j])},
                     {"rhs18", frac(k.crude.rhs18[j])}});
  return {{"K", k.K},
          {"k_star", k.k_star},
          {"C", frac(k.C)},
          {"window", k.window},
          {"table", table},
          {"crude_closing", crude},
          {"monotonicity", k.monotonicity_note}};
}

Json to_json(const PEnclosure& p) {
  return {{"K", p.K},
          {"p", vec_json(p.p)},
          {"column_sums", vec_json(p.column_sums)},
          {"l_direct", p.settings.l_direct},
          {"em_order", p.settings.order},
          {"precision", p.settings.precision},
          {"width", dec(p.width, 6)}};
}

Json to_json(const BoxSpec& b) {
  return {{"K", b.K},
          {"base", int_json(b.base)},
          {"lower_offset", vec_json(b.lower)},
          {"upper_offset", vec_json(b.upper)},
          {"center", vec_json(b.center())}};
}

std::vector<std::string> center_digits(const BallCertificate& b, int digits) {
  std::vector<std::string> out;
  for (const auto& c : b.center) out.push_back(c.mid_string(digits));
  return out;
}

Json to_json(const BallCertificate& b) {
  return {{"method", to_string(b.method)},
          {"center", vec_json(b.center)},
          {"center_30_digits", center_digits(b)},
          {"radius_lb", frac(b.radius_lower_bound)},
          {"radius_lb_decimal", dec(b.radius_lower_bound, 6)},
          {"warnings", b.warnings}};
}

Json to_json(const FullCertificate& f) {
  return {{"identities", to_json(f.identities)},
          {"C", frac(f.c_cert.C)},
          {"C_certificate", to_json(f.c_cert)},
          {"K", f.K},
          {"K_certified", f.K_certified},
          {"K_certificate", to_json(f.k_cert)},
          {"p", vec_json(f.p.p)},
          {"p_enclosure", to_json(f.p)},
          {"box", to_json(f.box)},
          {"ball", to_json(f.headline())},
          {"ellipsoid_ball", to_json(f.ellipsoid)},
          {"precision", f.precision}};
}

Json to_json(const RepresentationCertificate& r) {
  Json eps = Json::array();
  for (const auto& e : r.eps_history) eps.push_back(bits(e.eps));
  Json a = Json::array();
  for (const auto& n : r.A_prefix) a.push_back(int_json(n));
  Json tail = Json::array();
  for (const auto& t : r.tail_bound) tail.push_back(dec(t, 6));
  return {{"q", vec_json(r.q)},
          {"K", r.K},
          {"k_max", r.k_max},
          {"precision", r.precision},
          {"C", frac(r.C)},
          {"eps_first_round", r.K},
          {"eps", eps},
          {"A_prefix", a},
          {"x_final", vec_json(r.x_final)},
          {"residual", vec_json(r.residual)},
          {"tail_bound", tail}};
}

void write_trajectory_jsonl(std::ostream& out, const GameConfig& config, const Trajectory& t) {
  Json start = Json::array();
  for (const auto& s : t.start) start.push_back(enc_json(s));
  Json header{{"type", "header"},
              {"preset", config.name},
              {"index_map", config.index_map_name},
              {"target", rat_vec(t.target)},
              {"adversary", to_string(t.adversary.kind)},
              {"seed", t.adversary.seed},
              {"precision", config.precision},
              {"start", start}};
  out << header.dump() << '\n';
  for (const auto& s : t.steps) {
    Json state = Json::array();
    for (const auto& e : s.state) state.push_back(enc_json(e));
    Json line{{"round", s.k},
              {"n", int_json(s.n)},
              {"state", state},
              {"eps", s.eps},
              {"perturbation", rat_vec(s.perturbation)}};
    out << line.dump() << '\n';
  }
}

std::vector<Enc> replay_jsonl(const GameConfig& config, std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("trajectory log is empty");
  const Json header = Json::parse(line);
  if (header.value("preset", "") != config.name) throw MismatchError("trajectory log is for another preset");

  Trajectory t;
  t.config_name = config.name;
  for (const auto& s : header.at("target")) t.target.push_back(parse_rational(s.get<std::string>()));
  t.adversary = {parse_adversary(header.at("adversary")), header.at("seed").get<std::uint64_t>()};
  std::vector<std::vector<std::string>> logged;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const Json j = Json::parse(line);
    TrajectoryStep s;
    s.k = j.at("round").get<std::uint64_t>();
    const Json& n = j.at("n");
    s.n = n.is_string() ? Int(n.get<std::string>()) : Int(n.get<std::int64_t>());
    s.eps = j.at("eps").get<std::vector<std::int8_t>>();
    for (const auto& p : j.at("perturbation")) s.perturbation.push_back(parse_rational(p.get<std::string>()));
    logged.push_back(j.at("state").get<std::vector<std::string>>());
    t.steps.push_back(std::move(s));
  }

  const auto states = replay_states(config, t);
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t j = 0; j < states[i].size(); ++j)
      if (states[i][j].to_string() != logged[i].at(j))
        throw MismatchError("replay: state differs at round " + std::to_string(t.steps[i].k));
  std::vector<Enc> start;
  for (const auto& s : config.start) start.push_back(Enc::from_rat(s, config.precision));
  return states.empty() ? start : states.back();
}

}  // namespace harmonic
