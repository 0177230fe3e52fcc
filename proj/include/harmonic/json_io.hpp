#pragma once

#include <istream>
#include <ostream>
#include <vector>

#include "harmonic/certifier.hpp"
#include "harmonic/games.hpp"
#include "harmonic/representer.hpp"
#include "json.hpp"

namespace harmonic {

using Json = nlohmann::json;

Json enc_json(const Enc& e);
Json vec_json(const Vec3E& v);
Json vec_json(const Vec3R& v);
Json int_json(const Int& n);

Json to_json(const IdentityReport& r);
Json to_json(const CCertificate& c);
Json to_json(const KCertificate& k);
Json to_json(const PEnclosure& p);
Json to_json(const BoxSpec& b);
Json to_json(const BallCertificate& b);
Json to_json(const FullCertificate& f);
Json to_json(const RepresentationCertificate& r);

// Center coordinates with 30 significant digits.
std::vector<std::string> center_digits(const BallCertificate& b, int digits = 30);

// One header line, then one line per round.
void write_trajectory_jsonl(std::ostream& out, const GameConfig& config, const Trajectory& t);

// Re-runs a logged trajectory and compares every logged state string with
// the recomputed one. Throws MismatchError on the first difference.
std::vector<Enc> replay_jsonl(const GameConfig& config, std::istream& in);

}  // namespace harmonic
