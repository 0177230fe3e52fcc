#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "harmonic/constants.hpp"
#include "harmonic/enc.hpp"
#include "harmonic/lemma.hpp"
#include "harmonic/linalg.hpp"

namespace harmonic {

enum class BallMethod { ellipsoid, faces };

std::string to_string(BallMethod m);

struct BallCertificate {
  BallMethod method = BallMethod::faces;
  Vec3E center;  // M^{-1} (box center), in the space of subseries sums
  Rat radius_lower_bound;
  std::vector<std::string> warnings;
};

// Ball of radius (min side / 2) around the box center, mapped through
// M^{-1}: it contains the ball of radius (min side / 2) / sigma_max(M).
BallCertificate inscribed_ball_ellipsoid(const BoxSpec& Q, const Mat3R& M, long precision = kDefaultPrecision);

// Distance from the center of M^{-1} Q to the face pair j is
// (side_j / 2) / |row j of M|.
BallCertificate inscribed_ball_faces(const BoxSpec& Q, const Mat3R& M, long precision = kDefaultPrecision);

struct PipelineConfig {
  long precision = 256;
  std::uint64_t n_verify = 10000;
  std::uint64_t search_limit = 10000;
  std::uint64_t window = kDefaultBruteWindow;
  std::uint64_t l_direct = 10000;
  unsigned em_order = 8;
  // Bound on the width of every center coordinate.
  Rat center_max_width = make_rat(Int(1), int_pow(Int(10), 34));
  // Use this K instead of the certified one; the result is then marked
  // as not certified.
  std::optional<std::uint64_t> K_override;
  // Defaults to the maximal asymptotic error limit.
  std::optional<Rat> C_override;
};

struct FullCertificate {
  IdentityReport identities;
  CCertificate c_cert;
  KCertificate k_cert;
  std::uint64_t K = 0;
  bool K_certified = false;
  PEnclosure p;
  BoxSpec box;
  BallCertificate ellipsoid;
  BallCertificate faces;
  long precision = 0;

  const BallCertificate& headline() const { return faces; }
};

// identities -> C -> K -> p -> box -> both balls. A failing stage is
// rethrown as StageError carrying the stage name and exit code.
FullCertificate full_certificate(const PipelineConfig& config);

// Exit code for an exception: 2 certification, 3 precision, 4 input, 1 other.
int exit_code_for(const std::exception& e);

}  // namespace harmonic
