#include "doctest.h"
#include "harmonic/certifier.hpp"
#include "harmonic/errors.hpp"

using namespace harmonic;

namespace {

Mat3R diag(int a, int b, int c) {
  Mat3R m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = 0;
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

BoxSpec unit_cube() {
  BoxSpec b;
  b.p = to_enc({Rat(0), Rat(0), Rat(0)}, 256);
  b.lower = {Rat(0), Rat(0), Rat(0)};
  b.upper = {Rat(1), Rat(1), Rat(1)};
  return b;
}

const FullCertificate& pipeline14() {
  static const FullCertificate c = [] {
    PipelineConfig cfg;
    cfg.K_override = 14;
    return full_certificate(cfg);
  }();
  return c;
}

}  // namespace

TEST_CASE("balls in the unit cube") {
  const Rat tol = make_rat(Int(1), int_pow(Int(10), 30));
  const BallCertificate e = inscribed_ball_ellipsoid(unit_cube(), diag(1, 1, 1));
  const BallCertificate f = inscribed_ball_faces(unit_cube(), diag(1, 1, 1));
  CHECK(e.radius_lower_bound <= make_rat(1, 2));
  CHECK(e.radius_lower_bound > make_rat(1, 2) - tol);
  CHECK(f.radius_lower_bound <= make_rat(1, 2));
  CHECK(f.radius_lower_bound > make_rat(1, 2) - tol);
  for (int i = 0; i < 3; ++i) CHECK(f.center[i].contains(make_rat(1, 2)));

  // M = diag(2,1,1): M^{-1} Q is [0,1/2] x [0,1] x [0,1].
  const BallCertificate f2 = inscribed_ball_faces(unit_cube(), diag(2, 1, 1));
  CHECK(f2.radius_lower_bound <= make_rat(1, 4));
  CHECK(f2.radius_lower_bound > make_rat(1, 4) - tol);
  CHECK(f2.center[0].contains(make_rat(1, 4)));
  const BallCertificate e2 = inscribed_ball_ellipsoid(unit_cube(), diag(2, 1, 1));
  CHECK(e2.radius_lower_bound <= make_rat(1, 4));
}

TEST_CASE("a degenerate box yields radius zero with a warning") {
  BoxSpec b = unit_cube();
  b.upper[1] = 0;
  const BallCertificate f = inscribed_ball_faces(b, diag(1, 1, 1));
  CHECK(f.radius_lower_bound == 0);
  CHECK_FALSE(f.warnings.empty());
  CHECK(inscribed_ball_ellipsoid(b, diag(1, 1, 1)).radius_lower_bound == 0);
}

TEST_CASE("full pipeline with K = 14") {
  const FullCertificate& c = pipeline14();
  CHECK(c.K == 14);
  CHECK_FALSE(c.K_certified);
  CHECK(c.k_cert.K == 23);
  CHECK(c.identities.all_ok());
  CHECK(c.c_cert.certified());
  CHECK(max_width(c.faces.center) <= make_rat(Int(1), int_pow(Int(10), 34)));
  CHECK(c.faces.radius_lower_bound >= make_rat(Int(1), int_pow(Int(10), 24)));
  CHECK(c.faces.radius_lower_bound >= c.ellipsoid.radius_lower_bound);
  // The center maps back into the box.
  const LemmaData d = build_lemma_data();
  const Vec3E back = d.M * c.faces.center;
  for (int j = 0; j < 3; ++j) {
    CHECK(back[j].certainly_gt(c.box.p[j].hi_rat() + c.box.lower[j]));
    CHECK(back[j].certainly_lt(c.box.p[j].lo_rat() + c.box.upper[j]));
  }
}

TEST_CASE("the certified pipeline is deterministic") {
  const FullCertificate a = full_certificate(PipelineConfig{});
  const FullCertificate b = full_certificate(PipelineConfig{});
  CHECK(a.K == 23);
  CHECK(a.K_certified);
  CHECK(a.faces.radius_lower_bound == b.faces.radius_lower_bound);
  for (int i = 0; i < 3; ++i) {
    CHECK(a.faces.center[i].lo_rat() == b.faces.center[i].lo_rat());
    CHECK(a.faces.center[i].hi_rat() == b.faces.center[i].hi_rat());
  }
}

TEST_CASE("pipeline failures carry the stage name and exit code") {
  PipelineConfig low;
  low.precision = 64;
  low.K_override = 14;
  try {
    full_certificate(low);
    FAIL("expected a precision failure");
  } catch (const StageError& e) {
    CHECK(e.stage() == "p");
    CHECK(e.exit_code() == 3);
  }
  PipelineConfig bad_c;
  bad_c.C_override = make_rat(1, 1000000000);
  try {
    full_certificate(bad_c);
    FAIL("expected a certification failure");
  } catch (const StageError& e) {
    CHECK(e.exit_code() == 2);
  }
}
