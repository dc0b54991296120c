#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "santalo/symmetrize.hpp"
#include "santalo/rng.hpp"
#include "oracles.hpp"

using namespace santalo;

TEST_CASE("polygon symmetrization preserves area and gains symmetry",
          "[symmetrize]") {
  Rng rng(3);
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<Vec> pts;
    for (int i = 0; i < 9; ++i)
      pts.push_back(rng.unit_vector(2) * rng.uniform(0.5, 1.4));
    auto K = Body::polygon(Polygon::hull_of(pts));
    Hyperplane H(Direction::of(rng.unit_vector(2)), 0.0);
    auto S = steiner(K, H);
    REQUIRE(S.volume() == Catch::Approx(K.volume()).epsilon(1e-9));
    for (int j = 0; j < 12; ++j) {
      Vec w = rng.unit_vector(2);
      Vec wr = w - 2.0 * H.normal.dot(w) * H.normal.vec();
      REQUIRE(S.support(w) == Catch::Approx(S.support(wr)).margin(1e-8));
    }
  }
}

TEST_CASE("polytope symmetrization preserves volume", "[symmetrize]") {
  Rng rng(9);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<Vec> pts;
    for (int i = 0; i < 10; ++i)
      pts.push_back(rng.unit_vector(3) * rng.uniform(0.5, 1.4));
    auto K = Body::polytope_v(Polytope::from_vertices(3, pts));
    Hyperplane H(Direction::of(rng.unit_vector(3)), 0.0);
    auto S = steiner(K, H);
    REQUIRE(S.volume() == Catch::Approx(K.volume()).epsilon(1e-8));
    // Reflection symmetry of the symmetral.
    for (int j = 0; j < 10; ++j) {
      Vec w = rng.unit_vector(3);
      Vec wr = w - 2.0 * H.normal.dot(w) * H.normal.vec();
      REQUIRE(S.support(w) == Catch::Approx(S.support(wr)).margin(1e-7));
    }
    // Chords along the normal are centered on the hyperplane.
    Vec c = S.centroid();
    REQUIRE(std::abs(H.normal.dot(c) - H.offset) < 1e-8);
  }
}

TEST_CASE("symmetrizing the ball is the identity", "[symmetrize]") {
  auto B = Body::revolution(RevolutionBody::ball(3));
  auto S = steiner(B, Hyperplane(Direction::axis(3, 0), 0.0));
  REQUIRE(S.volume() == Catch::Approx(B.volume()).epsilon(1e-9));
  auto C = Body::revolution(RevolutionBody(
      3, Profile::piecewise_linear({-1.0, -0.5, 1.0}, {0.2, 1.0, 0.1})));
  auto SC = steiner(C, Hyperplane(Direction::axis(3, 0), 0.0));
  REQUIRE(SC.volume() == Catch::Approx(C.volume()).epsilon(1e-9));
  // The axial symmetral has an even meridian.
  const auto& R = SC.as_revolution();
  REQUIRE(R.profile().tmin() == Catch::Approx(-R.profile().tmax()).margin(1e-10));
  for (double t : {0.1, 0.4, 0.7})
    REQUIRE(R.profile()(t) == Catch::Approx(R.profile()(-t)).margin(1e-9));
}

TEST_CASE("rotational rounding preserves volume", "[symmetrize]") {
  auto C = Body::polytope_h(Polytope::cube(3));
  auto R = schwarz_round(C, Direction::axis(3, 2), 512);
  REQUIRE(R.dim() == 3);
  REQUIRE(R.volume() == Catch::Approx(8.0).epsilon(1e-5));
  // Sections become discs of the same area: at height 0 the cube section
  // has area 4, so the rounded radius is 2/sqrt(pi).
  REQUIRE(R.profile()(0.0) ==
          Catch::Approx(2.0 / std::sqrt(std::numbers::pi)).epsilon(1e-6));
}

TEST_CASE("isotropic normalization of the disc", "[symmetrize]") {
  auto D = Body::polygon(Polygon::regular(512, 1.0));
  auto [rep, L] = isotropic_normalize(D);
  REQUIRE(L.volume() == Catch::Approx(unit_ball_volume(2)).epsilon(1e-6));
  REQUIRE(rep.L_K == Catch::Approx(1.0 / (2.0 * std::sqrt(std::numbers::pi)))
                         .epsilon(1e-3));
  Mat cov = L.covariance();
  REQUIRE(cov(0, 0) == Catch::Approx(cov(1, 1)).epsilon(1e-6));
  REQUIRE(std::abs(cov(0, 1)) < 1e-9);
  REQUIRE(rep.inclusion_radius > 0.0);
}

TEST_CASE("isotropic normalization makes the covariance a multiple of I",
          "[symmetrize]") {
  Rng rng(21);
  std::vector<Vec> pts;
  for (int i = 0; i < 12; ++i)
    pts.push_back(rng.unit_vector(3) * rng.uniform(0.5, 1.4));
  auto K = Body::polytope_v(Polytope::from_vertices(3, pts));
  auto [rep, L] = isotropic_normalize(K);
  REQUIRE(L.volume() == Catch::Approx(unit_ball_volume(3)).epsilon(1e-8));
  REQUIRE(L.centroid().norm() == Catch::Approx(0.0).margin(1e-8));
  Mat cov = L.covariance();
  double lambda = cov(0, 0);
  REQUIRE((cov - lambda * Mat::Identity(3, 3)).norm() ==
          Catch::Approx(0.0).margin(1e-8));
  double lk = std::sqrt(lambda * std::pow(unit_ball_volume(3), -2.0 / 3.0));
  REQUIRE(rep.L_K == Catch::Approx(lk).epsilon(1e-6));
}

TEST_CASE("rounding pipeline on the ball returns a ball", "[symmetrize]") {
  auto B = Body::revolution(RevolutionBody::ball(3));
  auto res = rounding_pipeline(B, 512);
  // Normalized to the unit ball: volume kappa_3, axial support 1.
  REQUIRE(res.body.volume() ==
          Catch::Approx(unit_ball_volume(3)).epsilon(1e-4));
  REQUIRE(res.support_u == Catch::Approx(1.0).epsilon(1e-9));
  REQUIRE(res.body.profile().max_radius() == Catch::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("planar double symmetrization outputs a centered body",
          "[symmetrize]") {
  // The construction expects an axially symmetric input, as produced by
  // meridian polygons; build mirror-symmetric hulls.
  Rng rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Vec> pts;
    for (int i = 0; i < 6; ++i) {
      Vec p = rng.unit_vector(2) * rng.uniform(0.5, 1.4);
      pts.push_back(p);
      pts.push_back(make_vec({p[0], -p[1]}));
    }
    auto P = Polygon::hull_of(pts).translated(make_vec({rng.uniform(-1.0, 1.0), 0.0}));
    auto sym = planar_double_steiner(P);
    REQUIRE(sym.body.area() == Catch::Approx(P.area()).epsilon(1e-9));
    REQUIRE(sym.body.centrally_symmetric(Vec::Zero(2), 1e-7));
    REQUIRE(sym.eps_hat >= 0.0);
  }
}

TEST_CASE("full reduction of the ball stays a ball", "[symmetrize]") {
  auto B = Body::revolution(RevolutionBody::ball(3));
  auto red = full_reduction(B, 512);
  REQUIRE(red.body.volume() == Catch::Approx(unit_ball_volume(3)).epsilon(1e-4));
  REQUIRE(red.eps_hat <= 1e-3);
  // Output is o-symmetric with an even profile.
  REQUIRE(red.body.profile().tmin() ==
          Catch::Approx(-red.body.profile().tmax()).margin(1e-8));
}

TEST_CASE("full reduction of the cube normalizes the volume", "[symmetrize]") {
  auto C = Body::polytope_h(Polytope::cube(3));
  auto red = full_reduction(C, 512);
  REQUIRE(red.body.volume() == Catch::Approx(unit_ball_volume(3)).epsilon(1e-3));
  REQUIRE(red.body.dim() == 3);
}
