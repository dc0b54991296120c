#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "santalo/measures.hpp"
#include "santalo/rng.hpp"
#include "oracles.hpp"

using namespace santalo;

namespace {

Polygon random_polygon(Rng& rng, int k) {
  std::vector<Vec> pts;
  for (int i = 0; i < k; ++i)
    pts.push_back(rng.unit_vector(2) * rng.uniform(0.5, 1.4));
  return Polygon::hull_of(pts);
}

}  // namespace

TEST_CASE("measure of symmetry on standard bodies", "[measures]") {
  auto T = Polygon::from_vertices(
      {make_vec({1.2, 0.1}), make_vec({-0.4, 1.0}), make_vec({-0.6, -0.9})});
  auto rt = minkowski_q(T);
  REQUIRE(rt.q == Catch::Approx(2.0).margin(1e-6));

  auto S = Polygon::regular(4, 1.0);
  REQUIRE(minkowski_q(S).q == Catch::Approx(1.0).margin(1e-9));
  REQUIRE(minkowski_q(S).center.norm() < 1e-7);

  // Shifted symmetric bodies report the shifted center.
  auto Sh = S.translated(make_vec({2.0, -3.0}));
  auto rs = minkowski_q(Sh);
  REQUIRE(rs.q == Catch::Approx(1.0).margin(1e-9));
  REQUIRE((rs.center - make_vec({2.0, -3.0})).norm() < 1e-6);
}

TEST_CASE("measure of symmetry of the simplex is the dimension",
          "[measures]") {
  for (int n = 2; n <= 4; ++n) {
    auto K = Body::polytope_v(Polytope::simplex(n));
    REQUIRE(minkowski_q(K).q == Catch::Approx(double(n)).margin(1e-6));
  }
  REQUIRE(minkowski_q(Body::polytope_h(Polytope::cube(3))).q ==
          Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("measure of symmetry matches the grid oracle", "[measures]") {
  Rng rng(61);
  for (int trial = 0; trial < 12; ++trial) {
    auto P = random_polygon(rng, 7);
    double q = minkowski_q(P).q;
    double qo = oracles::q_grid(P);
    REQUIRE(q == Catch::Approx(qo).margin(2e-4));
    REQUIRE(q >= 1.0 - 1e-12);
    REQUIRE(q <= 2.0 + 1e-9);
  }
}

TEST_CASE("distance to the ball on standard polygons", "[measures]") {
  REQUIRE(bm_distance_ball(Body::polygon(Polygon::regular(4, 1.0))) ==
          Catch::Approx(std::sqrt(2.0)).epsilon(2e-3));
  REQUIRE(bm_distance_ball(Body::polygon(Polygon::regular(256, 1.0))) ==
          Catch::Approx(1.0).margin(2e-3));
}

TEST_CASE("distance to the ball matches the grid oracle", "[measures]") {
  Rng rng(71);
  for (int trial = 0; trial < 8; ++trial) {
    auto P = random_polygon(rng, 8);
    double d = bm_distance_ball(Body::polygon(P));
    double doracle = oracles::bm_grid(P);
    REQUIRE(d <= doracle + 2e-3);
    REQUIRE(d >= 1.0);
    // The oracle is a restricted search, so it can only overshoot.
    REQUIRE(d == Catch::Approx(doracle).epsilon(2e-2));
  }
}

TEST_CASE("ellipsoids of revolution are affinely round", "[measures]") {
  auto E = RevolutionBody::ball(3).scaled_axial(2.0);
  REQUIRE(bm_distance_ball(Body::revolution(E)) ==
          Catch::Approx(1.0).margin(1e-5));
  auto F = RevolutionBody::ball(3).scaled_radial(0.4);
  REQUIRE(bm_distance_ball(Body::revolution(F)) ==
          Catch::Approx(1.0).margin(1e-5));
}

TEST_CASE("axial ellipse distance of round and flat bodies", "[measures]") {
  auto D = Polygon::regular(256, 1.0);
  REQUIRE(ellipse_distance_on_axis(D, Vec::Zero(2), make_vec({1.0, 0.0})) ==
          Catch::Approx(1.0).margin(2e-3));
  auto S = Polygon::regular(4, 1.0);
  double e = ellipse_distance_on_axis(S, Vec::Zero(2), make_vec({1.0, 0.0}));
  REQUIRE(e >= 1.2);
}

TEST_CASE("isoperimetric slack is nonnegative and tight on discs",
          "[measures]") {
  auto rep = bonnesen_report(Polygon::regular(256, 1.0));
  REQUIRE(rep.slack >= -1e-9);
  REQUIRE(rep.slack == Catch::Approx(0.0).margin(1e-3));
  REQUIRE(rep.R == Catch::Approx(1.0).margin(1e-9));
  REQUIRE(rep.r == Catch::Approx(std::cos(std::numbers::pi / 256)).margin(1e-6));

  auto sq = bonnesen_report(Polygon::regular(4, std::sqrt(2.0), std::numbers::pi / 4));
  REQUIRE(sq.A == Catch::Approx(4.0).margin(1e-9));
  REQUIRE(sq.W == Catch::Approx(8.0 / std::numbers::pi).margin(1e-9));
  REQUIRE(sq.slack > 0.0);

  Rng rng(83);
  for (int trial = 0; trial < 30; ++trial)
    REQUIRE(bonnesen_report(random_polygon(rng, 8)).slack >= -1e-9);
}

TEST_CASE("difference body gap detects central symmetry", "[measures]") {
  auto T = Polygon::from_vertices(
      {make_vec({1.0, 0.0}), make_vec({0.0, 1.0}), make_vec({-1.0, -1.0})});
  REQUIRE(difference_body_gap(Body::polygon(T)) ==
          Catch::Approx(0.5).margin(1e-9));
  REQUIRE(difference_body_gap(Body::polygon(Polygon::regular(6, 1.0))) ==
          Catch::Approx(0.0).margin(1e-9));
  // 3-simplex: V((K - K)/2) / V(K) = binom(6, 3) / 2^3 = 20 / 8.
  REQUIRE(difference_body_gap(Body::polytope_v(Polytope::simplex(3))) ==
          Catch::Approx(1.5).epsilon(1e-9));
  REQUIRE(difference_body_gap(Body::polytope_h(Polytope::cube(3))) ==
          Catch::Approx(0.0).margin(1e-9));
}

TEST_CASE("affine surface area of balls", "[measures]") {
  REQUIRE(affine_surface_area(RevolutionBody::ball(3)) ==
          Catch::Approx(4.0 * std::numbers::pi).epsilon(1e-6));
  // Scaling law: omega(rho K) = rho^{n(n-1)/(n+1)} omega(K).
  REQUIRE(affine_surface_area(RevolutionBody::ball(3, 2.0)) ==
          Catch::Approx(4.0 * std::numbers::pi * std::pow(2.0, 1.5))
              .epsilon(1e-6));
  REQUIRE(affine_surface_area(RevolutionBody::ball(4)) ==
          Catch::Approx(4.0 * unit_ball_volume(4)).epsilon(1e-6));
  // Affine invariance under volume-preserving axial stretches.
  auto E = RevolutionBody::ball(3).scaled_axial(2.0).scaled_radial(
      1.0 / std::sqrt(2.0));
  REQUIRE(affine_surface_area(E) ==
          Catch::Approx(4.0 * std::numbers::pi).epsilon(1e-5));
}

TEST_CASE("affine isoperimetric ratios equal one on balls", "[measures]") {
  for (int n = 3; n <= 4; ++n) {
    auto rep = affine_ratios(Body::revolution(RevolutionBody::ball(n)));
    REQUIRE(rep.iso == Catch::Approx(1.0).margin(1e-5));
    REQUIRE(rep.lutwak == Catch::Approx(1.0).margin(1e-5));
  }
  // Cones are strictly inside both inequalities.
  auto cone = RevolutionBody(
      3, Profile::smooth(0.0, 1.0, [](double t) {
        return std::sqrt(std::max(0.0, (1.0 - t) * (0.2 + t)));
      }, 512));
  auto rc = affine_ratios(Body::revolution(cone));
  REQUIRE(rc.iso < 1.0);
  REQUIRE(rc.lutwak < 1.0);
  REQUIRE(rc.iso > 0.0);
}

TEST_CASE("profile asymmetry bound holds with the measured excess",
          "[measures]") {
  // Symmetric profile: excess zero, margins vanish.
  auto even = Profile::piecewise_linear({-1.0, 0.0, 1.0}, {0.5, 1.0, 0.5});
  auto rep0 = minksym_bound_check(even, 0.0);
  REQUIRE(rep0.q == Catch::Approx(1.0).margin(1e-9));
  REQUIRE(rep0.worst_margin >= -1e-9);

  // Tilted profile: measure its own excess, then check the bound.
  auto g = Profile::piecewise_linear({-1.0, 0.0, 1.0}, {0.55, 1.0, 0.35});
  Polygon M = RevolutionBody(2, g).meridian_polygon();
  double eps = minkowski_q(M).q - 1.0;
  REQUIRE(eps > 0.0);
  auto rep = minksym_bound_check(g, eps);
  REQUIRE(rep.worst_margin >= -1e-9);
  REQUIRE(rep.rho == Catch::Approx(1.0));
}
