#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "santalo/revolution.hpp"
#include "santalo/geometry.hpp"
#include "oracles.hpp"

using namespace santalo;

TEST_CASE("ball volumes and supports", "[revolution]") {
  for (int n = 2; n <= 4; ++n) {
    auto B = RevolutionBody::ball(n, 1.0);
    REQUIRE(B.volume() == Catch::Approx(unit_ball_volume(n)).epsilon(1e-9));
    REQUIRE(B.diameter() == Catch::Approx(2.0).margin(1e-8));
    Vec u = Vec::Zero(n);
    u[n - 1] = 1.0;
    REQUIRE(B.support(u) == Catch::Approx(1.0).margin(1e-9));
    REQUIRE(B.centroid().norm() == Catch::Approx(0.0).margin(1e-9));
  }
  auto B2 = RevolutionBody::ball(3, 2.5);
  REQUIRE(B2.volume() ==
          Catch::Approx(unit_ball_volume(3) * std::pow(2.5, 3)).epsilon(1e-9));
}

TEST_CASE("cone mass properties", "[revolution]") {
  // Cone over the unit disc with apex height 1: volume pi/3.
  auto C = RevolutionBody(
      3, Profile::piecewise_linear({0.0, 1.0}, {1.0, 0.0}));
  REQUIRE(C.volume() == Catch::Approx(std::numbers::pi / 3.0).epsilon(1e-10));
  // Centroid of a cone sits a quarter of the height above the base.
  REQUIRE(C.centroid()[0] == Catch::Approx(0.25).epsilon(1e-9));
  REQUIRE(C.contains(make_vec({0.5, 0.2, 0.2})));
  REQUIRE_FALSE(C.contains(make_vec({0.5, 0.6, 0.0})));
}

TEST_CASE("perpendicular sections of the ball are balls", "[revolution]") {
  auto B = RevolutionBody::ball(3);
  auto S = B.section(Direction::axis(3, 0), 0.5);
  REQUIRE(S.has_value());
  REQUIRE(S->dim() == 2);
  double r = std::sqrt(1.0 - 0.25);
  REQUIRE(S->volume() ==
          Catch::Approx(std::numbers::pi * r * r).epsilon(1e-8));
  REQUIRE(section_volume(B, Direction::axis(3, 0), 0.5) ==
          Catch::Approx(std::numbers::pi * r * r).epsilon(1e-8));
}

TEST_CASE("oblique sections of the ball keep the disc area", "[revolution]") {
  auto B = RevolutionBody::ball(3);
  Vec w = make_vec({1.0, 2.0, 0.5});
  auto u = Direction::of(w);
  for (double c : {0.0, 0.3, 0.7}) {
    double r2 = 1.0 - c * c;
    auto S = B.section(u, c);
    REQUIRE(S.has_value());
    REQUIRE(S->volume() ==
            Catch::Approx(std::numbers::pi * r2).epsilon(1e-5));
    REQUIRE(section_volume(B, u, c) ==
            Catch::Approx(std::numbers::pi * r2).epsilon(1e-5));
  }
  REQUIRE_FALSE(B.section(u, 1.2).has_value());
}

TEST_CASE("oblique sections of the cylinder", "[revolution]") {
  // Cylinder radius 1, axis [-1, 1]. A slightly tilted central section is an
  // ellipse with axes 1 and 1/cos(theta).
  auto C = RevolutionBody(
      3, Profile::piecewise_linear({-1.0, 1.0}, {1.0, 1.0}));
  double theta = 0.3;
  Vec w = make_vec({std::cos(theta), std::sin(theta), 0.0});
  auto S = C.section(Direction::of(w), 0.0);
  REQUIRE(S.has_value());
  REQUIRE(S->volume() ==
          Catch::Approx(std::numbers::pi / std::cos(theta)).epsilon(1e-4));
}

TEST_CASE("axial polar of the ball is the ball", "[revolution]") {
  auto B = RevolutionBody::ball(3);
  auto P = B.polar_axial(0.0);
  REQUIRE(P.volume() == Catch::Approx(unit_ball_volume(3)).epsilon(1e-6));
  // Double cone (bicone) is polar to the cylinder.
  auto C = RevolutionBody(
      3, Profile::piecewise_linear({-1.0, 0.0, 1.0}, {1.0, 1.0, 1.0}));
  auto D = C.polar_axial(0.0);
  REQUIRE(D.volume() ==
          Catch::Approx(2.0 * std::numbers::pi / 3.0).epsilon(1e-9));
}

TEST_CASE("scalings act on volume with the right powers", "[revolution]") {
  auto B = RevolutionBody::ball(3);
  REQUIRE(B.scaled_axial(2.0).volume() ==
          Catch::Approx(2.0 * B.volume()).epsilon(1e-9));
  REQUIRE(B.scaled_radial(2.0).volume() ==
          Catch::Approx(4.0 * B.volume()).epsilon(1e-9));
  REQUIRE(B.scaled(2.0).volume() ==
          Catch::Approx(8.0 * B.volume()).epsilon(1e-9));
}

TEST_CASE("rigid motions along the axis preserve the profile", "[revolution]") {
  auto B = RevolutionBody::ball(3, 1.0);
  // Rotate the axis onto e1 and translate along it.
  Mat R(3, 3);
  R << 0, 1, 0, 1, 0, 0, 0, 0, 1;
  Vec t = make_vec({0.0, 0.5, 0.0});
  auto M = B.transformed(AffineMap(R, t));
  REQUIRE(M.volume() == Catch::Approx(B.volume()).epsilon(1e-9));
  REQUIRE(std::abs(M.axis().vec()[1]) == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(M.contains(make_vec({0.0, 1.4, 0.0})));
  REQUIRE_FALSE(M.contains(make_vec({0.0, -0.6, 0.0})));
}

TEST_CASE("meridian polygon traces the profile", "[revolution]") {
  auto C = RevolutionBody(
      3, Profile::piecewise_linear({-1.0, 1.0}, {1.0, 1.0}));
  auto M = C.meridian_polygon();
  REQUIRE(M.area() == Catch::Approx(4.0).epsilon(1e-9));
  auto B = RevolutionBody::ball(3);
  auto MB = B.meridian_polygon();
  REQUIRE(MB.area() == Catch::Approx(std::numbers::pi).epsilon(1e-3));
}

TEST_CASE("volume agrees with Monte Carlo membership", "[revolution]") {
  auto C = RevolutionBody(
      3, Profile::piecewise_linear({-1.0, -0.2, 0.6, 1.0},
                                   {0.0, 0.9, 1.0, 0.3}));
  double mc = oracles::mc_volume(Body::revolution(C), 200000, 77);
  REQUIRE(C.volume() == Catch::Approx(mc).epsilon(0.05));
}
