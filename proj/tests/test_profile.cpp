#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "santalo/profile.hpp"

using namespace santalo;

namespace {

Profile ball_profile() {
  return Profile::smooth(-1.0, 1.0,
                         [](double t) { return std::sqrt(std::max(0.0, 1.0 - t * t)); },
                         512, {0.0});
}

}  // namespace

TEST_CASE("piecewise profiles evaluate by linear interpolation", "[profile]") {
  auto P = Profile::piecewise_linear({-1.0, 0.0, 1.0}, {0.0, 1.0, 0.0});
  REQUIRE(P.piecewise_linear_kind());
  REQUIRE(P(0.0) == Catch::Approx(1.0));
  REQUIRE(P(0.5) == Catch::Approx(0.5));
  REQUIRE(P(-0.25) == Catch::Approx(0.75));
  REQUIRE(P.tmin() == -1.0);
  REQUIRE(P.tmax() == 1.0);
  REQUIRE(P.width() == 2.0);
  REQUIRE(P.max_radius() == Catch::Approx(1.0));
  REQUIRE(P.argmax_radius() == Catch::Approx(0.0));
}

TEST_CASE("non-concave radius data is rejected", "[profile]") {
  REQUIRE_THROWS_AS(
      Profile::piecewise_linear({-1.0, 0.0, 1.0}, {1.0, 0.1, 1.0}), Error);
  REQUIRE_THROWS_AS(Profile::piecewise_linear({0.0, 1.0}, {-0.5, 1.0}), Error);
  REQUIRE_THROWS_AS(Profile::piecewise_linear({1.0, 0.0}, {0.5, 0.5}), Error);
}

TEST_CASE("smooth profiles evaluate the callable exactly", "[profile]") {
  auto B = ball_profile();
  REQUIRE_FALSE(B.piecewise_linear_kind());
  REQUIRE(B(0.3) == Catch::Approx(std::sqrt(1.0 - 0.09)).margin(1e-15));
  REQUIRE(B.max_radius() == Catch::Approx(1.0).margin(1e-10));
  REQUIRE(B.argmax_radius() == Catch::Approx(0.0).margin(1e-7));
}

TEST_CASE("integrate recovers the solid of revolution volume", "[profile]") {
  auto B = ball_profile();
  double vol = B.integrate(
      [](double, double r) { return std::numbers::pi * r * r; }, 1e-13);
  REQUIRE(vol == Catch::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-9));

  auto C = Profile::piecewise_linear({0.0, 2.0}, {1.0, 1.0});
  double cyl = C.integrate(
      [](double, double r) { return std::numbers::pi * r * r; });
  REQUIRE(cyl == Catch::Approx(2.0 * std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("evenized preserves level widths and centers the peak", "[profile]") {
  // Skewed tent: peak at t = 0.5 on [0, 2].
  auto P = Profile::piecewise_linear({0.0, 0.5, 2.0}, {0.0, 1.0, 0.0});
  auto E = P.evenized();
  REQUIRE(E.tmin() == Catch::Approx(-1.0).margin(1e-12));
  REQUIRE(E.tmax() == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(E.max_radius() == Catch::Approx(1.0).margin(1e-12));
  for (double rho : {0.1, 0.3, 0.5, 0.7, 0.9})
    REQUIRE(E.level_width(rho) == Catch::Approx(P.level_width(rho)).margin(1e-10));
  // Even in t.
  for (double t : {0.2, 0.55, 0.8})
    REQUIRE(E(t) == Catch::Approx(E(-t)).margin(1e-10));

  // Translation invariance of the level widths.
  auto E2 = P.translated(5.0).evenized();
  for (double rho : {0.25, 0.75})
    REQUIRE(E2.level_width(rho) == Catch::Approx(E.level_width(rho)).margin(1e-10));
}

TEST_CASE("affine reparameterizations act on knots and radii", "[profile]") {
  auto P = Profile::piecewise_linear({-1.0, 0.0, 1.0}, {0.0, 1.0, 0.0});
  auto T = P.translated(2.0);
  REQUIRE(T.tmin() == Catch::Approx(1.0));
  REQUIRE(T(2.0) == Catch::Approx(1.0));

  auto A = P.scaled_axis(3.0);
  REQUIRE(A.tmax() == Catch::Approx(3.0));
  REQUIRE(A(1.5) == Catch::Approx(0.5));

  auto R = P.scaled_radial(2.0);
  REQUIRE(R(0.0) == Catch::Approx(2.0));
  REQUIRE(R.tmax() == Catch::Approx(1.0));
}

TEST_CASE("tabulated freezes an analytic profile onto its knots", "[profile]") {
  auto B = ball_profile();
  auto T = B.tabulated();
  REQUIRE(T.piecewise_linear_kind());
  REQUIRE(T.knots().size() == B.knots().size());
  for (size_t i = 0; i < T.knots().size(); ++i)
    REQUIRE(T.values()[i] == Catch::Approx(B(T.knots()[i])).margin(1e-14));
}

TEST_CASE("axial polar of the cylinder meridian is the tent", "[profile]") {
  // Constant radius 1 on [-1, 1]: plane section is the square, whose polar
  // about the origin is the diamond with meridian 1 - |t|.
  auto C = Profile::piecewise_linear({-1.0, 0.0, 1.0}, {1.0, 1.0, 1.0});
  auto D = C.polar_about(0.0);
  REQUIRE(D.tmin() == Catch::Approx(-1.0).margin(1e-12));
  REQUIRE(D.tmax() == Catch::Approx(1.0).margin(1e-12));
  for (double t : {-0.75, -0.25, 0.0, 0.4, 0.9})
    REQUIRE(D(t) == Catch::Approx(1.0 - std::abs(t)).margin(1e-10));
}

TEST_CASE("axial polar of the ball profile is the ball profile", "[profile]") {
  auto B = ball_profile();
  auto P = B.polar_about(0.0);
  REQUIRE(P.tmin() == Catch::Approx(-1.0).margin(1e-9));
  REQUIRE(P.tmax() == Catch::Approx(1.0).margin(1e-9));
  for (double t : {-0.8, -0.3, 0.0, 0.45, 0.7})
    REQUIRE(P(t) == Catch::Approx(std::sqrt(1.0 - t * t)).margin(1e-6));
}
