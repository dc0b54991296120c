#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "santalo/polygon.hpp"
#include "santalo/rng.hpp"
#include "oracles.hpp"

using namespace santalo;

namespace {

Polygon unit_square() {
  return Polygon::from_vertices({make_vec({1, 1}), make_vec({-1, 1}),
                                 make_vec({-1, -1}), make_vec({1, -1})});
}

Polygon random_polygon(Rng& rng) {
  int k = 5 + static_cast<int>(rng.uniform_int(0, 7));
  std::vector<Vec> pts;
  for (int i = 0; i < k; ++i)
    pts.push_back(rng.unit_vector(2) * rng.uniform(0.5, 1.5));
  return Polygon::hull_of(pts);
}

}  // namespace

TEST_CASE("area, perimeter and centroid of simple shapes", "[polygon]") {
  auto S = unit_square();
  REQUIRE(S.area() == Catch::Approx(4.0));
  REQUIRE(S.perimeter() == Catch::Approx(8.0));
  REQUIRE(S.centroid().norm() == Catch::Approx(0.0).margin(1e-12));

  auto G = Polygon::regular(256, 1.0);
  REQUIRE(G.area() == Catch::Approx(std::numbers::pi).epsilon(1e-3));
  REQUIRE(G.perimeter() == Catch::Approx(2 * std::numbers::pi).epsilon(1e-3));
}

TEST_CASE("hull_of removes interior points and orders CCW", "[polygon]") {
  std::vector<Vec> pts = {make_vec({1, 1}),   make_vec({-1, 1}),
                          make_vec({-1, -1}), make_vec({1, -1}),
                          make_vec({0, 0}),   make_vec({0.5, 0.2})};
  auto P = Polygon::hull_of(pts);
  REQUIRE(P.size() == 4);
  REQUIRE(P.area() == Catch::Approx(4.0));
}

TEST_CASE("halfplane description matches vertices", "[polygon]") {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto P = random_polygon(rng);
    Mat A;
    Vec b;
    P.halfplanes(A, b);
    REQUIRE(A.rows() == P.size());
    for (int i = 0; i < P.size(); ++i) {
      Vec v = P.vertex(i);
      REQUIRE(((A * v - b).maxCoeff() <= 1e-9));
    }
    auto Q = Polygon::from_halfplanes(A, b);
    REQUIRE(Q.area() == Catch::Approx(P.area()).epsilon(1e-9));
  }
}

TEST_CASE("support function is the vertex maximum", "[polygon]") {
  auto S = unit_square();
  REQUIRE(S.support(make_vec({1, 0})) == Catch::Approx(1.0));
  REQUIRE(S.support(make_vec({1, 1})) == Catch::Approx(2.0));
  REQUIRE(S.diameter() == Catch::Approx(2.0 * std::sqrt(2.0)));
}

TEST_CASE("chord endpoints lie on the boundary", "[polygon]") {
  auto S = unit_square();
  auto ch = S.chord(make_vec({1, 0}), 0.5);
  REQUIRE(ch.has_value());
  REQUIRE((ch->second - ch->first).norm() == Catch::Approx(2.0).margin(1e-9));
  REQUIRE_FALSE(S.chord(make_vec({1, 0}), 2.0).has_value());
}

TEST_CASE("line symmetral centers chords and keeps area", "[polygon]") {
  Rng rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    auto P = random_polygon(rng);
    Vec p = make_vec({rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2)});
    Vec d = rng.unit_vector(2);
    auto S = P.steiner(p, d);
    REQUIRE(S.area() == Catch::Approx(P.area()).epsilon(1e-9));

    // Chord lengths match at sampled stations; symmetral chords are centered.
    Vec nn = make_vec({-d[1], d[0]});
    for (int j = 0; j < 9; ++j) {
      double xi = -0.6 + 0.15 * j;
      double lo1, hi1, lo2, hi2;
      bool in1 = oracles::chord_at(P, p, d, xi, lo1, hi1);
      bool in2 = oracles::chord_at(S, p, d, xi, lo2, hi2);
      if (!in1 || !in2) continue;
      REQUIRE(hi2 - lo2 == Catch::Approx(hi1 - lo1).margin(1e-7));
      REQUIRE(hi2 + lo2 == Catch::Approx(0.0).margin(1e-7));
      (void)nn;
    }

    // Result is symmetric under reflection about the line.
    auto R = S.reflected(p, d);
    REQUIRE(R.area() == Catch::Approx(S.area()).epsilon(1e-9));
    for (int i = 0; i < S.size(); ++i) REQUIRE(R.contains(S.vertex(i), 1e-7));
  }
}

TEST_CASE("minkowski sum agrees with support addition", "[polygon]") {
  Rng rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    auto P = random_polygon(rng);
    auto Q = random_polygon(rng);
    auto M = Polygon::minkowski_sum(P, Q);
    for (int j = 0; j < 24; ++j) {
      double th = 2 * std::numbers::pi * j / 24;
      Vec u = make_vec({std::cos(th), std::sin(th)});
      REQUIRE(M.support(u) ==
              Catch::Approx(P.support(u) + Q.support(u)).margin(1e-9));
    }
  }
  // Square + square = doubled square.
  auto M = Polygon::minkowski_sum(unit_square(), unit_square());
  REQUIRE(M.area() == Catch::Approx(16.0));
}

TEST_CASE("polar of the square about the origin is the cross", "[polygon]") {
  auto D = unit_square().polar(Vec::Zero(2));
  REQUIRE(D.area() == Catch::Approx(2.0).margin(1e-12));
  REQUIRE(D.support(make_vec({1, 0})) == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(D.support(make_vec({1, 1})) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("central symmetry detection", "[polygon]") {
  REQUIRE(unit_square().centrally_symmetric(Vec::Zero(2), 1e-9));
  auto T = Polygon::from_vertices(
      {make_vec({1, 0}), make_vec({0, 1}), make_vec({-1, -1})});
  REQUIRE_FALSE(T.centrally_symmetric(T.centroid(), 1e-6));
  auto S = unit_square().translated(make_vec({3, 4}));
  REQUIRE(S.centrally_symmetric(make_vec({3, 4}), 1e-9));
}

TEST_CASE("enclosing circle and inscribed ball of the square", "[polygon]") {
  auto S = unit_square();
  auto C = min_enclosing_circle(S.vertices());
  REQUIRE(C.radius == Catch::Approx(std::sqrt(2.0)).margin(1e-9));
  REQUIRE(C.center.norm() == Catch::Approx(0.0).margin(1e-9));
  auto [r, c] = polygon_inball(S);
  REQUIRE(r == Catch::Approx(1.0).margin(1e-8));
  REQUIRE(c.norm() == Catch::Approx(0.0).margin(1e-7));
}

TEST_CASE("degenerate vertex lists are rejected", "[polygon]") {
  REQUIRE_THROWS_AS(
      Polygon::from_vertices({make_vec({0, 0}), make_vec({1, 1})}), Error);
  REQUIRE_THROWS_AS(Polygon::from_vertices({make_vec({0, 0}), make_vec({1, 1}),
                                            make_vec({2, 2})}),
                    Error);
}
