#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "santalo/hull.hpp"
#include "santalo/geometry.hpp"
#include "santalo/rng.hpp"

using namespace santalo;

namespace {

std::vector<Vec> cube_corners(int n) {
  std::vector<Vec> pts;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Vec v(n);
    for (int k = 0; k < n; ++k) v[k] = (mask >> k & 1) ? 1.0 : -1.0;
    pts.push_back(v);
  }
  return pts;
}

}  // namespace

TEST_CASE("hull of cube corners has axis facets", "[hull]") {
  for (int n = 3; n <= 4; ++n) {
    auto H = convex_hull(cube_corners(n));
    REQUIRE(H.dim == n);
    REQUIRE(static_cast<int>(H.extreme.size()) == (1 << n));
    // Every facet is one of the 2n axis halfspaces at offset 1.
    for (const auto& f : H.facets) {
      REQUIRE(f.offset == Catch::Approx(1.0).margin(1e-9));
      REQUIRE(f.normal.cwiseAbs().maxCoeff() == Catch::Approx(1.0).margin(1e-9));
    }
    // All 2n directions appear.
    for (int k = 0; k < n; ++k) {
      for (double sgn : {1.0, -1.0}) {
        bool found = false;
        for (const auto& f : H.facets)
          if (std::abs(f.normal[k] - sgn) < 1e-9 &&
              f.normal.cwiseAbs().sum() < 1.0 + 1e-9)
            found = true;
        REQUIRE(found);
      }
    }
  }
}

TEST_CASE("hull of cross-polytope vertices has 2^n facets", "[hull]") {
  for (int n = 2; n <= 4; ++n) {
    std::vector<Vec> pts;
    for (int k = 0; k < n; ++k)
      for (double sgn : {1.0, -1.0}) {
        Vec v = Vec::Zero(n);
        v[k] = sgn;
        pts.push_back(v);
      }
    auto H = convex_hull(pts);
    REQUIRE(static_cast<int>(H.facets.size()) == (1 << n));
    for (const auto& f : H.facets)
      REQUIRE(f.offset == Catch::Approx(1.0 / std::sqrt(double(n))).margin(1e-9));
  }
}

TEST_CASE("interior points are not extreme", "[hull]") {
  auto pts = cube_corners(3);
  Rng rng(5);
  for (int i = 0; i < 40; ++i) {
    Vec v(3);
    for (int k = 0; k < 3; ++k) v[k] = rng.uniform(-0.9, 0.9);
    pts.push_back(v);
  }
  auto H = convex_hull(pts);
  REQUIRE(H.extreme.size() == 8);
  for (int idx : H.extreme) REQUIRE(idx < 8);
}

TEST_CASE("random hulls contain all input points", "[hull]") {
  Rng rng(11);
  for (int n = 2; n <= 4; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Vec> pts;
      int m = n + 3 + static_cast<int>(rng.uniform_int(0, 12));
      for (int i = 0; i < m; ++i) pts.push_back(rng.unit_vector(n) * rng.uniform(0.5, 2.0));
      auto H = convex_hull(pts);
      REQUIRE(static_cast<int>(H.facets.size()) >= n + 1);
      for (const auto& f : H.facets) {
        REQUIRE(f.normal.norm() == Catch::Approx(1.0).margin(1e-9));
        for (const auto& p : pts)
          REQUIRE(f.normal.dot(p) <= f.offset + 1e-8);
        // Facet vertex indices actually lie on the facet plane.
        REQUIRE(static_cast<int>(f.verts.size()) >= n);
        for (int idx : f.verts)
          REQUIRE(f.normal.dot(pts[static_cast<size_t>(idx)]) ==
                  Catch::Approx(f.offset).margin(1e-8));
      }
    }
  }
}

TEST_CASE("degenerate input is rejected", "[hull]") {
  // Coplanar points in 3 dims cannot span a full-dimensional hull.
  std::vector<Vec> pts;
  for (double x : {-1.0, 1.0})
    for (double y : {-1.0, 1.0}) pts.push_back(make_vec({x, y, 0.0}));
  REQUIRE_THROWS_AS(convex_hull(pts), Error);
}
