// Symmetrization operators: Steiner symmetrization about a hyperplane,
// rotational rounding of sections about a direction, isotropic
// normalization, the composite rounding pipeline producing a body of
// revolution, and the double-reflection constructions that output
// centrally symmetric bodies.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "santalo/body.hpp"
#include "santalo/error.hpp"
#include "santalo/geometry.hpp"
#include "santalo/measures.hpp"
#include "santalo/polygon.hpp"
#include "santalo/polytope.hpp"
#include "santalo/profile.hpp"
#include "santalo/quadrature.hpp"
#include "santalo/revolution.hpp"

namespace santalo {

namespace symdetail {

// Steiner symmetral of a polytope about {<u, x> = c}, in H-representation.
// Writing each facet as a graph constraint over the base hyperplane, the
// symmetral's upper boundary is the minimum over (upper, lower) facet
// pairs of the half-difference of their graphs, so every pair contributes
// one affine constraint together with its mirror image; facets parallel to
// u carry over unchanged.  Exact up to the halfspace intersection.
inline Polytope steiner_polytope(const Polytope& P, const Direction& u,
                                 double c) {
  const int n = P.dim();
  Mat A = P.normals();
  Vec b = P.offsets();
  b -= c * (A * u.vec());  // shift the hyperplane to pass through the origin
  std::vector<Eigen::Index> up, low, lat;
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    double d = A.row(i).dot(u.vec());
    if (d > 1e-10) up.push_back(i);
    else if (d < -1e-10) low.push_back(i);
    else lat.push_back(i);
  }
  require(!up.empty() && !low.empty(), ErrorKind::invalid_body,
          "steiner: body is unbounded along the symmetrization direction");
  Eigen::Index rows =
      static_cast<Eigen::Index>(lat.size() + 2 * up.size() * low.size());
  Mat A2(rows, n);
  Vec b2(rows);
  Eigen::Index w = 0;
  for (Eigen::Index k : lat) {
    A2.row(w) = A.row(k);
    b2[w] = b[k];
    ++w;
  }
  for (Eigen::Index i : up)
    for (Eigen::Index j : low) {
      double di = A.row(i).dot(u.vec());
      double dj = A.row(j).dot(u.vec());
      Vec ti = (A.row(i).transpose() - di * u.vec()) / di;
      Vec tj = (A.row(j).transpose() - dj * u.vec()) / dj;
      Vec tang = 0.5 * (ti - tj);
      double off = 0.5 * (b[i] / di - b[j] / dj);
      A2.row(w) = (u.vec() + tang).transpose();
      b2[w] = off;
      ++w;
      A2.row(w) = (-u.vec() + tang).transpose();
      b2[w] = off;
      ++w;
    }
  Polytope S = Polytope::from_halfspaces(n, A2, b2);
  return S.translated(c * u.vec());
}

inline Vec rot90(const Vec& v) { return make_vec({-v[1], v[0]}); }

}  // namespace symdetail

// Steiner symmetrization about a hyperplane that cuts the interior.
// Polygons are symmetrized exactly; polytopes through the facet-pair
// construction; bodies of revolution support hyperplanes containing the
// axis (identity) and hyperplanes orthogonal to the axis (the profile is
// evenized about the cut).  Planar bodies of any kind fall back to the
// polygon path.
inline Body steiner(const Body& K, const Hyperplane& H) {
  const int n = K.dim();
  require(H.normal.dim() == n, ErrorKind::domain_error,
          "steiner: hyperplane dimension mismatch");
  const Vec& nh = H.normal.vec();
  const double c = H.offset;
  double margin = 1e-12 * K.diameter();
  require(c > -K.support(-nh) + margin && c < K.support(nh) - margin,
          ErrorKind::domain_error,
          "steiner: hyperplane must cut the interior");
  if (K.is_polygon() || n == 2) {
    Polygon P = K.to_polygon();
    return Body::polygon(P.steiner(c * nh, symdetail::rot90(nh)));
  }
  if (K.is_polytope())
    return Body::polytope_h(
        symdetail::steiner_polytope(K.as_polytope(), H.normal, c));
  const RevolutionBody& R = K.as_revolution();
  double ua = nh.dot(R.axis().vec());
  if (std::abs(ua) <= 1e-9 && std::abs(c) <= 1e-9 * K.diameter())
    return K;  // the hyperplane contains the axis: already symmetric
  if (std::abs(ua) >= 1.0 - 1e-12) {
    double t0 = c / ua;
    Profile p = R.profile().translated(-t0).evenized().translated(t0);
    return Body::revolution(RevolutionBody(n, std::move(p), R.axis()));
  }
  fail(ErrorKind::representation,
       "steiner: revolution bodies support only hyperplanes containing the "
       "axis or orthogonal to it");
}

// Rotational rounding about the direction u: replaces every section
// {<u, x> = t} by the centered (n-1)-ball of the same measure.  The
// result is a body of revolution about u with the same volume (Fubini)
// and the same axial moments.
inline RevolutionBody schwarz_round(const Body& K, const Direction& u,
                                    int grid = 1024) {
  const int n = K.dim();
  require(u.dim() == n, ErrorKind::domain_error,
          "schwarz_round: direction dimension mismatch");
  require(grid >= 512, ErrorKind::domain_error,
          "schwarz_round: grid must be at least 512");
  const double lo = -K.support(-u.vec());
  const double hi = K.support(u.vec());
  const double kv = unit_ball_volume(n - 1);
  std::function<double(double)> radius;
  std::vector<double> extra;
  if (K.is_polygon() || n == 2) {
    Polygon P = K.to_polygon();
    for (const Vec& v : P.vertices()) extra.push_back(u.dot(v));
    radius = [P, u](double t) {
      auto ch = P.chord(u.vec(), t);
      return ch ? 0.5 * (ch->first - ch->second).norm() : 0.0;
    };
  } else if (K.is_polytope()) {
    const Polytope& P = K.as_polytope();
    Mat W = orthonormal_complement(u);
    Mat Aw = P.normals() * W;
    Vec Au = P.normals() * u.vec();
    Vec b = P.offsets();
    for (const Vec& v : P.vertices()) extra.push_back(u.dot(v));
    if (n == 3) {
      radius = [Aw, Au, b, kv](double t) {
        try {
          return std::sqrt(Polygon::from_halfplanes(Aw, Vec(b - t * Au)).area() / kv);
        } catch (const Error&) {
          return 0.0;
        }
      };
    } else {
      radius = [Aw, Au, b, kv, n](double t) {
        try {
          Polytope sec = Polytope::from_halfspaces(n - 1, Aw, Vec(b - t * Au));
          return std::pow(sec.volume() / kv, 1.0 / (n - 1));
        } catch (const Error&) {
          return 0.0;
        }
      };
    }
  } else {
    const RevolutionBody& R = K.as_revolution();
    double ua = u.dot(R.axis().vec());
    if (std::abs(ua) >= 1.0 - 1e-12) {
      Profile p = ua > 0 ? R.profile() : R.profile().reversed();
      return RevolutionBody(n, std::move(p), u);
    }
    radius = [R, u, kv, n](double t) {
      double vol = section_volume(R, u, t);
      return vol <= 0.0 ? 0.0 : std::pow(vol / kv, 1.0 / (n - 1));
    };
  }
  std::vector<double> inner;
  double span = hi - lo;
  for (double x : extra)
    if (x > lo + 1e-9 * span && x < hi - 1e-9 * span) inner.push_back(x);
  std::sort(inner.begin(), inner.end());
  Profile prof = Profile::smooth(lo, hi, std::move(radius), grid, inner);
  return RevolutionBody(n, std::move(prof), u);
}

// Result of isotropic normalization: the affine map applied, the isotropic
// constant of the input, and the circumradius of the normalized body.
struct IsotropicReport {
  AffineMap map;
  double L_K = 0.0;
  double inclusion_radius = 0.0;
};

// Affinely normalizes K: centroid at the origin, volume equal to the unit
// ball's, covariance proportional to the identity (the map has unit
// determinant after the volume scaling).  The isotropic constant satisfies
// L^2 = lambda * kappa_n^{-2/n} with lambda the normalized covariance
// scalar; for the ball, lambda = kappa_n^{2/n}/(n+2).
inline std::pair<IsotropicReport, Body> isotropic_normalize(const Body& K) {
  const int n = K.dim();
  const double kn = unit_ball_volume(n);
  Vec c = K.centroid();
  double s = std::pow(kn / K.volume(), 1.0 / n);
  Body K1 = K.translated(Vec(-c)).transformed(
      AffineMap::linear(Mat(s * Mat::Identity(n, n))));
  Mat Sigma = K1.covariance();
  Eigen::SelfAdjointEigenSolver<Mat> es(Sigma);
  require(es.eigenvalues().minCoeff() > 1e-14, ErrorKind::invalid_body,
          "isotropic_normalize: degenerate covariance");
  Mat M = std::pow(Sigma.determinant(), 1.0 / (2.0 * n)) *
          Mat(es.operatorInverseSqrt());
  Body K2 = K1.transformed(AffineMap::linear(M));
  double lambda = K2.covariance().trace() / n;
  double LK = std::sqrt(lambda * std::pow(kn, -2.0 / n));
  double incl = 0.0;
  if (K2.is_revolution()) {
    const Profile& p = K2.as_revolution().profile();
    auto norm2 = [&p](double t) {
      double r = p(t);
      return t * t + r * r;
    };
    const auto& kt = p.knots();
    size_t bi = 0;
    for (size_t i = 0; i < kt.size(); ++i)
      if (norm2(kt[i]) > norm2(kt[bi])) bi = i;
    incl = norm2(kt[bi]);
    if (!p.piecewise_linear_kind()) {
      double a = kt[bi > 0 ? bi - 1 : 0];
      double b = kt[std::min(bi + 1, kt.size() - 1)];
      if (b > a) incl = std::max(incl, golden_max(norm2, a, b, 1e-13 * p.width()));
    }
    incl = std::sqrt(incl);
  } else if (K2.is_polygon()) {
    for (const Vec& v : K2.as_polygon().vertices())
      incl = std::max(incl, v.norm());
  } else {
    for (const Vec& v : K2.as_polytope().vertices())
      incl = std::max(incl, v.norm());
  }
  AffineMap total = AffineMap::linear(Mat(M * s))
                        .compose(AffineMap::translation(Vec(-c)));
  return {IsotropicReport{std::move(total), LK, incl}, std::move(K2)};
}

// Result of the rounding pipeline: the rounded body of revolution, its
// axis, the normalization report, and the support value along the axis
// (equal to 1 after the final dilation).
struct RoundingResult {
  RevolutionBody body;
  Direction u;
  IsotropicReport iso;
  double support_u = 0.0;
};

// Rounds an arbitrary body into a body of revolution: isotropic
// normalization, then rotational rounding about the direction whose
// support deviates most from the equal-volume ball, then a volume-neutral
// dilation making the axial support exactly 1.  The centroid stays at the
// origin throughout (rounding preserves axial moments).
inline RoundingResult rounding_pipeline(const Body& K, int grid = 1024) {
  auto [iso, K2] = isotropic_normalize(K);
  const int n = K.dim();
  auto dev = [&K2](const Vec& v) { return std::abs(K2.support(v) - 1.0); };
  double best = -1.0;
  Vec bu;
  for (const Vec& v : sphere_covering(n, 4096)) {
    double d = dev(v);
    if (d > best) {
      best = d;
      bu = v;
    }
  }
  double step = 0.05;
  while (step > 1e-5) {
    Mat W = orthonormal_complement(Direction::of(bu));
    bool moved = false;
    for (int k = 0; k < n - 1 && !moved; ++k)
      for (double sg : {1.0, -1.0}) {
        Vec cand = bu + sg * step * W.col(k);
        cand /= cand.norm();
        double d = dev(cand);
        if (d > best + 1e-15) {
          best = d;
          bu = cand;
          moved = true;
          break;
        }
      }
    if (!moved) step *= 0.5;
  }
  Direction u = Direction::of(bu);
  RevolutionBody C = schwarz_round(K2, u, grid);
  double htop = C.profile().tmax();
  RevolutionBody out = C.scaled_axial(1.0 / htop)
                           .scaled_radial(std::pow(htop, 1.0 / (n - 1)));
  double sup = out.profile().tmax();
  return RoundingResult{std::move(out), u, std::move(iso), sup};
}

// Result of a double-reflection construction: the centrally symmetric
// output, whether the diameter-based hyperplane pair was used, and the
// measured ellipse distance that drove the choice.
struct PlanarSymmetral {
  Polygon body;
  bool diameter_branch = false;
  double eps_hat = 0.0;
};

// Two Steiner symmetrizations taking an axially symmetric planar body to
// an origin-symmetric one.  The first pair uses the detected symmetry
// axis (a free symmetrization) and its perpendicular through the
// centroid.  When that result lands too close to the ball relative to the
// body's ellipse distance (threshold 0.001 * eps^2), the certificate
// comes from the diameter construction instead: symmetrize about the line
// through a diameter pair, then about its perpendicular through the
// centroid.  Area is preserved; the output is centered at the origin.
inline PlanarSymmetral planar_double_steiner(const Polygon& P0) {
  Vec c0 = P0.centroid();
  double diam = P0.diameter();
  auto symmetric_about = [&](const Vec& dir) {
    Vec d = dir / dir.norm();
    for (int i = 0; i < P0.size(); ++i) {
      Vec w = P0.vertex(i) - c0;
      Vec refl = c0 + 2.0 * w.dot(d) * d - w;
      double bestd = std::numeric_limits<double>::infinity();
      for (int j = 0; j < P0.size(); ++j)
        bestd = std::min(bestd, (refl - P0.vertex(j)).norm());
      if (bestd > 1e-8 * diam) return false;
    }
    return true;
  };
  std::optional<Vec> axis;
  for (int i = 0; i < P0.size() && !axis; ++i) {
    Vec dv = P0.vertex(i) - c0;
    if (dv.norm() > 1e-12 * diam && symmetric_about(dv)) {
      axis = dv / dv.norm();
      break;
    }
    Vec dm = 0.5 * (P0.vertex(i) + P0.vertex(i + 1)) - c0;
    if (dm.norm() > 1e-12 * diam && symmetric_about(dm)) axis = dm / dm.norm();
  }
  require(axis.has_value(), ErrorKind::domain_error,
          "planar_double_steiner: no reflection symmetry axis found");
  double sc = std::sqrt(std::numbers::pi / P0.area());
  Polygon P = P0.translated(Vec(-c0)).scaled(sc);
  Vec d = *axis;
  Vec e = symdetail::rot90(d);
  Vec origin = Vec::Zero(2);
  // The body is symmetric about the axis line, so symmetrizing about it is
  // free; one more pass about the perpendicular yields central symmetry.
  Polygon r1 = P.steiner(origin, e);
  double ehat = ellipse_distance_on_axis(P, origin, d) - 1.0;
  PlanarSymmetral out{std::move(r1), false, ehat};
  const double cprime = 0.001;
  if (ehat > 1e-7 &&
      bm_distance_ball(Body::polygon(out.body)) - 1.0 <= cprime * ehat * ehat) {
    auto dp = P.diameter_pair();
    Vec dd = dp.second - dp.first;
    dd /= dd.norm();
    Polygon k1 = P.steiner(dp.first, dd);
    Vec cc = k1.centroid();
    Polygon k2 = k1.steiner(cc, symdetail::rot90(dd));
    Vec foot = dp.first + dd.dot(cc - dp.first) * dd;
    out.body = k2.translated(Vec(-foot));
    out.diameter_branch = true;
  }
  out.body = out.body.scaled(1.0 / sc);
  return out;
}

// Result of the full reduction: an origin-symmetric body of revolution
// with volume normalized to the unit ball's, plus the dichotomy data.
struct ReductionResult {
  RevolutionBody body;
  Direction axis;
  bool diameter_branch = false;
  double eps_hat = 0.0;
};

// Full reduction of an arbitrary body to an origin-symmetric body of
// revolution: rounding pipeline, one Steiner symmetrization about the
// hyperplane through the centroid orthogonal to the axis (profile
// evenization), then a second rounding pass.  The dichotomy mirrors the
// planar construction: when evenization lands too close to the ball
// relative to the meridian's ellipse distance, the diameter pair of
// hyperplanes is consulted; axial and radial meridian diameters reproduce
// the evenized body exactly (level widths are translation invariant),
// while an oblique diameter would leave the class of revolution bodies.
inline ReductionResult full_reduction(const Body& K, int grid = 1024) {
  const int n = K.dim();
  RoundingResult R1 = rounding_pipeline(K, grid);
  const RevolutionBody& C1 = R1.body;
  // Pin the section-integral profile to its knot grid before composing;
  // evenization and the ellipse searches below evaluate it thousands of
  // times, and a chained analytic profile would re-integrate per call.
  RevolutionBody C2(n, C1.profile().tabulated().evenized(), C1.axis());
  Polygon M = C1.meridian_polygon();
  double ehat =
      ellipse_distance_on_axis(M, Vec::Zero(2), make_vec({1.0, 0.0})) - 1.0;
  bool branch = false;
  const double cprime = 0.001;
  if (ehat > 1e-7 &&
      bm_distance_ball(Body::revolution(C2)) - 1.0 <= cprime * ehat * ehat) {
    auto dp = M.diameter_pair();
    double dt = std::abs(dp.first[0] - dp.second[0]);
    double ds = std::abs(dp.first[1] - dp.second[1]);
    double dl = (dp.first - dp.second).norm();
    bool axial = ds <= 1e-7 * dl;
    bool radial = dt <= 1e-7 * dl;
    require(axial || radial, ErrorKind::representation,
            "full_reduction: oblique meridian diameter; the double-reflection "
            "body is not a body of revolution");
    branch = true;
  }
  RoundingResult R2 = rounding_pipeline(Body::revolution(std::move(C2)), grid);
  RevolutionBody out(n, R2.body.profile().tabulated(), R2.body.axis());
  return ReductionResult{std::move(out), R2.u, branch, ehat};
}

}  // namespace santalo
