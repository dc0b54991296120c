// Symmetry and affine measures: Minkowski measure of symmetry with a
// witnessing center, distance to the ball over centered ellipsoids,
// Bonnesen data for polygons, the difference-body volume gap, affine
// surface area of revolution bodies, and the reflection bound satisfied by
// profiles of nearly symmetric bodies.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "santalo/body.hpp"
#include "santalo/error.hpp"
#include "santalo/geometry.hpp"
#include "santalo/linprog.hpp"
#include "santalo/polar.hpp"
#include "santalo/polygon.hpp"
#include "santalo/polytope.hpp"
#include "santalo/profile.hpp"
#include "santalo/quadrature.hpp"
#include "santalo/revolution.hpp"

namespace santalo {

// Smallest lambda such that -(K - x) is contained in lambda (K - x) for
// some center x, the witnessing center, and the worst containment residual
// at that center (in length units; 0 when the containment is exact).
struct SymmetryReport {
  double q = 1.0;
  Vec center;
  double lambda_certificate = 0.0;
};

namespace measdetail {

// Halfspace form <a_i, x> <= b_i with unit rows plus the opposite supports
// s_i = h_K(-a_i).  The reflection containment -(K - x) c= lambda (K - x)
// reads s_i + <a_i, x> <= lambda (b_i - <a_i, x>) row by row, so checking a
// given lambda is a feasibility problem that is linear in x.  An optional
// line p + xi d restricts the center (used for bodies of revolution, where
// averaging over the rotation group moves any valid center onto the axis).
struct QSystem {
  Mat A;
  Vec b;
  Vec s;
  double scale = 1.0;
  std::optional<std::pair<Vec, Vec>> line;
};

inline QSystem q_system_from_rows(Mat A, Vec b, const Body& K) {
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    double nn = A.row(i).norm();
    require(nn > 1e-14, ErrorKind::invalid_body,
            "minkowski_q: degenerate facet normal");
    A.row(i) /= nn;
    b[i] /= nn;
  }
  Vec s(A.rows());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    s[i] = K.support(Vec(-A.row(i).transpose()));
  return QSystem{std::move(A), std::move(b), std::move(s), K.diameter(), {}};
}

inline FeasibilityReport q_feasible(const QSystem& S, double lambda) {
  if (!S.line) {
    Mat A2 = (1.0 + lambda) * S.A;
    Vec b2 = lambda * S.b - S.s;
    return feasibility_margin(A2, b2);
  }
  const Vec& p = S.line->first;
  const Vec& d = S.line->second;
  Mat A2(S.A.rows(), 1);
  Vec b2(S.A.rows());
  for (Eigen::Index i = 0; i < S.A.rows(); ++i) {
    double ad = S.A.row(i).dot(d);
    double ap = S.A.row(i).dot(p);
    A2(i, 0) = (1.0 + lambda) * ad;
    b2[i] = lambda * S.b[i] - S.s[i] - (1.0 + lambda) * ap;
  }
  return feasibility_margin(A2, b2);
}

inline Vec q_center_of(const QSystem& S, const FeasibilityReport& rep) {
  if (!S.line) return rep.point;
  return S.line->first + rep.point[0] * S.line->second;
}

inline double q_residual(const QSystem& S, double lambda, const Vec& x) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < S.A.rows(); ++i) {
    double ax = S.A.row(i).dot(x);
    worst = std::max(worst, S.s[i] + ax - lambda * (S.b[i] - ax));
  }
  return worst;
}

inline SymmetryReport q_solve(const QSystem& S, int nbody) {
  const double tol = 1e-9 * std::max(S.scale, 1e-9);
  auto feasible = [&](const FeasibilityReport& rep) {
    return rep.point.size() > 0 && rep.margin >= -tol;
  };
  SymmetryReport out;
  auto at_one = q_feasible(S, 1.0);
  if (feasible(at_one)) {
    out.q = 1.0;
    out.center = q_center_of(S, at_one);
    out.lambda_certificate = std::max(0.0, q_residual(S, 1.0, out.center));
    return out;
  }
  double lo = 1.0, hi = nbody + 1e-6;
  auto at_hi = q_feasible(S, hi);
  require(feasible(at_hi), ErrorKind::convergence,
          "minkowski_q: no center within the dimension bound");
  Vec hi_center = q_center_of(S, at_hi);
  while (hi - lo > 5e-8) {
    double mid = 0.5 * (lo + hi);
    auto rep = q_feasible(S, mid);
    if (feasible(rep)) {
      hi = mid;
      hi_center = q_center_of(S, rep);
    } else {
      lo = mid;
    }
  }
  out.q = hi;
  out.center = hi_center;
  out.lambda_certificate = std::max(0.0, q_residual(S, hi, hi_center));
  return out;
}

inline QSystem q_system_polygon(const Polygon& P) {
  Mat A;
  Vec b;
  P.halfplanes(A, b);
  return q_system_from_rows(std::move(A), std::move(b), Body::polygon(P));
}

}  // namespace measdetail

// Minkowski measure of symmetry of a polygon, optimized over all centers.
inline SymmetryReport minkowski_q(const Polygon& P) {
  return measdetail::q_solve(measdetail::q_system_polygon(P), 2);
}

// Minkowski measure of symmetry.  Polygons and polytopes optimize the
// center over the whole interior; bodies of revolution restrict the center
// to the axis (averaging over rotations shows the optimum lies there) and
// work on the meridian cross-section, which has the same measure.
inline SymmetryReport minkowski_q(const Body& K) {
  int n = K.dim();
  if (K.is_polygon() || (K.is_polytope() && n == 2)) {
    Polygon P = K.to_polygon();
    return measdetail::q_solve(measdetail::q_system_polygon(P), 2);
  }
  if (K.is_polytope()) {
    const Polytope& P = K.as_polytope();
    auto sys = measdetail::q_system_from_rows(P.normals(), P.offsets(), K);
    return measdetail::q_solve(sys, n);
  }
  const RevolutionBody& R = K.as_revolution();
  Polygon M = R.meridian_polygon();
  auto sys = measdetail::q_system_polygon(M);
  sys.line = std::make_pair(make_vec({0.0, 0.0}), make_vec({1.0, 0.0}));
  SymmetryReport rep = measdetail::q_solve(sys, n);
  rep.center = rep.center[0] * R.axis().vec();
  return rep;
}

namespace measdetail {

// lambda for the centered ellipse family on a polygon: E has principal
// directions at angle theta and axis ratio exp(2w); the largest copy inside
// K comes from the edge rows, the smallest dilate containing K from the
// vertices, and lambda is their ratio.
struct PolygonBmData {
  Mat A;
  Vec b;
  std::vector<Vec> verts;
};

inline double bm_lambda(const PolygonBmData& D, double theta, double w) {
  double cs = std::cos(theta), sn = std::sin(theta);
  double e = std::exp(2.0 * w), ei = std::exp(-2.0 * w);
  // Q = R diag(e, 1/e) R^T defines E = {x^T Q x <= 1}; h_E(a)^2 = a^T Q^-1 a.
  double i11 = cs * cs * ei + sn * sn * e;
  double i22 = sn * sn * ei + cs * cs * e;
  double i12 = cs * sn * (ei - e);
  double q11 = cs * cs * e + sn * sn * ei;
  double q22 = sn * sn * e + cs * cs * ei;
  double q12 = cs * sn * (e - ei);
  double smin = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < D.A.rows(); ++i) {
    double a0 = D.A(i, 0), a1 = D.A(i, 1);
    double h = std::sqrt(a0 * a0 * i11 + 2.0 * a0 * a1 * i12 + a1 * a1 * i22);
    smin = std::min(smin, D.b[i] / h);
  }
  double g = 0.0;
  for (const Vec& v : D.verts) {
    double gv = v[0] * v[0] * q11 + 2.0 * v[0] * v[1] * q12 + v[1] * v[1] * q22;
    g = std::max(g, std::sqrt(gv));
  }
  return g / smin;
}

inline double bm_polygon(const Polygon& P) {
  // Whitening by the covariance brings the optimum near the circle.
  Mat cov = P.second_moment() / P.area();
  Eigen::SelfAdjointEigenSolver<Mat> es(cov);
  Mat T = es.operatorInverseSqrt();
  Polygon W = P.transformed(AffineMap::linear(T));
  PolygonBmData D;
  W.halfplanes(D.A, D.b);
  D.verts = W.vertices();
  double best = std::numeric_limits<double>::infinity();
  double bt = 0.0, bw = 0.0;
  const double pi = std::numbers::pi;
  for (int it = 0; it < 48; ++it)
    for (int iw = -14; iw <= 14; ++iw) {
      double th = pi * it / 48.0, ww = 0.05 * iw;
      double v = bm_lambda(D, th, ww);
      if (v < best) {
        best = v;
        bt = th;
        bw = ww;
      }
    }
  double st = pi / 96.0, sw = 0.025;
  while (st > 1e-8 || sw > 1e-8) {
    bool moved = false;
    const double cand[4][2] = {{st, 0.0}, {-st, 0.0}, {0.0, sw}, {0.0, -sw}};
    for (auto& c : cand) {
      double v = bm_lambda(D, bt + c[0], bw + c[1]);
      if (v < best - 1e-15) {
        best = v;
        bt += c[0];
        bw += c[1];
        moved = true;
      }
    }
    if (!moved) {
      st *= 0.5;
      sw *= 0.5;
    }
  }
  return std::max(best, 1.0);
}

inline double bm_revolution(const RevolutionBody& R) {
  const Profile& p = R.profile();
  // Ellipsoids of revolution about the same axis: meridian ellipse with
  // semi-axes (exp(w), exp(-w)) up to scale.  Supports of K at sampled
  // meridian normals are computed once; each w is then a cheap sweep.
  const int NS = 2048;
  const double pi = std::numbers::pi;
  std::vector<double> hk(NS + 1), cph(NS + 1), sph(NS + 1);
  for (int j = 0; j <= NS; ++j) {
    double phi = 0.5 * pi * j / NS;
    cph[j] = std::cos(phi);
    sph[j] = std::sin(phi);
    hk[j] = p.support_1d(cph[j], sph[j]);
  }
  Profile tab = p.piecewise_linear_kind() ? p : p.tabulated();
  const auto& kt = tab.knots();
  const auto& kr = tab.values();
  auto lambda_of = [&](double w) {
    double ew = std::exp(w), ei = std::exp(-w);
    double smin = std::numeric_limits<double>::infinity();
    for (int j = 0; j <= NS; ++j) {
      double he = std::sqrt(ew * ew * cph[j] * cph[j] + ei * ei * sph[j] * sph[j]);
      smin = std::min(smin, hk[j] / he);
    }
    double g = 0.0;
    for (size_t i = 0; i < kt.size(); ++i) {
      double x = kt[i] * ei, y = kr[i] * ew;
      g = std::max(g, std::sqrt(x * x + y * y));
    }
    return g / smin;
  };
  double best = std::numeric_limits<double>::infinity();
  double bw = 0.0;
  for (int i = -250; i <= 250; ++i) {
    double v = lambda_of(0.01 * i);
    if (v < best) {
      best = v;
      bw = 0.01 * i;
    }
  }
  double neg = -golden_max([&](double w) { return -lambda_of(w); },
                           bw - 0.01, bw + 0.01, 1e-11);
  return std::max(std::min(best, neg), 1.0);
}

}  // namespace measdetail

// Smallest lambda with E c= K c= lambda E over centered ellipsoids.  K must
// be origin-symmetric; supported for polygons and bodies of revolution.
inline double bm_distance_ball(const Body& K) {
  int n = K.dim();
  Vec o = Vec::Zero(n);
  if (K.is_polygon() || (K.is_polytope() && n == 2)) {
    Polygon P = K.to_polygon();
    require(P.centrally_symmetric(o, 1e-7 * P.diameter()),
            ErrorKind::domain_error,
            "bm_distance_ball: body must be origin-symmetric");
    return measdetail::bm_polygon(P);
  }
  require(K.is_revolution(), ErrorKind::representation,
          "bm_distance_ball: supported for polygons and revolution bodies");
  const RevolutionBody& R = K.as_revolution();
  const Profile& p = R.profile();
  double width = p.width(), rmax = p.max_radius();
  require(std::abs(p.tmin() + p.tmax()) <= 1e-8 * width,
          ErrorKind::domain_error,
          "bm_distance_ball: body must be origin-symmetric");
  for (int j = 1; j < 256; ++j) {
    double t = p.tmin() + width * j / 256.0;
    require(std::abs(p(t) - p(-t)) <= 1e-7 * rmax, ErrorKind::domain_error,
            "bm_distance_ball: body must be origin-symmetric");
  }
  return measdetail::bm_revolution(R);
}

// Smallest lambda with E c= K c= lambda E over ellipses centered on the
// line p + xi d with axes along d and its normal.  Used to certify how far
// an axially symmetric planar body is from every such ellipse.
inline double ellipse_distance_on_axis(const Polygon& P, const Vec& p,
                                       const Vec& d) {
  Vec dd = d / d.norm();
  Vec e = make_vec({-dd[1], dd[0]});
  Mat A;
  Vec b;
  P.halfplanes(A, b);
  const auto& verts = P.vertices();
  double R = 0.5 * P.diameter();
  auto lam = [&](double xi, double w) {
    Vec y = p + xi * dd;
    double ew = std::exp(w), ei = std::exp(-w);
    double smin = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      double room = b[i] - A.row(i).dot(y);
      if (room <= 0.0) return std::numeric_limits<double>::infinity();
      double ad = A.row(i).dot(dd), ae = A.row(i).dot(e);
      double h = std::sqrt(ew * ew * ad * ad + ei * ei * ae * ae);
      smin = std::min(smin, room / h);
    }
    double g = 0.0;
    for (const Vec& v : verts) {
      double xd = (v - y).dot(dd) * ei, xe = (v - y).dot(e) * ew;
      g = std::max(g, std::sqrt(xd * xd + xe * xe));
    }
    return g / smin;
  };
  double best = std::numeric_limits<double>::infinity();
  double bx = 0.0, bw = 0.0;
  for (int ix = -20; ix <= 20; ++ix)
    for (int iw = -14; iw <= 14; ++iw) {
      double xi = 0.02 * R * ix, ww = 0.05 * iw;
      double v = lam(xi, ww);
      if (v < best) {
        best = v;
        bx = xi;
        bw = ww;
      }
    }
  double sx = 0.01 * R, sw = 0.025;
  while (sx > 1e-10 * R || sw > 1e-10) {
    bool moved = false;
    const double cand[4][2] = {{sx, 0.0}, {-sx, 0.0}, {0.0, sw}, {0.0, -sw}};
    for (auto& c : cand) {
      double v = lam(bx + c[0], bw + c[1]);
      if (v < best - 1e-15) {
        best = v;
        bx += c[0];
        bw += c[1];
        moved = true;
      }
    }
    if (!moved) {
      sx *= 0.5;
      sw *= 0.5;
    }
  }
  return std::max(best, 1.0);
}

// Bonnesen data for a planar convex body: mean width W (perimeter over pi),
// area A, circumradius R, inradius r, and the Bonnesen slack
// W^2 - (4/pi) A - (R - r)^2, which is nonnegative.
struct BonnesenReport {
  double W = 0.0;
  double A = 0.0;
  double R = 0.0;
  double r = 0.0;
  double slack = 0.0;
};

inline BonnesenReport bonnesen_report(const Polygon& P) {
  BonnesenReport rep;
  const double pi = std::numbers::pi;
  rep.W = P.perimeter() / pi;
  rep.A = P.area();
  rep.R = min_enclosing_circle(P.vertices()).radius;
  rep.r = polygon_inball(P).first;
  double d = rep.R - rep.r;
  rep.slack = rep.W * rep.W - 4.0 / pi * rep.A - d * d;
  return rep;
}

// Relative volume excess of the central difference body (K - K)/2 over K.
// Zero exactly for centrally symmetric bodies, positive otherwise.
inline double difference_body_gap(const Body& K) {
  int n = K.dim();
  if (K.is_polygon() || (K.is_polytope() && n == 2)) {
    Polygon P = K.to_polygon();
    Polygon D = Polygon::minkowski_sum(P, P.negated());
    return 0.25 * D.area() / P.area() - 1.0;
  }
  require(K.is_polytope(), ErrorKind::representation,
          "difference_body_gap: supported for polygons and polytopes");
  const Polytope& P = K.as_polytope();
  const auto& vs = P.vertices();
  require(vs.size() <= 24, ErrorKind::domain_error,
          "difference_body_gap: too many vertices");
  std::vector<Vec> half;
  for (const Vec& a : vs)
    for (const Vec& c : vs) half.push_back(0.5 * (a - c));
  Polytope D = Polytope::from_vertices(n, half);
  return D.volume() / P.volume() - 1.0;
}

// Affine surface area of a body of revolution with concave meridian
// profile, integrated in the Chebyshev angle (the flat piece of a profile
// and any endpoint disks contribute nothing; curvature is clamped below at
// zero, consistent with convexity up to discretization noise).
inline double affine_surface_area(const RevolutionBody& R) {
  const Profile& p = R.profile();
  const int n = R.dim();
  const int M = 2048;
  const double pi = std::numbers::pi;
  double hw = 0.5 * p.width();
  double rmax = p.max_radius();
  std::vector<double> t = chebyshev_grid(p.tmin(), p.tmax(), M);
  std::vector<double> r(t.size());
  for (size_t j = 0; j < t.size(); ++j) r[j] = p(t[j]);
  // Concavity of the samples: divided-difference slopes must not increase.
  for (int j = 1; j < M; ++j) {
    double s0 = (r[j] - r[j - 1]) / (t[j] - t[j - 1]);
    double s1 = (r[j + 1] - r[j]) / (t[j + 1] - t[j]);
    require(s1 - s0 <= 1e-7 * (rmax / hw + 1.0), ErrorKind::invalid_body,
            "affine_surface_area: meridian profile is not concave");
  }
  // Gauss curvature of the surface of revolution at height t:
  // kappa = (-r'' / (1 + r'^2)^{3/2}) * (r sqrt(1 + r'^2))^{-(n-2)};
  // derivatives in t come from uniform central differences in the
  // Chebyshev angle phi, where t = mid - hw cos(phi).
  const double h = pi / M;
  std::vector<double> integrand(t.size(), 0.0);
  for (int j = 1; j < M; ++j) {
    double phi = h * j;
    double s = std::sin(phi), c = std::cos(phi);
    double rd = (r[j + 1] - r[j - 1]) / (2.0 * h);
    double rdd = (r[j + 1] - 2.0 * r[j] + r[j - 1]) / (h * h);
    double rp = rd / (hw * s);
    double rpp = (rdd * s - rd * c) / (hw * hw * s * s * s);
    double one = 1.0 + rp * rp;
    double kappa = -rpp / std::pow(one, 1.5);
    if (n > 2) kappa /= std::pow(r[j] * std::sqrt(one), n - 2);
    if (kappa < 0.0) kappa = 0.0;
    integrand[j] = std::pow(kappa, 1.0 / (n + 1)) *
                   std::pow(r[j], n - 2) * std::sqrt(one) * hw * s;
  }
  // Composite Simpson on the uniform phi grid (M is even).
  double sum = 0.0;
  for (int j = 1; j < M; j += 2)
    sum += integrand[j - 1] + 4.0 * integrand[j] + integrand[j + 1];
  sum *= h / 3.0;
  return (n - 1) * unit_ball_volume(n - 1) * sum;
}

// Normalized affine quantities for a body of revolution: the affine
// isoperimetric ratio and its strengthening through the polar volume at
// the Santalo point.  Both are at most 1, equal to 1 exactly for
// ellipsoids, and the polar form dominates the isoperimetric form.
struct AffineRatios {
  double omega = 0.0;
  double polar_volume = 0.0;
  double iso = 0.0;
  double lutwak = 0.0;
};

inline AffineRatios affine_ratios(const Body& K) {
  require(K.is_revolution(), ErrorKind::representation,
          "affine_ratios: needs a body of revolution");
  const int n = K.dim();
  AffineRatios out;
  out.omega = affine_surface_area(K.as_revolution());
  SantaloInfo si = santalo(K);
  out.polar_volume = si.polar_vol;
  double V = K.volume();
  double kn = unit_ball_volume(n);
  double nn1 = std::pow(static_cast<double>(n), n + 1);
  out.iso = std::pow(out.omega, n + 1) / (kn * kn * nn1 * std::pow(V, n - 1));
  out.lutwak = std::pow(out.omega, n + 1) / (nn1 * std::pow(V, n) * si.polar_vol);
  return out;
}

// Pointwise bound on the profile asymmetry of a nearly symmetric body of
// revolution: if the solid with meridian profile g has Minkowski measure at
// most 1 + eps, then g(-t)/g(t) lies within [1/B, B] for
// B = 1 + 2 rho eps / (rho - t) on the symmetric domain (-rho, rho).
struct MinksymReport {
  double eps = 0.0;
  double rho = 0.0;
  double q = 1.0;
  double worst_margin = 0.0;
  double worst_t = 0.0;
};

inline MinksymReport minksym_bound_check(const Profile& g, double eps) {
  require(eps >= 0.0, ErrorKind::domain_error,
          "minksym_bound_check: eps must be nonnegative");
  double rho = g.tmax();
  require(std::abs(g.tmin() + g.tmax()) <= 1e-9 * g.width(),
          ErrorKind::domain_error,
          "minksym_bound_check: domain must be symmetric");
  MinksymReport rep;
  rep.eps = eps;
  rep.rho = rho;
  Polygon M = RevolutionBody(2, g).meridian_polygon();
  rep.q = minkowski_q(M).q;
  require(rep.q <= 1.0 + eps + 1e-12, ErrorKind::domain_error,
          "minksym_bound_check: measure of symmetry exceeds 1 + eps");
  rep.worst_margin = std::numeric_limits<double>::infinity();
  const int G = 512;
  for (int k = 1; k <= G; ++k) {
    double t = rho * k / (G + 1);
    double ratio = g(-t) / g(t);
    double B = 1.0 + 2.0 * rho * eps / (rho - t);
    double margin = std::min(B - ratio, ratio - 1.0 / B);
    if (margin < rep.worst_margin) {
      rep.worst_margin = margin;
      rep.worst_t = t;
    }
  }
  return rep;
}

}  // namespace santalo
