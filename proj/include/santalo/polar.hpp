#pragma once

#include <vector>

#include "santalo/body.hpp"

namespace santalo {

// Lower bound on the distance from z to the boundary; for revolution
// bodies z must lie on the axis (the distance from an axis point to the
// boundary is realized within a meridian plane).
inline double interior_margin(const Body& K, const Vec& z) {
  if (K.is_revolution()) {
    const RevolutionBody& R = K.as_revolution();
    double t0 = R.axis().dot(z);
    Polygon m = R.meridian_polygon();
    Vec p = make_vec({t0, 0.0});
    double margin = 1e300;
    for (int i = 0; i < m.size(); ++i) {
      auto [nrm, off] = m.edge_halfplane(i);
      margin = std::min(margin, off - nrm.dot(p));
    }
    return margin;
  }
  const Mat* A;
  const Vec* b;
  Mat Ap;
  Vec bp;
  if (K.is_polygon()) {
    K.as_polygon().halfplanes(Ap, bp);
    A = &Ap;
    b = &bp;
  } else {
    A = &K.as_polytope().normals();
    b = &K.as_polytope().offsets();
  }
  double margin = 1e300;
  for (Eigen::Index i = 0; i < A->rows(); ++i)
    margin = std::min(margin, (*b)[i] - A->row(i).dot(z));
  return margin;
}

// K^z = z + (K - z)^polar, the polar body about the interior point z.
// Facets and vertices swap roles for polytopes; a revolution body maps to
// the revolution body whose meridian is the planar polar of the input
// meridian (z must sit on the axis).
inline Body polar(const Body& K, const Vec& z) {
  double diam = K.diameter();
  if (K.is_revolution()) {
    const RevolutionBody& R = K.as_revolution();
    double t0 = R.axis().dot(z);
    require((z - t0 * R.axis().vec()).norm() <= 1e-9 * diam,
            ErrorKind::representation,
            "polar: center must lie on the revolution axis");
    require(interior_margin(K, z) >= 1e-9 * diam, ErrorKind::domain_error,
            "polar: center too close to the boundary");
    return Body::revolution(R.polar_axial(t0));
  }
  require(interior_margin(K, z) >= 1e-9 * diam, ErrorKind::domain_error,
          "polar: center too close to the boundary");
  if (K.is_polygon())
    return Body::polygon(K.as_polygon().polar(z));
  const Polytope& P = K.as_polytope();
  const Mat& A = P.normals();
  const Vec& b = P.offsets();
  std::vector<Vec> verts;
  verts.reserve(static_cast<size_t>(A.rows()));
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    double den = b[i] - A.row(i).dot(z);
    verts.push_back(Vec(z + A.row(i).transpose() / den));
  }
  Polytope Q = Polytope::from_vertices(P.dim(), verts);
  return K.kind() == BodyKind::polytope_h ? Body::polytope_v(std::move(Q))
                                          : Body::polytope_h(std::move(Q));
}

// Volume of K^z without keeping the polar body.
inline double polar_volume(const Body& K, const Vec& z) {
  if (K.is_polygon()) return K.as_polygon().polar(z).area();
  return polar(K, z).volume();
}

inline bool centrally_symmetric_about(const Body& K, const Vec& z,
                                      double tol) {
  if (K.is_polygon()) return K.as_polygon().centrally_symmetric(z, tol);
  if (K.is_polytope()) {
    const auto& verts = K.as_polytope().vertices();
    for (const auto& v : verts) {
      Vec w = 2.0 * z - v;
      bool found = false;
      for (const auto& u : verts)
        if ((u - w).lpNorm<Eigen::Infinity>() <= tol) {
          found = true;
          break;
        }
      if (!found) return false;
    }
    return true;
  }
  const RevolutionBody& R = K.as_revolution();
  double t0 = R.axis().dot(z);
  if ((z - t0 * R.axis().vec()).norm() > tol) return false;
  const Profile& p = R.profile();
  if (std::abs((p.tmax() - t0) - (t0 - p.tmin())) > tol) return false;
  for (double t : p.knots()) {
    double s = 2.0 * t0 - t;
    if (s < p.tmin() || s > p.tmax()) return false;
    if (std::abs(p(t) - p(s)) > tol) return false;
  }
  return true;
}

struct SantaloInfo {
  Vec z;               // minimizer of the polar volume
  double certificate;  // |centroid(K^z) - z|, at most 1e-6 * diameter
  double polar_vol;
  int iterations;
};

// Minimizer of z -> V(K^z), found by damped Newton with central finite
// differences on the smooth convex objective; the returned point carries
// the fixed-point certificate |centroid(K^z) - z| <= 1e-6 * diam (the
// Santalo point is the centroid of its own polar).
inline SantaloInfo santalo(const Body& K) {
  const int n = K.dim();
  const double diam = K.diameter();
  const double cert_tol = 1e-6 * diam;
  const double guard = 1e-9 * diam;

  // Revolution bodies: the objective is rotation-invariant about the
  // axis, so the unique minimizer lies on the axis; iterate in the axial
  // coordinate alone.
  const bool axial = K.is_revolution();
  Vec axis = axial ? Vec(K.as_revolution().axis().vec()) : Vec();
  const int dof = axial ? 1 : n;

  auto embed = [&](const Vec& y) -> Vec {
    return axial ? Vec(y[0] * axis) : y;
  };
  auto vol_at = [&](const Vec& y) { return polar_volume(K, embed(y)); };

  Vec y(dof);
  if (axial)
    y[0] = axis.dot(K.centroid());
  else
    y = K.centroid();

  Vec best = y;
  double best_cert = 1e300;
  int iter = 0;
  for (; iter < 200; ++iter) {
    Body P = polar(K, embed(y));
    double cert = (P.centroid() - embed(y)).norm();
    double V = P.volume();
    if (cert < best_cert) {
      best_cert = cert;
      best = y;
    }
    if (cert <= cert_tol)
      return {embed(y), cert, V, iter};

    double margin = interior_margin(K, embed(y));
    double h = std::min(1e-4 * diam, 0.2 * margin);
    Vec g(dof);
    Mat H(dof, dof);
    for (int i = 0; i < dof; ++i) {
      Vec e = Vec::Zero(dof);
      e[i] = h;
      double vp = vol_at(y + e), vm = vol_at(y - e);
      g[i] = (vp - vm) / (2.0 * h);
      H(i, i) = (vp - 2.0 * V + vm) / (h * h);
      for (int j = i + 1; j < dof; ++j) {
        Vec f = Vec::Zero(dof);
        f[j] = h;
        double vpp = vol_at(y + e + f), vpm = vol_at(y + e - f);
        double vmp = vol_at(y - e + f), vmm = vol_at(y - e - f);
        H(i, j) = H(j, i) = (vpp - vpm - vmp + vmm) / (4.0 * h * h);
      }
    }
    Vec step = -Eigen::LDLT<Mat>(H).solve(g);
    if (!step.allFinite() || g.dot(step) >= 0.0)
      step = -g * (h / std::max(g.norm(), 1e-300));  // descent fallback
    double alpha = 1.0;
    bool moved = false;
    for (int halve = 0; halve < 60; ++halve, alpha *= 0.5) {
      Vec cand = y + alpha * step;
      if (interior_margin(K, embed(cand)) < 4.0 * guard) continue;
      if (vol_at(cand) < V) {
        y = cand;
        moved = true;
        break;
      }
    }
    if (!moved) break;  // no descent left; certificate decides below
  }
  Body P = polar(K, embed(best));
  double cert = (P.centroid() - embed(best)).norm();
  if (cert <= cert_tol) return {embed(best), cert, P.volume(), iter};
  std::vector<double> it(static_cast<size_t>(n));
  Vec bz = embed(best);
  for (int i = 0; i < n; ++i) it[static_cast<size_t>(i)] = bz[i];
  throw ConvergenceError("santalo: no convergence within 200 iterations", it,
                         cert);
}

inline Vec santalo_point(const Body& K) { return santalo(K).z; }

struct ProductReport {
  Vec z;
  double vol_K = 0.0;
  double vol_polar = 0.0;
  double product = 0.0;
  double deficit = 0.0;  // 1 - product / kappa_n^2
  bool o_symmetric = false;
  bool kuperberg_symmetric_ok = false;
  bool kuperberg_general_ok = false;
};

inline ProductReport volume_product_report(const Body& K) {
  const int n = K.dim();
  SantaloInfo s = santalo(K);
  ProductReport r;
  r.z = s.z;
  r.vol_K = K.volume();
  r.vol_polar = s.polar_vol;
  r.product = r.vol_K * r.vol_polar;
  double k2 = unit_ball_volume(n) * unit_ball_volume(n);
  r.deficit = 1.0 - r.product / k2;
  r.o_symmetric = centrally_symmetric_about(K, s.z, 1e-9 * K.diameter());
  r.kuperberg_symmetric_ok =
      !r.o_symmetric || r.product > std::pow(2.0, -n) * k2;
  r.kuperberg_general_ok = r.product > std::pow(4.0, -n) * k2;
  return r;
}

// First mixed volume V1(K, M) = (1/n) * sum over facets of K of
// h_M(outer normal) * facet area; K must be piecewise-linear.
inline double mixed_volume_v1(const Body& K, const Body& M) {
  require(K.dim() == M.dim(), ErrorKind::domain_error,
          "mixed_volume_v1: dimension mismatch");
  int n = K.dim();
  if (K.is_polygon() || n == 2) {
    Polygon P = K.to_polygon();
    double sum = 0.0;
    for (int i = 0; i < P.size(); ++i) {
      auto [nrm, off] = P.edge_halfplane(i);
      sum += M.support(nrm) * (P.vertex(i + 1) - P.vertex(i)).norm();
    }
    return sum / 2.0;
  }
  require(K.is_polytope(), ErrorKind::representation,
          "mixed_volume_v1: first body must be piecewise-linear");
  const Polytope& P = K.as_polytope();
  const Hull& hull = P.hull();
  double sum = 0.0;
  for (const auto& f : hull.facets)
    sum += M.support(f.normal) * facet_measure(hull, f);
  return sum / n;
}

// Upper bound on the geominimal surface area from the Santalo-positioned
// candidate Q = K - z:  kappa_n^{-1/n} * n * V1(K, Q) * V(Q^polar)^{1/n},
// where V(Q^polar) = V(K^z - z).  Tight for ellipsoids, where it equals
// kappa_n^{1/n} * n * V(K)^{(n-1)/n}.
inline double geominimal_upper(const Body& K) {
  int n = K.dim();
  SantaloInfo s = santalo(K);
  double v1;
  if (K.is_polygon() || K.is_polytope())
    v1 = mixed_volume_v1(K, K.translated(Vec(-s.z)));
  else
    v1 = K.volume();  // V1(K, K - z) = V(K)
  return std::pow(unit_ball_volume(n), -1.0 / n) * n * v1 *
         std::pow(s.polar_vol, 1.0 / n);
}

// Certified residual of the bipolar identity (K^z)^z = K: an upper bound
// on the Hausdorff distance between the two bodies.
inline double bipolar_residual(const Body& K, const Vec& z) {
  Body B = polar(polar(K, z), z);
  auto matched = [](const std::vector<Vec>& V, const std::vector<Vec>& W) {
    double worst = 0.0;
    for (const auto& v : V) {
      double best = 1e300;
      for (const auto& w : W) best = std::min(best, (v - w).norm());
      worst = std::max(worst, best);
    }
    return worst;
  };
  if (K.is_polygon() || K.is_polytope()) {
    const std::vector<Vec>& V =
        K.is_polygon() ? K.as_polygon().vertices() : K.as_polytope().vertices();
    const std::vector<Vec>& W = B.is_polygon()
                                    ? B.as_polygon().vertices()
                                    : B.as_polytope().vertices();
    // Convex hulls of matched vertex sets differ by at most the worst
    // nearest-vertex distance, in both directions.
    return std::max(matched(V, W), matched(W, V));
  }
  const Profile& p = K.as_revolution().profile();
  const Profile& q = B.as_revolution().profile();
  double res = std::max(std::abs(p.tmin() - q.tmin()),
                        std::abs(p.tmax() - q.tmax()));
  auto sweep = [&](const Profile& a, const Profile& b) {
    double worst = 0.0;
    for (double t : a.knots()) {
      double tc = std::clamp(t, b.tmin(), b.tmax());
      worst = std::max(worst, std::abs(a(t) - b(tc)));
    }
    return worst;
  };
  return std::max({res, sweep(p, q), sweep(q, p)});
}

}  // namespace santalo
