#pragma once

#include <optional>
#include <vector>

#include "santalo/geometry.hpp"
#include "santalo/hull.hpp"
#include "santalo/linprog.hpp"
#include "santalo/polygon.hpp"

namespace santalo {

// Bounded convex polytope with nonempty interior, carrying both an
// irredundant halfspace description (unit outward normals) and the list of
// extreme points.  Both representations are established at construction;
// all derived quantities (volume, centroid, moments) are exact.
class Polytope {
public:
  static Polytope from_vertices(int n, const std::vector<Vec>& pts) {
    require(n >= 1, ErrorKind::invalid_body, "Polytope: dimension >= 1");
    for (const auto& p : pts)
      require(p.size() == n, ErrorKind::invalid_body,
              "Polytope: vertex dimension mismatch");
    Polytope P;
    P.n_ = n;
    P.build_from_points(pts);
    return P;
  }

  static Polytope from_halfspaces(int n, Mat A, Vec b) {
    require(n >= 1, ErrorKind::invalid_body, "Polytope: dimension >= 1");
    require(A.cols() == n && A.rows() == b.size(), ErrorKind::invalid_body,
            "Polytope: halfspace shape mismatch");
    // Normalize rows; a zero row is either vacuous or infeasible.
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      double nn = A.row(i).norm();
      if (nn < 1e-14) {
        require(b[i] >= -1e-14, ErrorKind::invalid_body,
                "Polytope: infeasible zero constraint");
        continue;
      }
      A.row(i) /= nn;
      b[i] /= nn;
      keep.push_back(i);
    }
    Mat An(static_cast<Eigen::Index>(keep.size()), n);
    Vec bn(static_cast<Eigen::Index>(keep.size()));
    for (size_t k = 0; k < keep.size(); ++k) {
      An.row(static_cast<Eigen::Index>(k)) = A.row(keep[k]);
      bn[static_cast<Eigen::Index>(k)] = b[keep[k]];
    }
    auto feas = feasibility_margin(An, bn);
    require(feas.feasible && feas.margin > 1e-11 * (1.0 + bn.cwiseAbs().maxCoeff()),
            ErrorKind::invalid_body,
            "Polytope: halfspace intersection empty or lower-dimensional");
    // Boundedness: support in each coordinate direction must stay far from
    // the solver's bounding box.
    for (int k = 0; k < n; ++k)
      for (double sgn : {1.0, -1.0}) {
        Vec c = Vec::Zero(n);
        c[k] = sgn;
        auto sol = solve_lp(An, bn, c);
        require(sol.status == LpStatus::optimal && std::abs(sol.value) < 1e7,
                ErrorKind::invalid_body, "Polytope: unbounded halfspaces");
      }
    // Vertex enumeration is combinatorial in the row count, so certify and
    // drop redundant rows first: row i is redundant when maximizing a_i over
    // the remaining rows cannot exceed b_i.
    if (n >= 3 && An.rows() > 40) {
      double bscale = 1.0 + bn.cwiseAbs().maxCoeff();
      std::vector<Eigen::Index> live(static_cast<size_t>(An.rows()));
      for (size_t i = 0; i < live.size(); ++i) live[i] = static_cast<Eigen::Index>(i);
      for (size_t i = 0; i < live.size();) {
        Mat Ao(static_cast<Eigen::Index>(live.size()) - 1, n);
        Vec bo(static_cast<Eigen::Index>(live.size()) - 1);
        Eigen::Index w = 0;
        for (size_t j = 0; j < live.size(); ++j) {
          if (j == i) continue;
          Ao.row(w) = An.row(live[j]);
          bo[w] = bn[live[j]];
          ++w;
        }
        auto sol = solve_lp(Ao, bo, An.row(live[i]).transpose());
        if (sol.status == LpStatus::optimal && sol.value <= bn[live[i]] + 1e-9 * bscale)
          live.erase(live.begin() + static_cast<std::ptrdiff_t>(i));
        else
          ++i;
      }
      Mat Ap(static_cast<Eigen::Index>(live.size()), n);
      Vec bp(static_cast<Eigen::Index>(live.size()));
      for (size_t k = 0; k < live.size(); ++k) {
        Ap.row(static_cast<Eigen::Index>(k)) = An.row(live[k]);
        bp[static_cast<Eigen::Index>(k)] = bn[live[k]];
      }
      An = std::move(Ap);
      bn = std::move(bp);
    }
    std::vector<Vec> verts;
    if (n == 1) {
      double lo = -1e300, hi = 1e300;
      for (Eigen::Index i = 0; i < An.rows(); ++i) {
        if (An(i, 0) > 0) hi = std::min(hi, bn[i] / An(i, 0));
        else lo = std::max(lo, bn[i] / An(i, 0));
      }
      verts = {make_vec({lo}), make_vec({hi})};
    } else if (n == 2) {
      Polygon poly = Polygon::from_halfplanes(An, bn);
      verts = poly.vertices();
    } else {
      verts = enumerate_vertices(An, bn);
    }
    Polytope P;
    P.n_ = n;
    P.build_from_points(verts);
    return P;
  }

  static Polytope from_polygon(const Polygon& poly) {
    return from_vertices(2, poly.vertices());
  }

  static Polytope cube(int n, double half_side = 1.0) {
    Mat A(2 * n, n);
    Vec b(2 * n);
    A.setZero();
    for (int k = 0; k < n; ++k) {
      A(2 * k, k) = 1.0;
      A(2 * k + 1, k) = -1.0;
      b[2 * k] = b[2 * k + 1] = half_side;
    }
    return from_halfspaces(n, A, b);
  }

  static Polytope cross_polytope(int n, double radius = 1.0) {
    std::vector<Vec> v;
    for (int k = 0; k < n; ++k) {
      Vec e = Vec::Zero(n);
      e[k] = radius;
      v.push_back(e);
      v.push_back(Vec(-e));
    }
    return from_vertices(n, v);
  }

  static Polytope simplex(int n, double scale = 1.0) {
    std::vector<Vec> v = {Vec(Vec::Zero(n))};
    for (int k = 0; k < n; ++k) {
      Vec e = Vec::Zero(n);
      e[k] = scale;
      v.push_back(e);
    }
    return from_vertices(n, v);
  }

  int dim() const { return n_; }
  const std::vector<Vec>& vertices() const { return verts_; }
  const Mat& normals() const { return A_; }
  const Vec& offsets() const { return b_; }
  int facet_count() const { return static_cast<int>(A_.rows()); }

  double volume() const { return mass_.volume; }
  Vec centroid() const { return mass_.centroid; }
  Mat second_moment() const { return mass_.second_moment; }
  Mat covariance() const { return mass_.covariance(); }

  double support(const Vec& u) const {
    double h = -1e300;
    for (const auto& v : verts_) h = std::max(h, u.dot(v));
    return h;
  }

  double diameter() const {
    double d = 0.0;
    for (size_t i = 0; i < verts_.size(); ++i)
      for (size_t j = i + 1; j < verts_.size(); ++j)
        d = std::max(d, (verts_[i] - verts_[j]).norm());
    return d;
  }

  bool contains(const Vec& x, double tol = 1e-9) const {
    for (Eigen::Index i = 0; i < A_.rows(); ++i)
      if (A_.row(i).dot(x) > b_[i] + tol) return false;
    return true;
  }

  // Minimal lambda >= 0 with center + (x - center)/lambda in the body;
  // the center must be interior.
  double gauge(const Vec& x, const Vec& center) const {
    double lam = 0.0;
    for (Eigen::Index i = 0; i < A_.rows(); ++i) {
      double den = b_[i] - A_.row(i).dot(center);
      require(den > 1e-13, ErrorKind::domain_error,
              "Polytope::gauge: center not interior");
      lam = std::max(lam, A_.row(i).dot(x - center) / den);
    }
    return lam;
  }

  // Chebyshev center and inradius.
  std::pair<double, Vec> inball() const {
    auto rep = feasibility_margin(A_, b_);
    return {rep.margin, rep.point};
  }

  // Slice {x : <u, x> = t}, expressed in the deterministic orthonormal
  // frame W of u's complement with origin t*u: point = t*u + W*y.
  std::optional<Polytope> section(const Direction& u, double t) const {
    require(u.dim() == n_ && n_ >= 2, ErrorKind::domain_error,
            "Polytope::section: bad direction");
    Mat W = orthonormal_complement(u);
    Mat A2(A_.rows(), n_ - 1);
    Vec b2(A_.rows());
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < A_.rows(); ++i) {
      Eigen::RowVectorXd row = A_.row(i) * W;
      double off = b_[i] - t * A_.row(i).dot(u.vec());
      if (row.norm() < 1e-12) {
        if (off < -1e-12) return std::nullopt;  // plane misses the body
        continue;
      }
      A2.row(static_cast<Eigen::Index>(keep.size())) = row;
      b2[static_cast<Eigen::Index>(keep.size())] = off;
      keep.push_back(i);
    }
    Mat A3 = A2.topRows(static_cast<Eigen::Index>(keep.size()));
    Vec b3 = b2.head(static_cast<Eigen::Index>(keep.size()));
    try {
      return from_halfspaces(n_ - 1, A3, b3);
    } catch (const Error&) {
      return std::nullopt;  // empty or lower-dimensional slice
    }
  }

  Polytope translated(const Vec& v) const {
    std::vector<Vec> nv = verts_;
    for (auto& p : nv) p += v;
    return from_vertices(n_, nv);
  }

  Polytope transformed(const AffineMap& T) const {
    std::vector<Vec> nv;
    nv.reserve(verts_.size());
    for (const auto& p : verts_) nv.push_back(T.apply(p));
    return from_vertices(n_, nv);
  }

  Polytope reflected(const Hyperplane& H) const {
    std::vector<Vec> nv;
    nv.reserve(verts_.size());
    for (const auto& p : verts_) nv.push_back(H.reflect(p));
    return from_vertices(n_, nv);
  }

  Polytope negated() const {
    std::vector<Vec> nv;
    nv.reserve(verts_.size());
    for (const auto& p : verts_) nv.push_back(Vec(-p));
    return from_vertices(n_, nv);
  }

  Polygon to_polygon() const {
    require(n_ == 2, ErrorKind::representation,
            "Polytope::to_polygon: planar bodies only");
    return Polygon::hull_of(verts_);
  }

  const Hull& hull() const { return hull_; }

private:
  Polytope() = default;

  void build_from_points(const std::vector<Vec>& pts) {
    if (n_ == 1) {
      require(!pts.empty(), ErrorKind::invalid_body, "Polytope: no points");
      double lo = 1e300, hi = -1e300;
      for (const auto& p : pts) {
        lo = std::min(lo, p[0]);
        hi = std::max(hi, p[0]);
      }
      require(hi - lo > 1e-12, ErrorKind::invalid_body,
              "Polytope: degenerate segment");
      verts_ = {make_vec({lo}), make_vec({hi})};
      A_.resize(2, 1);
      b_.resize(2);
      A_ << 1.0, -1.0;
      b_ << hi, -lo;
      mass_.volume = hi - lo;
      mass_.centroid = make_vec({0.5 * (lo + hi)});
      mass_.second_moment = Mat::Constant(1, 1, (hi * hi * hi - lo * lo * lo) / 3.0);
      return;
    }
    hull_ = convex_hull(pts);
    verts_.clear();
    for (int idx : hull_.extreme) verts_.push_back(hull_.points[static_cast<size_t>(idx)]);
    A_.resize(static_cast<Eigen::Index>(hull_.facets.size()), n_);
    b_.resize(static_cast<Eigen::Index>(hull_.facets.size()));
    for (size_t f = 0; f < hull_.facets.size(); ++f) {
      A_.row(static_cast<Eigen::Index>(f)) = hull_.facets[f].normal.transpose();
      b_[static_cast<Eigen::Index>(f)] = hull_.facets[f].offset;
    }
    mass_ = mass_properties(triangulate(verts_));
    require(mass_.volume > 1e-14, ErrorKind::invalid_body,
            "Polytope: zero volume");
  }

  // Brute-force vertex enumeration: every choice of n facets whose normals
  // are independent meets in a candidate point, kept when feasible.
  static std::vector<Vec> enumerate_vertices(const Mat& A, const Vec& b) {
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    std::vector<Vec> out;
    std::vector<int> idx(static_cast<size_t>(n));
    double bscale = 1.0 + b.cwiseAbs().maxCoeff();
    auto feasible = [&](const Vec& x) {
      double tol = 1e-8 * (1.0 + x.lpNorm<Eigen::Infinity>());
      for (Eigen::Index i = 0; i < A.rows(); ++i)
        if (A.row(i).dot(x) > b[i] + tol) return false;
      return true;
    };
    std::function<void(int, int)> rec = [&](int start, int k) {
      if (k == n) {
        Mat M(n, n);
        Vec rhs(n);
        for (int j = 0; j < n; ++j) {
          M.row(j) = A.row(idx[static_cast<size_t>(j)]);
          rhs[j] = b[idx[static_cast<size_t>(j)]];
        }
        Eigen::FullPivLU<Mat> lu(M);
        lu.setThreshold(1e-9);
        if (lu.rank() < n) return;
        Vec x = lu.solve(rhs);
        if (x.lpNorm<Eigen::Infinity>() > 1e9 * bscale) return;
        if (feasible(x)) out.push_back(x);
        return;
      }
      for (int i = start; i <= m - (n - k); ++i) {
        idx[static_cast<size_t>(k)] = i;
        rec(i + 1, k + 1);
      }
    };
    rec(0, 0);
    require(out.size() >= static_cast<size_t>(n + 1), ErrorKind::invalid_body,
            "Polytope: halfspaces have no full-dimensional intersection");
    return out;
  }

  int n_ = 0;
  Mat A_;
  Vec b_;
  std::vector<Vec> verts_;
  Hull hull_;
  MassProperties mass_;
};

}  // namespace santalo
