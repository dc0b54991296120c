#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "santalo/geometry.hpp"
#include "santalo/hull.hpp"
#include "santalo/linprog.hpp"
#include "santalo/rng.hpp"

namespace santalo {

namespace polydetail {
inline double cross2(const Vec& a, const Vec& b) {
  return a[0] * b[1] - a[1] * b[0];
}
}  // namespace polydetail

// Strictly convex polygon with counterclockwise vertices.  All operations
// are exact up to floating point; there is no sampled geometry here.
class Polygon {
public:
  static Polygon from_vertices(std::vector<Vec> verts) {
    Polygon p(std::move(verts));
    p.validate();
    return p;
  }

  // Hull of arbitrary points, ordered counterclockwise, collinear points
  // pruned.  Throws if the hull is degenerate.
  static Polygon hull_of(const std::vector<Vec>& pts) {
    require(pts.size() >= 3, ErrorKind::invalid_body,
            "Polygon: need at least 3 points");
    // Andrew's monotone chain.
    std::vector<Vec> s = pts;
    std::sort(s.begin(), s.end(), [](const Vec& a, const Vec& b) {
      return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
    });
    s.erase(std::unique(s.begin(), s.end(),
                        [&](const Vec& a, const Vec& b) {
                          return (a - b).lpNorm<Eigen::Infinity>() <= 0.0;
                        }),
            s.end());
    double scale = 1.0;
    for (const auto& p : s) scale = std::max(scale, p.lpNorm<Eigen::Infinity>());
    const double tol = 1e-12 * scale * scale;
    auto build = [&](std::vector<Vec>& chain, const Vec& p) {
      while (chain.size() >= 2 &&
             polydetail::cross2(chain.back() - chain[chain.size() - 2],
                                p - chain.back()) <= tol)
        chain.pop_back();
      chain.push_back(p);
    };
    std::vector<Vec> lower, upper;
    for (const auto& p : s) build(lower, p);
    for (auto it = s.rbegin(); it != s.rend(); ++it) build(upper, *it);
    lower.pop_back();
    upper.pop_back();
    lower.insert(lower.end(), upper.begin(), upper.end());
    return from_vertices(std::move(lower));
  }

  static Polygon regular(int k, double radius, double phase = 0.0) {
    std::vector<Vec> v;
    for (int i = 0; i < k; ++i) {
      double a = phase + 2.0 * std::numbers::pi * i / k;
      v.push_back(make_vec({radius * std::cos(a), radius * std::sin(a)}));
    }
    return from_vertices(std::move(v));
  }

  // Intersection of halfplanes <a_i, x> <= b_i, clipped from a large box.
  static Polygon from_halfplanes(const Mat& A, const Vec& b,
                                 double box = 1e6) {
    std::vector<Vec> cur = {make_vec({-box, -box}), make_vec({box, -box}),
                            make_vec({box, box}), make_vec({-box, box})};
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      cur = clip_chain(cur, Vec(A.row(i).transpose()), b[i]);
      require(cur.size() >= 3, ErrorKind::invalid_body,
              "Polygon: halfplane intersection is empty or degenerate");
    }
    Polygon rough = hull_of(cur);
    // Clipping interpolates across box-length segments, which costs about
    // ten digits; snap each vertex onto its two defining input lines.
    std::vector<Vec> snapped;
    snapped.reserve(static_cast<size_t>(rough.size()));
    for (const auto& v : rough.vertices()) {
      double vs = std::max(1.0, v.lpNorm<Eigen::Infinity>());
      Eigen::Index i0 = -1, i1 = -1;
      double best = 0.0;
      for (Eigen::Index i = 0; i < A.rows(); ++i) {
        if (std::abs(A.row(i).dot(v) - b[i]) > 1e-6 * vs * A.row(i).norm())
          continue;
        for (Eigen::Index j = i + 1; j < A.rows(); ++j) {
          if (std::abs(A.row(j).dot(v) - b[j]) > 1e-6 * vs * A.row(j).norm())
            continue;
          double cr = std::abs(A(i, 0) * A(j, 1) - A(i, 1) * A(j, 0));
          if (cr > best) {
            best = cr;
            i0 = i;
            i1 = j;
          }
        }
      }
      if (i0 >= 0 && best > 1e-9 * A.row(i0).norm() * A.row(i1).norm()) {
        Mat M(2, 2);
        M.row(0) = A.row(i0);
        M.row(1) = A.row(i1);
        Vec rhs = make_vec({b[i0], b[i1]});
        Vec w = M.fullPivLu().solve(rhs);
        snapped.push_back((w - v).lpNorm<Eigen::Infinity>() <= 1e-5 * vs ? w
                                                                         : v);
      } else {
        snapped.push_back(v);  // box vertex or nearly parallel active pair
      }
    }
    return hull_of(snapped);
  }

  int size() const { return static_cast<int>(v_.size()); }
  const Vec& vertex(int i) const {
    return v_[static_cast<size_t>(((i % size()) + size()) % size())];
  }
  const std::vector<Vec>& vertices() const { return v_; }

  double area() const {
    double a = 0.0;
    for (int i = 0; i < size(); ++i)
      a += polydetail::cross2(vertex(i), vertex(i + 1));
    return 0.5 * a;
  }

  double perimeter() const {
    double p = 0.0;
    for (int i = 0; i < size(); ++i) p += (vertex(i + 1) - vertex(i)).norm();
    return p;
  }

  Vec centroid() const {
    Vec c = Vec::Zero(2);
    double a = 0.0;
    for (int i = 0; i < size(); ++i) {
      double w = polydetail::cross2(vertex(i), vertex(i + 1));
      a += w;
      c += w * (vertex(i) + vertex(i + 1));
    }
    return c / (3.0 * a);
  }

  // Integral of x x^T over the polygon (fan decomposition, exact).
  Mat second_moment() const {
    Mat m = Mat::Zero(2, 2);
    const Vec& p0 = v_[0];
    for (int i = 1; i + 1 < size(); ++i) {
      const Vec& p1 = v_[static_cast<size_t>(i)];
      const Vec& p2 = v_[static_cast<size_t>(i + 1)];
      double w = 0.5 * polydetail::cross2(p1 - p0, p2 - p0);
      Vec sum = p0 + p1 + p2;
      Mat sq = p0 * p0.transpose() + p1 * p1.transpose() +
               p2 * p2.transpose();
      m += w / 12.0 * (sq + sum * sum.transpose());
    }
    return m;
  }

  double support(const Vec& u) const {
    double h = -1e300;
    for (const auto& p : v_) h = std::max(h, u.dot(p));
    return h;
  }

  double diameter() const {
    double d = 0.0;
    for (int i = 0; i < size(); ++i)
      for (int j = i + 1; j < size(); ++j)
        d = std::max(d, (v_[static_cast<size_t>(i)] - v_[static_cast<size_t>(j)]).norm());
    return d;
  }

  // Diameter endpoints (first maximizing pair in index order).
  std::pair<Vec, Vec> diameter_pair() const {
    double best = -1.0;
    std::pair<Vec, Vec> out{v_[0], v_[0]};
    for (int i = 0; i < size(); ++i)
      for (int j = i + 1; j < size(); ++j) {
        double d = (v_[static_cast<size_t>(i)] - v_[static_cast<size_t>(j)]).norm();
        if (d > best) {
          best = d;
          out = {v_[static_cast<size_t>(i)], v_[static_cast<size_t>(j)]};
        }
      }
    return out;
  }

  // Edge i runs vertex(i) -> vertex(i+1); returns unit outward normal and
  // offset of the supporting line.
  std::pair<Vec, double> edge_halfplane(int i) const {
    Vec e = vertex(i + 1) - vertex(i);
    Vec n = make_vec({e[1], -e[0]});
    n /= n.norm();
    return {n, n.dot(vertex(i))};
  }

  // H-representation: rows of A are unit outward edge normals.
  void halfplanes(Mat& A, Vec& b) const {
    A.resize(size(), 2);
    b.resize(size());
    for (int i = 0; i < size(); ++i) {
      auto [n, off] = edge_halfplane(i);
      A.row(i) = n.transpose();
      b[i] = off;
    }
  }

  bool contains(const Vec& x, double tol = 1e-9) const {
    for (int i = 0; i < size(); ++i) {
      auto [n, off] = edge_halfplane(i);
      if (n.dot(x) > off + tol) return false;
    }
    return true;
  }

  // Chord {x : <u, x> = t}; empty when the line misses the polygon.
  std::optional<std::pair<Vec, Vec>> chord(const Vec& u, double t) const {
    std::vector<Vec> hits;
    for (int i = 0; i < size(); ++i) {
      const Vec& a = vertex(i);
      const Vec& b = vertex(i + 1);
      double fa = u.dot(a) - t, fb = u.dot(b) - t;
      if ((fa < 0 && fb < 0) || (fa > 0 && fb > 0)) continue;
      if (fa == fb) {  // edge lies on the line
        hits.push_back(a);
        hits.push_back(b);
        continue;
      }
      double s = fa / (fa - fb);
      if (s < 0.0 || s > 1.0) continue;
      hits.push_back(Vec(a + s * (b - a)));
    }
    if (hits.size() < 2) return std::nullopt;
    // Extreme pair along the line direction.
    Vec d = make_vec({-u[1], u[0]});
    size_t lo = 0, hi = 0;
    for (size_t i = 1; i < hits.size(); ++i) {
      if (d.dot(hits[i]) < d.dot(hits[lo])) lo = i;
      if (d.dot(hits[i]) > d.dot(hits[hi])) hi = i;
    }
    return std::make_pair(hits[lo], hits[hi]);
  }

  Polygon translated(const Vec& t) const {
    std::vector<Vec> nv = v_;
    for (auto& p : nv) p += t;
    return Polygon(std::move(nv));
  }

  Polygon scaled(double s) const {
    std::vector<Vec> nv = v_;
    for (auto& p : nv) p *= s;
    if (s < 0) std::reverse(nv.begin(), nv.end());
    return Polygon(std::move(nv));
  }

  Polygon transformed(const AffineMap& T) const {
    std::vector<Vec> nv;
    nv.reserve(v_.size());
    for (const auto& p : v_) nv.push_back(T.apply(p));
    if (T.det() < 0) std::reverse(nv.begin(), nv.end());
    return Polygon(std::move(nv));
  }

  Polygon reflected(const Vec& point, const Vec& dir) const {
    // Reflection across the line through `point` with direction `dir`.
    Vec d = dir / dir.norm();
    std::vector<Vec> nv;
    nv.reserve(v_.size());
    for (const auto& p : v_) {
      Vec rel = p - point;
      Vec r = 2.0 * d.dot(rel) * d - rel;
      nv.push_back(Vec(point + r));
    }
    std::reverse(nv.begin(), nv.end());
    return Polygon(std::move(nv));
  }

  Polygon negated() const {
    std::vector<Vec> nv;
    nv.reserve(v_.size());
    for (const auto& p : v_) nv.push_back(Vec(-p));
    std::reverse(nv.begin(), nv.end());
    return Polygon(std::move(nv));
  }

  // Exact Steiner symmetrization about the line through `point` along
  // `dir`: every chord perpendicular to the line is recentered onto it.
  Polygon steiner(const Vec& point, const Vec& dir) const {
    Vec d = dir / dir.norm();
    Vec n = make_vec({-d[1], d[0]});
    // Breakpoints: projections of vertices onto the axis.
    std::vector<double> xs;
    xs.reserve(v_.size());
    for (const auto& p : v_) xs.push_back(d.dot(p - point));
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<Vec> top, bottom;
    for (double x : xs) {
      // Chord along n at axis coordinate x.
      Vec dirline = n;
      double lo = 1e300, hi = -1e300;
      for (int i = 0; i < size(); ++i) {
        const Vec& a = vertex(i);
        const Vec& b = vertex(i + 1);
        double fa = d.dot(a - point) - x, fb = d.dot(b - point) - x;
        if ((fa < 0 && fb < 0) || (fa > 0 && fb > 0)) continue;
        double s = (fa == fb) ? 0.0 : fa / (fa - fb);
        Vec q = (fa == fb) ? a : Vec(a + s * (b - a));
        double eta = dirline.dot(q - point);
        lo = std::min(lo, eta);
        hi = std::max(hi, eta);
        if (fa == fb) {
          double etb = dirline.dot(b - point);
          lo = std::min(lo, etb);
          hi = std::max(hi, etb);
        }
      }
      if (hi < lo) continue;
      double half = 0.5 * (hi - lo);
      top.push_back(Vec(point + x * d + half * n));
      bottom.push_back(Vec(point + x * d - half * n));
    }
    std::vector<Vec> ring;
    ring.reserve(top.size() + bottom.size());
    for (const auto& p : bottom) ring.push_back(p);
    for (auto it = top.rbegin(); it != top.rend(); ++it) ring.push_back(*it);
    return hull_of(ring);
  }

  // Minkowski sum by CCW edge merging (exact).
  // Every vertex of P + Q is a sum of a vertex of P and a vertex of Q, so
  // the hull of the pairwise sums is exact.  Quadratic in the vertex
  // counts, which stay small everywhere this is used.
  static Polygon minkowski_sum(const Polygon& P, const Polygon& Q) {
    std::vector<Vec> sums;
    sums.reserve(static_cast<size_t>(P.size()) * static_cast<size_t>(Q.size()));
    for (const Vec& a : P.vertices())
      for (const Vec& c : Q.vertices()) sums.push_back(Vec(a + c));
    return hull_of(sums);
  }

  // Polar about an interior point z (exact: edges map to vertices).
  Polygon polar(const Vec& z) const {
    std::vector<Vec> nv;
    nv.reserve(v_.size());
    for (int i = 0; i < size(); ++i) {
      auto [n, off] = edge_halfplane(i);
      double den = off - n.dot(z);
      require(den > 1e-12, ErrorKind::domain_error,
              "Polygon::polar: center is not interior");
      nv.push_back(Vec(z + n / den));
    }
    return Polygon(std::move(nv));
  }

  bool centrally_symmetric(const Vec& center, double tol) const {
    for (const auto& p : v_) {
      Vec q = 2.0 * center - p;
      bool found = false;
      for (const auto& w : v_)
        if ((w - q).lpNorm<Eigen::Infinity>() <= tol) {
          found = true;
          break;
        }
      if (!found) return false;
    }
    return true;
  }

private:
  explicit Polygon(std::vector<Vec> verts) : v_(std::move(verts)) {}

  static std::vector<Vec> clip_chain(const std::vector<Vec>& poly,
                                     const Vec& a, double b) {
    std::vector<Vec> out;
    int n = static_cast<int>(poly.size());
    for (int i = 0; i < n; ++i) {
      const Vec& p = poly[static_cast<size_t>(i)];
      const Vec& q = poly[static_cast<size_t>((i + 1) % n)];
      double fp = a.dot(p) - b, fq = a.dot(q) - b;
      if (fp <= 0) out.push_back(p);
      if ((fp < 0 && fq > 0) || (fp > 0 && fq < 0))
        out.push_back(Vec(p + fp / (fp - fq) * (q - p)));
    }
    return out;
  }

  void validate() const {
    require(v_.size() >= 3, ErrorKind::invalid_body,
            "Polygon: need at least 3 vertices");
    double scale = 1.0;
    for (const auto& p : v_) {
      require(p.size() == 2, ErrorKind::invalid_body, "Polygon: 2-D only");
      scale = std::max(scale, p.lpNorm<Eigen::Infinity>());
    }
    const double tol = 1e-12 * scale * scale;
    for (int i = 0; i < size(); ++i) {
      double cr = polydetail::cross2(vertex(i + 1) - vertex(i),
                                     vertex(i + 2) - vertex(i + 1));
      require(cr > tol, ErrorKind::invalid_body,
              "Polygon: vertices must be strictly convex counterclockwise");
    }
  }

  std::vector<Vec> v_;
};

// Minimal enclosing circle (Welzl's algorithm, deterministic shuffle).
struct Circle {
  Vec center;
  double radius;
};

namespace polydetail {

inline Circle circle_from(const Vec& a) { return {a, 0.0}; }
inline Circle circle_from(const Vec& a, const Vec& b) {
  return {Vec(0.5 * (a + b)), 0.5 * (a - b).norm()};
}
inline std::optional<Circle> circle_from(const Vec& a, const Vec& b,
                                         const Vec& c) {
  Vec ab = b - a, ac = c - a;
  double d = 2.0 * cross2(ab, ac);
  if (std::abs(d) < 1e-14) return std::nullopt;
  double ab2 = ab.squaredNorm(), ac2 = ac.squaredNorm();
  Vec center = a + make_vec({ac[1] * ab2 - ab[1] * ac2,
                             ab[0] * ac2 - ac[0] * ab2}) /
                       d;
  return Circle{center, (center - a).norm()};
}
inline bool in_circle(const Circle& c, const Vec& p, double tol) {
  return (p - c.center).norm() <= c.radius + tol;
}

}  // namespace polydetail

inline Circle min_enclosing_circle(std::vector<Vec> pts) {
  Rng rng(0xc19c1eULL);
  rng.shuffle(pts);
  const double tol = 1e-12;
  Circle c{Vec::Zero(2), -1.0};
  for (size_t i = 0; i < pts.size(); ++i) {
    if (c.radius >= 0 && polydetail::in_circle(c, pts[i], tol)) continue;
    c = polydetail::circle_from(pts[i]);
    for (size_t j = 0; j < i; ++j) {
      if (polydetail::in_circle(c, pts[j], tol)) continue;
      c = polydetail::circle_from(pts[i], pts[j]);
      for (size_t k = 0; k < j; ++k) {
        if (polydetail::in_circle(c, pts[k], tol)) continue;
        auto c3 = polydetail::circle_from(pts[i], pts[j], pts[k]);
        if (c3) c = *c3;
      }
    }
  }
  return c;
}

// Inradius and incenter via the Chebyshev-center linear program.
inline std::pair<double, Vec> polygon_inball(const Polygon& P) {
  Mat A;
  Vec b;
  P.halfplanes(A, b);
  auto rep = feasibility_margin(A, b);
  require(rep.feasible, ErrorKind::invalid_body,
          "polygon_inball: empty polygon");
  return {rep.margin, rep.point};
}

}  // namespace santalo
