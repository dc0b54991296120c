#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "santalo/geometry.hpp"
#include "santalo/linprog.hpp"

namespace santalo {

// Convex hulls of small point sets in R^d, d <= 4.  Facets are enumerated by
// brute force over d-subsets of the extreme points; at desk scale (a few
// dozen extreme points) this is fast and has no incremental-update corner
// cases.

struct HullFacet {
  Vec normal;               // unit outward normal
  double offset;            // <normal, x> = offset on the facet
  std::vector<int> verts;   // indices into the hull's point list
};

struct Hull {
  int dim = 0;
  std::vector<Vec> points;        // deduplicated input points
  std::vector<int> extreme;       // indices of extreme points
  std::vector<HullFacet> facets;  // facets of the hull (dim >= 2)
};

namespace hulldetail {

// Normal of the hyperplane spanned by rows of M ((d-1) x d) via the
// generalized cross product (cofactor expansion).
inline Vec generalized_cross(const Mat& M) {
  const int d = static_cast<int>(M.cols());
  Vec nrm(d);
  for (int i = 0; i < d; ++i) {
    Mat minor(d - 1, d - 1);
    for (int c = 0, cc = 0; c < d; ++c) {
      if (c == i) continue;
      minor.col(cc++) = M.col(c);
    }
    double det = (d - 1 == 1) ? minor(0, 0) : minor.determinant();
    nrm[i] = ((i % 2) == 0 ? 1.0 : -1.0) * det;
  }
  return nrm;
}

inline double point_scale(const std::vector<Vec>& pts) {
  double s = 1.0;
  for (const auto& p : pts) s = std::max(s, p.lpNorm<Eigen::Infinity>());
  return s;
}

}  // namespace hulldetail

// True when p is extreme in pts (strictly outside the hull of the others).
inline bool is_extreme_point(const std::vector<Vec>& pts, size_t idx,
                             double tol) {
  const int d = static_cast<int>(pts[idx].size());
  // Find u with <u, p - q> >= margin for all q != p, |u| bounded by 1.
  std::vector<Vec> rows;
  for (size_t j = 0; j < pts.size(); ++j) {
    if (j == idx) continue;
    rows.push_back(Vec(pts[j] - pts[idx]));
  }
  Mat A(static_cast<Eigen::Index>(rows.size()), d);
  Vec b = Vec::Zero(static_cast<Eigen::Index>(rows.size()));
  for (size_t i = 0; i < rows.size(); ++i) A.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  auto rep = feasibility_margin(A, b, 1.0);
  return rep.feasible && rep.margin > tol;
}

// Convex hull of points in R^d (1 <= d <= 4).
inline Hull convex_hull(const std::vector<Vec>& input) {
  require(!input.empty(), ErrorKind::domain_error, "convex_hull: empty input");
  const int d = static_cast<int>(input[0].size());
  require(d >= 1 && d <= 4, ErrorKind::domain_error,
          "convex_hull: dimension must be in [1, 4]");
  Hull hull;
  hull.dim = d;

  const double scale = hulldetail::point_scale(input);
  const double tol = 1e-9 * scale;

  // Deduplicate coincident points.
  for (const auto& p : input) {
    bool dup = false;
    for (const auto& q : hull.points)
      if ((p - q).lpNorm<Eigen::Infinity>() <= tol) {
        dup = true;
        break;
      }
    if (!dup) hull.points.push_back(p);
  }
  const auto& pts = hull.points;
  const int N = static_cast<int>(pts.size());

  if (d == 1) {
    int lo = 0, hi = 0;
    for (int i = 1; i < N; ++i) {
      if (pts[i][0] < pts[lo][0]) lo = i;
      if (pts[i][0] > pts[hi][0]) hi = i;
    }
    hull.extreme = (lo == hi) ? std::vector<int>{lo} : std::vector<int>{lo, hi};
    return hull;
  }

  // Extreme-point filter first; facet enumeration runs on extremes only.
  for (int i = 0; i < N; ++i)
    if (N == 1 || is_extreme_point(pts, static_cast<size_t>(i), 1e-9))
      hull.extreme.push_back(i);
  require(static_cast<int>(hull.extreme.size()) >= d + 1,
          ErrorKind::invalid_body,
          "convex_hull: point set is not full-dimensional");

  const auto& ext = hull.extreme;
  const int M = static_cast<int>(ext.size());

  // Enumerate candidate facet planes from d-subsets of extreme points.
  std::map<std::vector<int>, HullFacet> facets;  // key: sorted vertex ids
  std::vector<int> comb(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) comb[static_cast<size_t>(i)] = i;
  while (true) {
    Mat Mrows(d - 1, d);
    for (int i = 1; i < d; ++i)
      Mrows.row(i - 1) =
          (pts[static_cast<size_t>(ext[static_cast<size_t>(comb[static_cast<size_t>(i)])])] -
           pts[static_cast<size_t>(ext[static_cast<size_t>(comb[0])])])
              .transpose();
    Vec nrm = hulldetail::generalized_cross(Mrows);
    double nn = nrm.norm();
    if (nn > 1e-12 * std::pow(scale, d - 1)) {
      nrm /= nn;
      double off = nrm.dot(pts[static_cast<size_t>(ext[static_cast<size_t>(comb[0])])]);
      // Orient outward; a facet has every point on one side.
      double mx = -1e300, mn = 1e300;
      for (int j = 0; j < M; ++j) {
        double v = nrm.dot(pts[static_cast<size_t>(ext[static_cast<size_t>(j)])]);
        mx = std::max(mx, v);
        mn = std::min(mn, v);
      }
      bool upper = mx <= off + tol;
      bool lower = mn >= off - tol;
      if (upper || lower) {
        if (lower && !upper) {
          nrm = -nrm;
          off = -off;
        }
        HullFacet f;
        f.normal = nrm;
        f.offset = off;
        for (int j = 0; j < M; ++j)
          if (std::abs(nrm.dot(pts[static_cast<size_t>(ext[static_cast<size_t>(j)])]) - off) <= tol)
            f.verts.push_back(ext[static_cast<size_t>(j)]);
        std::vector<int> key = f.verts;
        std::sort(key.begin(), key.end());
        facets.emplace(std::move(key), std::move(f));
      }
    }
    // next combination
    int i = d - 1;
    while (i >= 0 && comb[static_cast<size_t>(i)] == M - d + i) --i;
    if (i < 0) break;
    ++comb[static_cast<size_t>(i)];
    for (int j = i + 1; j < d; ++j)
      comb[static_cast<size_t>(j)] = comb[static_cast<size_t>(j - 1)] + 1;
  }
  for (auto& [key, f] : facets) hull.facets.push_back(std::move(f));
  // A bounded full-dimensional hull has at least d + 1 facets; fewer means
  // the input was flat (one common plane absorbs every candidate).
  require(static_cast<int>(hull.facets.size()) >= d + 1,
          ErrorKind::invalid_body,
          "convex_hull: point set is not full-dimensional");
  return hull;
}

// d-simplices of a triangulated hull (fan from one vertex over opposite
// facets; facets are triangulated recursively in their own planes).
struct Simplex {
  std::vector<Vec> v;  // d+1 points
};

namespace hulldetail {

inline void triangulate_points(const std::vector<Vec>& pts,
                               std::vector<Simplex>& out);

// Order the (coplanar, convex-position) 2-D points counterclockwise and fan.
inline void fan_polygon_2d(const std::vector<Vec>& pts,
                           std::vector<Simplex>& out) {
  Vec c = Vec::Zero(2);
  for (const auto& p : pts) c += p;
  c /= static_cast<double>(pts.size());
  std::vector<std::pair<double, const Vec*>> ang;
  for (const auto& p : pts)
    ang.emplace_back(std::atan2(p[1] - c[1], p[0] - c[0]), &p);
  std::sort(ang.begin(), ang.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t i = 1; i + 1 < ang.size(); ++i)
    out.push_back(Simplex{{*ang[0].second, *ang[i].second, *ang[i + 1].second}});
}

inline void triangulate_points(const std::vector<Vec>& pts,
                               std::vector<Simplex>& out) {
  const int d = static_cast<int>(pts[0].size());
  if (d == 1) {
    double lo = pts[0][0], hi = pts[0][0];
    for (const auto& p : pts) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    out.push_back(Simplex{{make_vec({lo}), make_vec({hi})}});
    return;
  }
  if (d == 2) {
    if (pts.size() > 3) {
      Hull h = convex_hull(pts);
      std::vector<Vec> ext;
      ext.reserve(h.extreme.size());
      for (int i : h.extreme) ext.push_back(h.points[static_cast<size_t>(i)]);
      fan_polygon_2d(ext, out);
    } else {
      fan_polygon_2d(pts, out);
    }
    return;
  }
  Hull h = convex_hull(pts);
  const Vec apex = h.points[static_cast<size_t>(h.extreme[0])];
  for (const auto& f : h.facets) {
    bool has_apex = false;
    for (int vi : f.verts)
      if ((h.points[static_cast<size_t>(vi)] - apex).lpNorm<Eigen::Infinity>() <= 0.0)
        has_apex = true;
    if (std::abs(f.normal.dot(apex) - f.offset) <= 1e-9 * point_scale(pts))
      has_apex = true;
    if (has_apex) continue;
    // Facet coordinates: project onto an orthonormal basis of the facet.
    Mat B = orthonormal_complement(Direction::of(f.normal));
    const Vec origin = h.points[static_cast<size_t>(f.verts[0])];
    std::vector<Vec> flat;
    flat.reserve(f.verts.size());
    for (int vi : f.verts)
      flat.push_back(Vec(B.transpose() * (h.points[static_cast<size_t>(vi)] - origin)));
    std::vector<Simplex> sub;
    triangulate_points(flat, sub);
    for (const auto& s : sub) {
      Simplex lifted;
      lifted.v.reserve(s.v.size() + 1);
      for (const auto& q : s.v) lifted.v.push_back(Vec(origin + B * q));
      lifted.v.push_back(apex);
      out.push_back(std::move(lifted));
    }
  }
}

}  // namespace hulldetail

inline std::vector<Simplex> triangulate(const std::vector<Vec>& pts) {
  std::vector<Simplex> out;
  hulldetail::triangulate_points(pts, out);
  return out;
}

// Exact volume, centroid and raw second moment (integral of x x^T) of a
// union of disjoint simplices.
struct MassProperties {
  double volume = 0.0;
  Vec centroid;
  Mat second_moment;  // integral of x x^T over the body
  Mat covariance() const {
    return second_moment / volume - centroid * centroid.transpose();
  }
};

inline MassProperties mass_properties(const std::vector<Simplex>& simplices) {
  require(!simplices.empty(), ErrorKind::domain_error,
          "mass_properties: empty triangulation");
  const int d = static_cast<int>(simplices[0].v[0].size());
  double vol = 0.0;
  Vec first = Vec::Zero(d);
  Mat second = Mat::Zero(d, d);
  double dfact = 1.0;
  for (int i = 2; i <= d; ++i) dfact *= i;
  for (const auto& s : simplices) {
    Mat E(d, d);
    for (int i = 0; i < d; ++i) E.col(i) = s.v[static_cast<size_t>(i + 1)] - s.v[0];
    double v = std::abs(E.determinant()) / dfact;
    if (v <= 0.0) continue;
    Vec sum = Vec::Zero(d);
    Mat sq = Mat::Zero(d, d);
    for (const auto& p : s.v) {
      sum += p;
      sq += p * p.transpose();
    }
    vol += v;
    first += v * sum / (d + 1.0);
    second += v / ((d + 1.0) * (d + 2.0)) * (sq + sum * sum.transpose());
  }
  require(vol > 0.0, ErrorKind::invalid_body,
          "mass_properties: degenerate (zero-volume) body");
  MassProperties mp;
  mp.volume = vol;
  mp.centroid = first / vol;
  mp.second_moment = second;
  return mp;
}

// (d-1)-volume of a facet given the hull it belongs to.
inline double facet_measure(const Hull& h, const HullFacet& f) {
  const int d = h.dim;
  if (d == 2) {
    require(f.verts.size() >= 2, ErrorKind::invalid_body, "edge facet");
    double lo = 1e300, hi = -1e300;
    Mat B = orthonormal_complement(Direction::of(f.normal));
    for (int vi : f.verts) {
      double t = (B.transpose() * h.points[static_cast<size_t>(vi)])(0);
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
    return hi - lo;
  }
  Mat B = orthonormal_complement(Direction::of(f.normal));
  const Vec origin = h.points[static_cast<size_t>(f.verts[0])];
  std::vector<Vec> flat;
  for (int vi : f.verts)
    flat.push_back(Vec(B.transpose() * (h.points[static_cast<size_t>(vi)] - origin)));
  auto tris = triangulate(flat);
  double area = 0.0;
  const int dd = d - 1;
  double dfact = 1.0;
  for (int i = 2; i <= dd; ++i) dfact *= i;
  for (const auto& s : tris) {
    Mat E(dd, dd);
    for (int i = 0; i < dd; ++i) E.col(i) = s.v[static_cast<size_t>(i + 1)] - s.v[0];
    area += std::abs(E.determinant()) / dfact;
  }
  return area;
}

}  // namespace santalo
