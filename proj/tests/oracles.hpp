#pragma once

// Independent reference implementations used to cross-check the library.
// Every oracle favors brute force over cleverness: exhaustive enumeration,
// dense grids, and first-principles identities, sharing no code path with
// the algorithms under test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "santalo/body.hpp"
#include "santalo/rng.hpp"

namespace oracles {

using santalo::Body;
using santalo::Mat;
using santalo::Polygon;
using santalo::Rng;
using santalo::Vec;

// Linear program max c.x st Ax <= b by exhaustive basis enumeration.
// Bounded feasible instances only; returns the best feasible vertex.
struct LpRef {
  bool feasible = false;
  double value = -std::numeric_limits<double>::infinity();
  Vec x;
};

inline LpRef lp_exhaustive(const Mat& A, const Vec& b, const Vec& c) {
  const int m = static_cast<int>(A.rows());
  const int d = static_cast<int>(A.cols());
  LpRef best;
  std::vector<int> idx(static_cast<size_t>(d));
  // Enumerate all d-subsets of rows as candidate bases.
  std::vector<int> comb(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) comb[static_cast<size_t>(i)] = i;
  auto advance = [&]() {
    int k = d - 1;
    while (k >= 0 && comb[static_cast<size_t>(k)] == m - d + k) --k;
    if (k < 0) return false;
    ++comb[static_cast<size_t>(k)];
    for (int j = k + 1; j < d; ++j)
      comb[static_cast<size_t>(j)] = comb[static_cast<size_t>(j) - 1] + 1;
    return true;
  };
  if (m < d) return best;
  while (true) {
    Mat B(d, d);
    Vec rhs(d);
    for (int i = 0; i < d; ++i) {
      B.row(i) = A.row(comb[static_cast<size_t>(i)]);
      rhs[i] = b[comb[static_cast<size_t>(i)]];
    }
    Eigen::FullPivLU<Mat> lu(B);
    if (lu.isInvertible()) {
      Vec x = lu.solve(rhs);
      double scale = 1.0 + b.cwiseAbs().maxCoeff();
      if (((A * x - b).array() <= 1e-9 * scale).all()) {
        double v = c.dot(x);
        if (!best.feasible || v > best.value) {
          best.feasible = true;
          best.value = v;
          best.x = x;
        }
      }
    }
    if (!advance()) break;
  }
  return best;
}

// Minkowski measure of a polygon by direct minimization of
//   q(x) = max_i (h(-a_i) + a_i.x) / (b_i - a_i.x)
// over a dense interior grid followed by pattern refinement.
inline double q_grid(const Polygon& P, int grid = 120) {
  Mat A;
  Vec b;
  P.halfplanes(A, b);
  const int m = static_cast<int>(A.rows());
  Vec s(m);
  for (int i = 0; i < m; ++i) s[i] = P.support(Vec(-A.row(i).transpose()));
  auto q_at = [&](const Vec& x) {
    double worst = 0.0;
    for (int i = 0; i < m; ++i) {
      double denom = b[i] - A.row(i).dot(x);
      if (denom <= 1e-12) return std::numeric_limits<double>::infinity();
      worst = std::max(worst, (s[i] + A.row(i).dot(x)) / denom);
    }
    return worst;
  };
  double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
  for (int i = 0; i < P.size(); ++i) {
    xlo = std::min(xlo, P.vertex(i)[0]);
    xhi = std::max(xhi, P.vertex(i)[0]);
    ylo = std::min(ylo, P.vertex(i)[1]);
    yhi = std::max(yhi, P.vertex(i)[1]);
  }
  double bestq = std::numeric_limits<double>::infinity();
  Vec bestx = santalo::make_vec({0.5 * (xlo + xhi), 0.5 * (ylo + yhi)});
  for (int i = 0; i <= grid; ++i)
    for (int j = 0; j <= grid; ++j) {
      Vec x = santalo::make_vec({xlo + (xhi - xlo) * i / grid,
                                 ylo + (yhi - ylo) * j / grid});
      double q = q_at(x);
      if (q < bestq) {
        bestq = q;
        bestx = x;
      }
    }
  double step = std::max(xhi - xlo, yhi - ylo) / grid;
  while (step > 1e-10) {
    bool moved = false;
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy) {
        if (dx == 0 && dy == 0) continue;
        Vec x = bestx + santalo::make_vec({dx * step, dy * step});
        double q = q_at(x);
        if (q < bestq - 1e-15) {
          bestq = q;
          bestx = x;
          moved = true;
        }
      }
    if (!moved) step *= 0.5;
  }
  return bestq;
}

// Distance of an o-symmetric polygon from the nearest o-symmetric ellipse,
// by dense search over ellipse orientation and log-anisotropy.  The ellipse
// x'Q^{-1}x <= 1 with Q = R diag(e^{2w}, e^{-2w}) R' contains s E iff
// s sqrt(a'Qa) <= h(a) for every edge normal, and K c t E iff
// sqrt(v'Q^{-1}v) <= t for every vertex.
inline double bm_grid(const Polygon& P, int ntheta = 256, int nw = 161,
                      double wmax = 0.8) {
  Mat A;
  Vec b;
  P.halfplanes(A, b);
  double best = std::numeric_limits<double>::infinity();
  for (int it = 0; it < ntheta; ++it) {
    double th = std::numbers::pi * it / ntheta;
    double ct = std::cos(th), st = std::sin(th);
    for (int iw = 0; iw < nw; ++iw) {
      double w = -wmax + 2.0 * wmax * iw / (nw - 1);
      double l1 = std::exp(2.0 * w), l2 = std::exp(-2.0 * w);
      // Q = R diag(l1, l2) R'
      double qxx = l1 * ct * ct + l2 * st * st;
      double qyy = l1 * st * st + l2 * ct * ct;
      double qxy = (l1 - l2) * ct * st;
      double det = qxx * qyy - qxy * qxy;
      double in = 0.0;
      for (int i = 0; i < A.rows(); ++i) {
        double ax = A(i, 0), ay = A(i, 1);
        double quad = qxx * ax * ax + 2.0 * qxy * ax * ay + qyy * ay * ay;
        in = std::max(in, std::sqrt(quad) / b[i]);
      }
      double out = 0.0;
      for (int i = 0; i < P.size(); ++i) {
        double vx = P.vertex(i)[0], vy = P.vertex(i)[1];
        double quad =
            (qyy * vx * vx - 2.0 * qxy * vx * vy + qxx * vy * vy) / det;
        out = std::max(out, std::sqrt(quad));
      }
      best = std::min(best, out * in);
    }
  }
  return std::max(1.0, best);
}

// Chord of a polygon on the line {x : d.(x - p) = xi} along the unit normal
// of d, computed by clipping each edge; first = lower end, second = upper.
inline bool chord_at(const Polygon& P, const Vec& p, const Vec& d, double xi,
                     double& lo, double& hi) {
  Vec nd = d / d.norm();
  Vec nn = santalo::make_vec({-nd[1], nd[0]});
  lo = 1e300;
  hi = -1e300;
  for (int i = 0; i < P.size(); ++i) {
    Vec a = P.vertex(i), c = P.vertex(i + 1);
    double fa = nd.dot(a - p) - xi, fc = nd.dot(c - p) - xi;
    if ((fa < 0 && fc < 0) || (fa > 0 && fc > 0)) continue;
    if (fa == fc) {
      lo = std::min({lo, nn.dot(a - p), nn.dot(c - p)});
      hi = std::max({hi, nn.dot(a - p), nn.dot(c - p)});
      continue;
    }
    Vec q = a + (fa / (fa - fc)) * (c - a);
    lo = std::min(lo, nn.dot(q - p));
    hi = std::max(hi, nn.dot(q - p));
  }
  return hi >= lo;
}

// Monte Carlo volume via membership sampling in the support bounding box.
// Membership is decided from the representation primitives directly.
inline double mc_volume(const Body& K, int samples, std::uint64_t seed) {
  const int n = K.dim();
  std::vector<double> lo(static_cast<size_t>(n)), hi(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    Vec e = Vec::Zero(n);
    e[k] = 1.0;
    hi[static_cast<size_t>(k)] = K.support(e);
    lo[static_cast<size_t>(k)] = -K.support(Vec(-e));
  }
  auto inside = [&](const Vec& x) -> bool {
    if (K.is_polygon() || K.is_polytope()) {
      Mat A;
      Vec b;
      if (K.is_polygon()) {
        K.as_polygon().halfplanes(A, b);
      } else {
        A = K.as_polytope().normals();
        b = K.as_polytope().offsets();
      }
      return ((A * x - b).array() <= 0.0).all();
    }
    const santalo::RevolutionBody& R = K.as_revolution();
    double t = R.axis().dot(x);
    if (t < R.profile().tmin() || t > R.profile().tmax()) return false;
    double rad = (x - t * R.axis().vec()).norm();
    return rad <= R.profile()(t);
  };
  Rng rng(seed);
  int hits = 0;
  double box = 1.0;
  for (int k = 0; k < n; ++k)
    box *= hi[static_cast<size_t>(k)] - lo[static_cast<size_t>(k)];
  Vec x(n);
  for (int s = 0; s < samples; ++s) {
    for (int k = 0; k < n; ++k)
      x[k] = rng.uniform(lo[static_cast<size_t>(k)],
                         hi[static_cast<size_t>(k)]);
    if (inside(x)) ++hits;
  }
  return box * hits / samples;
}

// Mixed area from the polygon Minkowski sum identity
//   A(P + Q) = A(P) + 2 V1'(P, Q) + A(Q).
inline double mixed_area_sum(const Polygon& P, const Polygon& Q) {
  double apq = Polygon::minkowski_sum(P, Q).area();
  return 0.5 * (apq - P.area() - Q.area());
}

}  // namespace oracles
