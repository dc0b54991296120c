#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <vector>

#include "santalo/error.hpp"

namespace santalo {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Volume of the unit ball in R^n.
inline double unit_ball_volume(int n) {
  require(n >= 0, ErrorKind::domain_error, "unit_ball_volume: n >= 0");
  return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

// Surface measure of the unit sphere S^{n-1} in R^n.
inline double unit_sphere_area(int n) { return n * unit_ball_volume(n); }

inline Vec make_vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

// Unit vector; the factory normalizes, the stored value is unit to 1e-12.
class Direction {
public:
  static Direction of(const Vec& v) {
    double norm = v.norm();
    require(norm > 1e-14, ErrorKind::domain_error,
            "Direction: zero vector cannot be normalized");
    return Direction(Vec(v / norm));
  }
  static Direction axis(int n, int k) {
    Vec v = Vec::Zero(n);
    v[k] = 1.0;
    return Direction(v);
  }

  const Vec& vec() const { return v_; }
  int dim() const { return static_cast<int>(v_.size()); }
  double dot(const Vec& x) const { return v_.dot(x); }
  Direction reversed() const { return Direction(Vec(-v_)); }

private:
  explicit Direction(Vec v) : v_(std::move(v)) {
    require(std::abs(v_.norm() - 1.0) <= 1e-12, ErrorKind::invalid_body,
            "Direction: norm must be 1 within 1e-12");
  }
  Vec v_;
};

// Oriented hyperplane {x : <normal, x> = offset}.
struct Hyperplane {
  Direction normal;
  double offset;

  Hyperplane(Direction n, double c) : normal(std::move(n)), offset(c) {}
  double signed_distance(const Vec& x) const {
    return normal.dot(x) - offset;
  }
  Vec reflect(const Vec& x) const {
    return x - 2.0 * signed_distance(x) * normal.vec();
  }
};

// Invertible affine map x -> A x + b with the determinant cached at
// construction.
class AffineMap {
public:
  AffineMap(Mat A, Vec b) : A_(std::move(A)), b_(std::move(b)) {
    require(A_.rows() == A_.cols() && A_.rows() == b_.size(),
            ErrorKind::domain_error, "AffineMap: shape mismatch");
    det_ = A_.determinant();
    require(std::abs(det_) > 1e-14, ErrorKind::domain_error,
            "AffineMap: determinant must be nonzero");
  }
  static AffineMap identity(int n) {
    return AffineMap(Mat::Identity(n, n), Vec::Zero(n));
  }
  static AffineMap translation(const Vec& b) {
    return AffineMap(Mat::Identity(b.size(), b.size()), b);
  }
  static AffineMap linear(const Mat& A) {
    return AffineMap(A, Vec::Zero(A.rows()));
  }

  const Mat& matrix() const { return A_; }
  const Vec& translation() const { return b_; }
  double det() const { return det_; }
  int dim() const { return static_cast<int>(b_.size()); }

  Vec apply(const Vec& x) const { return A_ * x + b_; }
  AffineMap compose(const AffineMap& inner) const {
    // this(inner(x)) = A*Ai*x + (A*bi + b)
    return AffineMap(Mat(A_ * inner.A_), Vec(A_ * inner.b_ + b_));
  }
  AffineMap inverse() const {
    Mat Ai = A_.inverse();
    return AffineMap(Ai, Vec(-Ai * b_));
  }

private:
  Mat A_;
  Vec b_;
  double det_;
};

// Deterministic orthonormal basis of the complement of u: columns of the
// returned matrix are n-1 unit vectors spanning u^perp.  Built from the
// Householder reflection that maps e_k to u (k = argmax |u_k|), so the frame
// is a stable function of u alone.
inline Mat orthonormal_complement(const Direction& u) {
  const Vec& v = u.vec();
  int n = u.dim();
  int k = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(v[i]) > std::abs(v[k])) k = i;
  Vec w = v;
  w[k] += (v[k] >= 0 ? 1.0 : -1.0) * 1.0;
  double wn2 = w.squaredNorm();
  Mat H = Mat::Identity(n, n) - (2.0 / wn2) * (w * w.transpose());
  // H maps +-e_k to u (up to sign); remaining columns span u^perp.
  Mat B(n, n - 1);
  int col = 0;
  for (int i = 0; i < n; ++i) {
    if (i == k) continue;
    B.col(col++) = H.col(i);
  }
  return B;
}

// Fibonacci-style deterministic covering of S^{n-1} with `count` points.
// n = 2: uniform angles; n = 3: Fibonacci sphere; n = 4: double-angle
// lattice.  Used by direction scans that are refined locally afterwards.
inline std::vector<Vec> sphere_covering(int n, int count) {
  std::vector<Vec> dirs;
  dirs.reserve(count);
  const double pi = std::numbers::pi;
  if (n == 2) {
    for (int i = 0; i < count; ++i) {
      double a = 2.0 * pi * i / count;
      dirs.push_back(make_vec({std::cos(a), std::sin(a)}));
    }
  } else if (n == 3) {
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    for (int i = 0; i < count; ++i) {
      double z = 1.0 - (2.0 * i + 1.0) / count;
      double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      double a = 2.0 * pi * i / golden;
      dirs.push_back(make_vec({r * std::cos(a), r * std::sin(a), z}));
    }
  } else if (n == 4) {
    // Lattice on the Hopf coordinates (eta, a, b).
    int m = std::max(2, static_cast<int>(std::cbrt(static_cast<double>(count))));
    for (int i = 0; i < m && static_cast<int>(dirs.size()) < count; ++i) {
      double eta = pi * (i + 0.5) / (2.0 * m);
      double ce = std::cos(eta), se = std::sin(eta);
      for (int j = 0; j < m; ++j) {
        double a = 2.0 * pi * (j + 0.5) / m;
        for (int k = 0; k < m; ++k) {
          double b = 2.0 * pi * (k + 0.5) / m;
          dirs.push_back(make_vec({ce * std::cos(a), ce * std::sin(a),
                                   se * std::cos(b), se * std::sin(b)}));
          if (static_cast<int>(dirs.size()) >= count) break;
        }
        if (static_cast<int>(dirs.size()) >= count) break;
      }
    }
  } else {
    fail(ErrorKind::domain_error, "sphere_covering: n must be 2, 3, or 4");
  }
  return dirs;
}

}  // namespace santalo
