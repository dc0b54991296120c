#pragma once

#include <optional>
#include <vector>

#include "santalo/geometry.hpp"
#include "santalo/rng.hpp"

namespace santalo {

// Small dense linear programs in dimension <= 5, solved with Seidel's
// randomized incremental algorithm.  Every problem carries an implicit
// bounding box |x_j| <= box, which makes all subproblems bounded; callers
// whose feasible sets are genuinely unbounded get a box-clamped answer.

enum class LpStatus { optimal, infeasible };

struct LpSolution {
  LpStatus status;
  Vec x;
  double value = 0.0;
  bool feasible() const { return status == LpStatus::optimal; }
};

namespace lpdetail {

struct Row {
  Vec a;
  double b;
};

inline constexpr double kFeasEps = 1e-9;

inline std::optional<Vec> seidel(std::vector<Row> rows, Vec c, double box,
                                 Rng& rng) {
  const int d = static_cast<int>(c.size());
  // Normalize rows; degenerate rows become pure feasibility facts.
  std::vector<Row> norm;
  norm.reserve(rows.size());
  for (auto& r : rows) {
    double na = r.a.norm();
    if (na < 1e-13) {
      if (r.b < -kFeasEps) return std::nullopt;
      continue;
    }
    norm.push_back(Row{Vec(r.a / na), r.b / na});
  }

  if (d == 1) {
    double lo = -box, hi = box;
    for (auto& r : norm) {
      double a = r.a[0];
      if (a > 0)
        hi = std::min(hi, r.b / a);
      else
        lo = std::max(lo, r.b / a);
    }
    if (lo > hi + kFeasEps) return std::nullopt;
    if (lo > hi) lo = hi = 0.5 * (lo + hi);
    Vec x(1);
    x[0] = c[0] > 0 ? hi : (c[0] < 0 ? lo : 0.5 * (lo + hi));
    return x;
  }

  Vec x(d);
  for (int j = 0; j < d; ++j)
    x[j] = c[j] > 0 ? box : (c[j] < 0 ? -box : 0.0);

  std::vector<int> order(norm.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  rng.shuffle(order);

  for (size_t i = 0; i < order.size(); ++i) {
    const Row& cur = norm[static_cast<size_t>(order[i])];
    if (cur.a.dot(x) <= cur.b + kFeasEps) continue;

    // Optimum lies on cur's boundary; eliminate the largest coordinate.
    int k = 0;
    for (int j = 1; j < d; ++j)
      if (std::abs(cur.a[j]) > std::abs(cur.a[k])) k = j;
    double ak = cur.a[k];

    auto reduce_vec = [&](const Vec& v, double vk) {
      Vec out(d - 1);
      int col = 0;
      for (int j = 0; j < d; ++j) {
        if (j == k) continue;
        out[col++] = v[j] - vk * cur.a[j] / ak;
      }
      return out;
    };

    std::vector<Row> sub;
    sub.reserve(i + 2);
    for (size_t t = 0; t < i; ++t) {
      const Row& r = norm[static_cast<size_t>(order[t])];
      sub.push_back(Row{reduce_vec(r.a, r.a[k]), r.b - r.a[k] * cur.b / ak});
    }
    // Box constraints for the eliminated coordinate: |x_k| <= box with
    // x_k = (cur.b - sum_j a_j x_j) / ak.
    {
      Vec e = Vec::Zero(d);
      e[k] = 1.0;
      Vec re = reduce_vec(e, 1.0);   // -a_j/ak pattern
      double xk0 = cur.b / ak;       // x_k when all other coords are 0
      sub.push_back(Row{re, box - xk0});
      sub.push_back(Row{Vec(-re), box + xk0});
    }
    Vec cr = reduce_vec(c, c[k]);

    auto sol = seidel(sub, cr, box, rng);
    if (!sol) return std::nullopt;

    int col = 0;
    double xk = cur.b / ak;
    for (int j = 0; j < d; ++j) {
      if (j == k) continue;
      x[j] = (*sol)[col];
      xk -= cur.a[j] * (*sol)[col] / ak;
      ++col;
    }
    x[k] = xk;
  }
  return x;
}

}  // namespace lpdetail

// maximize c.x subject to A x <= b (rows of A need not be normalized) and
// |x_j| <= box.
inline LpSolution solve_lp(const Mat& A, const Vec& b, const Vec& c,
                           double box = 1e8) {
  std::vector<lpdetail::Row> rows;
  rows.reserve(static_cast<size_t>(A.rows()));
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    rows.push_back(lpdetail::Row{Vec(A.row(i).transpose()), b[i]});
  // Fixed seed: results must be deterministic across runs.
  Rng rng(0x5e1de1ULL ^ (static_cast<std::uint64_t>(A.rows()) << 32) ^
          static_cast<std::uint64_t>(A.cols()));
  auto x = lpdetail::seidel(std::move(rows), c, box, rng);
  if (!x) return LpSolution{LpStatus::infeasible, Vec(), 0.0};
  return LpSolution{LpStatus::optimal, *x, c.dot(*x)};
}

// Feasibility margin of {x : A x <= b}: maximizes s subject to
// a_i.x + |a_i| s <= b_i.  margin > 0 means a full-dimensional interior
// point; margin >= -tol accepts boundary-degenerate but nonempty systems.
struct FeasibilityReport {
  bool feasible;
  double margin;  // Chebyshev radius when feasible
  Vec point;
};

inline FeasibilityReport feasibility_margin(const Mat& A, const Vec& b,
                                            double box = 1e8) {
  const int d = static_cast<int>(A.cols());
  Mat A2(A.rows(), d + 1);
  Vec c = Vec::Zero(d + 1);
  c[d] = 1.0;
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    double na = A.row(i).norm();
    A2.row(i).head(d) = A.row(i);
    A2(i, d) = na > 0 ? na : 1.0;
  }
  auto sol = solve_lp(A2, b, c, box);
  if (!sol.feasible()) return FeasibilityReport{false, -1e30, Vec()};
  return FeasibilityReport{sol.x[d] >= 0.0, sol.x[d], Vec(sol.x.head(d))};
}

}  // namespace santalo
