#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "santalo/error.hpp"

namespace santalo {

namespace detail {

template <typename F>
double adaptive_simpson_rec(const F& f, double a, double b, double fa,
                            double fm, double fb, double whole, double tol,
                            int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double h = b - a;
  double left = h / 12.0 * (fa + 4.0 * flm + fm);
  double right = h / 12.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  // Endpoint derivative blow-up (profiles like sqrt(1-t^2)) is handled by
  // letting the recursion keep subdividing toward the ends: depth is large
  // and tolerance splits in half per level.
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol,
                              depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol,
                              depth - 1);
}

}  // namespace detail

// Adaptive composite Simpson on [a, b] with absolute tolerance `tol`.
template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol,
                        int max_depth = 48) {
  if (a == b) return 0.0;
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol,
                                      max_depth);
}

// Integrate over [a, b] split at the sorted interior breakpoints, adapting
// each piece separately.  Breakpoints outside (a, b) are ignored.
template <typename F>
double adaptive_simpson_segmented(const F& f, double a, double b,
                                  const std::vector<double>& breaks,
                                  double tol, int max_depth = 48) {
  std::vector<double> knots;
  knots.push_back(a);
  for (double t : breaks)
    if (t > a && t < b) knots.push_back(t);
  knots.push_back(b);
  double piece_tol = tol / static_cast<double>(knots.size());
  double total = 0.0;
  for (size_t i = 0; i + 1 < knots.size(); ++i)
    total += adaptive_simpson(f, knots[i], knots[i + 1], piece_tol, max_depth);
  return total;
}

// Nodes/weights of 5-point Gauss-Legendre on [-1, 1]; exact through degree 9.
struct Gauss5 {
  static constexpr double x[5] = {-0.906179845938663992797626878299,
                                  -0.538469310105683091036314420700, 0.0,
                                  0.538469310105683091036314420700,
                                  0.906179845938663992797626878299};
  static constexpr double w[5] = {0.236926885056189087514264040720,
                                  0.478628670499366468041291514836,
                                  0.568888888888888888888888888889,
                                  0.478628670499366468041291514836,
                                  0.236926885056189087514264040720};
};

// Fixed 5-point Gauss-Legendre on [a, b].
template <typename F>
double gauss5(const F& f, double a, double b) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < 5; ++i) s += Gauss5::w[i] * f(c + h * Gauss5::x[i]);
  return s * h;
}

// Maximize a unimodal function on [a, b] by golden-section search.
template <typename F>
double golden_max(const F& f, double a, double b, double tol, double* arg = nullptr) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + phi * (b - a); f2 = f(x2);
    } else {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - phi * (b - a); f1 = f(x1);
    }
  }
  double xm = 0.5 * (a + b);
  if (arg) *arg = xm;
  return f(xm);
}

// Root of a continuous function on [a, b] with f(a), f(b) of opposite sign.
template <typename F>
double bisect_root(const F& f, double a, double b, double fa, double fb,
                   double tol, int max_iter = 200) {
  require(fa == 0.0 || fb == 0.0 || (fa < 0) != (fb < 0),
          ErrorKind::domain_error, "bisect_root: no sign change");
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  for (int i = 0; i < max_iter && b - a > tol; ++i) {
    double m = 0.5 * (a + b), fm = f(m);
    if (fm == 0.0) return m;
    if ((fm < 0) == (fa < 0)) {
      a = m; fa = fm;
    } else {
      b = m; fb = fm;
    }
  }
  return 0.5 * (a + b);
}

// Chebyshev-spaced grid of m+1 points on [a, b] (denser near the ends,
// including both endpoints exactly).
inline std::vector<double> chebyshev_grid(double a, double b, int m) {
  std::vector<double> t(static_cast<size_t>(m) + 1);
  for (int j = 0; j <= m; ++j) {
    double theta = std::numbers::pi * (1.0 - static_cast<double>(j) / m);
    t[static_cast<size_t>(j)] =
        0.5 * (a + b) + 0.5 * (b - a) * std::cos(theta);
  }
  t.front() = a;
  t.back() = b;
  return t;
}

}  // namespace santalo
