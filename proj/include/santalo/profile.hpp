#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "santalo/error.hpp"
#include "santalo/quadrature.hpp"

namespace santalo {

// Concave radius profile r : [tmin, tmax] -> [0, inf), positive on the
// open interior.  Two flavors share the type: piecewise linear on a knot
// grid (all derived quantities exact), or an analytic evaluator with an
// eagerly tabulated knot grid used for plotting and quadrature splitting.
class Profile {
public:
  static Profile piecewise_linear(std::vector<double> t,
                                  std::vector<double> r) {
    Profile p;
    p.t_ = std::move(t);
    p.r_ = std::move(r);
    p.validate(1e-12);
    return p;
  }

  static Profile smooth(double t0, double t1,
                        std::function<double(double)> f, int grid = 1024,
                        std::vector<double> extra_knots = {}) {
    require(t1 > t0, ErrorKind::invalid_body, "Profile: empty interval");
    Profile p;
    p.f_ = std::move(f);
    p.t_ = chebyshev_grid(t0, t1, grid);
    for (double x : extra_knots)
      if (x > t0 && x < t1) p.t_.push_back(x);
    std::sort(p.t_.begin(), p.t_.end());
    p.t_.erase(std::unique(p.t_.begin(), p.t_.end(),
                           [&](double a, double b) {
                             return b - a < 1e-14 * (t1 - t0);
                           }),
               p.t_.end());
    p.r_.resize(p.t_.size());
    for (size_t i = 0; i < p.t_.size(); ++i) p.r_[i] = p.f_(p.t_[i]);
    p.validate(1e-7);
    return p;
  }

  bool piecewise_linear_kind() const { return !f_; }
  double tmin() const { return t_.front(); }
  double tmax() const { return t_.back(); }
  double width() const { return t_.back() - t_.front(); }
  const std::vector<double>& knots() const { return t_; }
  const std::vector<double>& values() const { return r_; }

  double operator()(double t) const {
    double w = width();
    require(t >= tmin() - 1e-9 * w && t <= tmax() + 1e-9 * w,
            ErrorKind::domain_error, "Profile: evaluation outside domain");
    t = std::clamp(t, tmin(), tmax());
    if (f_) return std::max(0.0, f_(t));
    auto it = std::upper_bound(t_.begin(), t_.end(), t);
    size_t hi = std::min(t_.size() - 1,
                         static_cast<size_t>(it - t_.begin()));
    if (hi == 0) hi = 1;
    size_t lo = hi - 1;
    double s = (t - t_[lo]) / (t_[hi] - t_[lo]);
    return std::max(0.0, (1.0 - s) * r_[lo] + s * r_[hi]);
  }

  double max_radius() const {
    ensure_peak();
    return peak_r_;
  }

  double argmax_radius() const {
    ensure_peak();
    return peak_t_;
  }

  // Integral over the domain of F(t, r(t)).  Piecewise-linear profiles use
  // 5-point Gauss per knot segment, exact whenever F is a polynomial of
  // joint degree <= 9 in (t, r); analytic profiles use adaptive Simpson
  // split at the knot grid.
  double integrate(const std::function<double(double, double)>& F,
                   double tol = 1e-12) const {
    if (!f_) {
      double sum = 0.0;
      for (size_t i = 0; i + 1 < t_.size(); ++i) {
        double a = t_[i], b = t_[i + 1];
        double ra = r_[i], rb = r_[i + 1];
        sum += gauss5(
            [&](double t) {
              double s = (t - a) / (b - a);
              return F(t, (1.0 - s) * ra + s * rb);
            },
            a, b);
      }
      return sum;
    }
    std::vector<double> inner(t_.begin() + 1, t_.end() - 1);
    return adaptive_simpson_segmented(
        [&](double t) { return F(t, std::max(0.0, f_(t))); }, tmin(), tmax(),
        inner, tol);
  }

  // max_t  u_t * t + u_r * r(t)  for u_r >= 0: the support value of the
  // revolution body in a direction with axial component u_t and radial
  // magnitude u_r.  The objective is concave in t.
  double support_1d(double u_t, double u_r) const {
    require(u_r >= 0.0, ErrorKind::domain_error,
            "Profile::support_1d: radial component must be nonnegative");
    if (!f_) {
      double best = -1e300;
      for (size_t i = 0; i < t_.size(); ++i)
        best = std::max(best, u_t * t_[i] + u_r * r_[i]);
      return best;
    }
    double end = std::max(u_t * tmin() + u_r * operator()(tmin()),
                          u_t * tmax() + u_r * operator()(tmax()));
    double inner = golden_max(
        [&](double t) { return u_t * t + u_r * std::max(0.0, f_(t)); },
        tmin(), tmax(), 1e-13 * width());
    return std::max(end, inner);
  }

  Profile translated(double d) const {
    Profile p = *this;
    for (auto& t : p.t_) t += d;
    if (f_) {
      auto g = f_;
      p.f_ = [g, d](double t) { return g(t - d); };
    }
    return p;
  }

  Profile scaled_axis(double a) const {
    require(a > 0, ErrorKind::domain_error, "Profile: axis scale must be > 0");
    Profile p = *this;
    for (auto& t : p.t_) t *= a;
    if (f_) {
      auto g = f_;
      p.f_ = [g, a](double t) { return g(t / a); };
    }
    return p;
  }

  Profile scaled_radial(double b) const {
    require(b > 0, ErrorKind::domain_error,
            "Profile: radial scale must be > 0");
    Profile p = *this;
    for (auto& r : p.r_) r *= b;
    if (f_) {
      auto g = f_;
      p.f_ = [g, b](double t) { return b * g(t); };
    }
    return p;
  }

  Profile reversed() const {
    Profile p;
    p.t_.assign(t_.rbegin(), t_.rend());
    for (auto& t : p.t_) t = -t;
    p.r_.assign(r_.rbegin(), r_.rend());
    if (f_) {
      auto g = f_;
      p.f_ = [g](double t) { return g(-t); };
    }
    return p;
  }

  // Length of the superlevel set {t : r(t) >= rho}; an interval by
  // concavity.
  double level_width(double rho) const {
    if (rho <= 0) return width();
    if (!f_) {
      double len = 0.0;
      for (size_t i = 0; i + 1 < t_.size(); ++i) {
        double ra = r_[i], rb = r_[i + 1], dt = t_[i + 1] - t_[i];
        if (ra >= rho && rb >= rho) {
          len += dt;
        } else if (ra < rho && rb < rho) {
          continue;
        } else {
          double s = (rho - ra) / (rb - ra);
          len += (ra < rho) ? (1.0 - s) * dt : s * dt;
        }
      }
      return len;
    }
    double tstar = argmax_radius();
    double rmax = operator()(tstar);
    if (rho > rmax) return 0.0;
    // Each branch is bisected on its own side of the peak; the bracket
    // endpoint at tstar only supplies a sign, so the flat-top uncertainty
    // of argmax_radius never enters the width.
    auto fval = [&](double t) { return operator()(t) - rho; };
    double fl = fval(tmin()), fr = fval(tmax());
    double tl = fl >= 0.0
                    ? tmin()
                    : bisect_root(fval, tmin(), tstar, fl, rmax - rho,
                                  1e-14 * width());
    double tr = fr >= 0.0
                    ? tmax()
                    : bisect_root(fval, tstar, tmax(), rmax - rho, fr,
                                  1e-14 * width());
    return tr - tl;
  }

  // Chord recentering along the axis: the new profile is even and has the
  // same level widths.  Exact for piecewise-linear profiles.
  Profile evenized() const {
    if (!f_) {
      std::vector<double> radii = r_;
      radii.push_back(0.0);
      std::sort(radii.begin(), radii.end(), std::greater<double>());
      radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
      std::vector<double> tau, rho;
      for (double rr : radii) {
        double half = 0.5 * level_width(rr);
        if (!tau.empty() && half <= tau.back() + 1e-15 * width()) continue;
        tau.push_back(half);
        rho.push_back(rr);
      }
      std::vector<double> t2, r2;
      for (size_t i = tau.size(); i-- > 0;)
        if (tau[i] > 0.0) {
          t2.push_back(-tau[i]);
          r2.push_back(rho[i]);
        }
      t2.push_back(0.0);
      r2.push_back(radii.front());
      for (size_t i = 0; i < tau.size(); ++i)
        if (tau[i] > 0.0) {
          t2.push_back(tau[i]);
          r2.push_back(rho[i]);
        }
      // Level widths of closely spaced radii produce near-duplicate knots
      // whose slopes wobble at rounding scale; keep the concave envelope.
      prune_to_concave(t2, r2);
      return piecewise_linear(std::move(t2), std::move(r2));
    }
    double rmax = max_radius();
    double half_width = 0.5 * width();
    Profile self = *this;
    auto g = [self, rmax, half_width](double tau) {
      double target = 2.0 * std::abs(tau);
      double wtop = self.level_width(rmax * (1.0 - 1e-12));
      if (wtop >= target) return rmax;
      // level_width is nonincreasing in rho, so the bracket is oriented.
      return bisect_root(
          [&](double rho) { return self.level_width(rho) - target; }, 0.0,
          rmax, self.width() - target, wtop - target, 1e-13 * rmax);
    };
    return smooth(-half_width, half_width, g,
                  static_cast<int>(t_.size()) - 1);
  }

  // Meridian of z + (K - z)^polar for the revolution body K with this
  // profile, where z = z_axial * axis is interior.  The radius of the
  // polar at axial coordinate tau is min_t (1 - tau t) / r(t) over the
  // shifted profile; for a piecewise-linear profile the minimum sits at a
  // knot, so the polar profile is the exact lower envelope of knot lines.
  Profile polar_about(double z_axial) const {
    double w = width();
    require(z_axial > tmin() + 1e-12 * w && z_axial < tmax() - 1e-12 * w,
            ErrorKind::domain_error,
            "Profile::polar_about: center not interior");
    double a = tmin() - z_axial, b = tmax() - z_axial;
    double lo = 1.0 / a, hi = 1.0 / b;
    if (!f_) {
      std::vector<std::pair<double, double>> lines;  // slope, intercept
      for (size_t i = 0; i < t_.size(); ++i)
        if (r_[i] > 0.0)
          lines.push_back({-(t_[i] - z_axial) / r_[i], 1.0 / r_[i]});
      auto env = lower_envelope(lines, lo, hi);
      for (auto& kn : env.first) kn += z_axial;
      return piecewise_linear(std::move(env.first), std::move(env.second));
    }
    Profile self = *this;
    double za = z_axial;
    auto g = [self, za, a, b](double tau_shifted) {
      double tau = tau_shifted - za;
      auto ratio = [&](double t) {
        double r = self(t + za);
        if (r <= 0.0) return 1e300;
        return (1.0 - tau * t) / r;
      };
      double inset = 1e-11 * (b - a);
      double best = -golden_max([&](double t) { return -ratio(t); },
                                a + inset, b - inset, 1e-13 * (b - a));
      best = std::min(best, std::min(ratio(a + 0.5 * inset),
                                     ratio(b - 0.5 * inset)));
      return std::max(0.0, best);
    };
    int grid = std::max(1024, static_cast<int>(t_.size()) - 1);
    Profile out = smooth(lo + z_axial, hi + z_axial, g, grid);
    return out;
  }

  // Forces an analytic profile down to its knot grid.  Sampled values of
  // an analytic profile carry evaluation noise that can break the strict
  // piecewise concavity check, so only the vertices of the upper concave
  // envelope of the samples are kept; their values are never altered.
  Profile tabulated() const {
    if (!f_) return *this;
    std::vector<double> t2 = t_, r2 = r_;
    prune_to_concave(t2, r2);
    return piecewise_linear(std::move(t2), std::move(r2));
  }

private:
  Profile() = default;

  // Keeps only the vertices of the upper concave envelope of the samples,
  // so consecutive slopes strictly decrease under the same arithmetic the
  // validator uses.  Values at kept knots are never altered.
  static void prune_to_concave(std::vector<double>& t, std::vector<double>& r) {
    if (t.size() < 3) return;
    double w = t.back() - t.front();
    double rmax = *std::max_element(r.begin(), r.end());
    double margin = 1e-12 * std::max(1.0, rmax / w);
    auto slope = [&](size_t i, size_t j) {
      return (r[j] - r[i]) / (t[j] - t[i]);
    };
    std::vector<size_t> keep;
    for (size_t i = 0; i < t.size(); ++i) {
      while (keep.size() >= 2 &&
             slope(keep[keep.size() - 2], keep.back()) <=
                 slope(keep.back(), i) + margin)
        keep.pop_back();
      keep.push_back(i);
    }
    std::vector<double> t2(keep.size()), r2(keep.size());
    for (size_t k = 0; k < keep.size(); ++k) {
      t2[k] = t[keep[k]];
      r2[k] = r[keep[k]];
    }
    t = std::move(t2);
    r = std::move(r2);
  }

  void ensure_peak() const {
    if (have_peak_) return;
    size_t k = static_cast<size_t>(
        std::max_element(r_.begin(), r_.end()) - r_.begin());
    peak_t_ = t_[k];
    peak_r_ = r_[k];
    if (f_) {
      // Refine within the two cells around the best tabulation node.
      double lo = t_[k > 0 ? k - 1 : 0];
      double hi = t_[std::min(k + 1, t_.size() - 1)];
      peak_r_ = golden_max([&](double t) { return f_(t); }, lo, hi,
                           1e-13 * width(), &peak_t_);
    }
    have_peak_ = true;
  }

  // Lower envelope of lines y = m x + c over [lo, hi]; returns knots and
  // values of the concave piecewise-linear minimum.
  static std::pair<std::vector<double>, std::vector<double>> lower_envelope(
      std::vector<std::pair<double, double>> lines, double lo, double hi) {
    require(!lines.empty(), ErrorKind::invalid_body,
            "lower_envelope: no lines");
    // Sort by slope descending; for ties keep the lower intercept.
    std::sort(lines.begin(), lines.end(),
              [](const auto& p, const auto& q) {
                return p.first > q.first ||
                       (p.first == q.first && p.second < q.second);
              });
    lines.erase(std::unique(lines.begin(), lines.end(),
                            [](const auto& p, const auto& q) {
                              return p.first == q.first;
                            }),
                lines.end());
    std::vector<std::pair<double, double>> stk;  // active lines
    std::vector<double> start;                   // where stk[i] takes over
    for (const auto& L : lines) {
      while (!stk.empty()) {
        // L has the smaller slope, so it wins for x > cross.
        double cross =
            (L.second - stk.back().second) / (stk.back().first - L.first);
        if (!start.empty() && cross <= start.back()) {
          stk.pop_back();
          start.pop_back();
          continue;
        }
        stk.push_back(L);
        start.push_back(cross);
        break;
      }
      if (stk.empty()) {
        stk.push_back(L);
        start.clear();
      }
    }
    std::vector<double> xs = {lo};
    for (double s : start)
      if (s > lo && s < hi) xs.push_back(s);
    xs.push_back(hi);
    std::sort(xs.begin(), xs.end());
    std::vector<double> ys;
    ys.reserve(xs.size());
    for (double x : xs) {
      double y = 1e300;
      for (const auto& L : stk) y = std::min(y, L.first * x + L.second);
      require(y > -1e-9, ErrorKind::domain_error,
              "lower_envelope: negative radius");
      ys.push_back(std::max(0.0, y));
    }
    return {std::move(xs), std::move(ys)};
  }

  void validate(double slope_tol) const {
    require(t_.size() >= 2 && t_.size() == r_.size(),
            ErrorKind::invalid_body, "Profile: need matching knot arrays");
    double w = t_.back() - t_.front();
    require(w > 0, ErrorKind::invalid_body, "Profile: empty domain");
    for (size_t i = 0; i + 1 < t_.size(); ++i)
      require(t_[i + 1] > t_[i], ErrorKind::invalid_body,
              "Profile: knots must be strictly increasing");
    double rmax = 0.0;
    for (size_t i = 0; i < r_.size(); ++i) {
      require(r_[i] >= 0.0, ErrorKind::invalid_body,
              "Profile: negative radius");
      rmax = std::max(rmax, r_[i]);
    }
    require(rmax > 0.0, ErrorKind::invalid_body, "Profile: zero profile");
    for (size_t i = 1; i + 1 < r_.size(); ++i)
      require(r_[i] > 0.0, ErrorKind::invalid_body,
              "Profile: interior radius must be positive");
    double sscale = std::max(1.0, rmax / w);
    double prev = 1e300;
    for (size_t i = 0; i + 1 < t_.size(); ++i) {
      double s = (r_[i + 1] - r_[i]) / (t_[i + 1] - t_[i]);
      require(s <= prev + slope_tol * sscale, ErrorKind::invalid_body,
              "Profile: radius function must be concave");
      prev = s;
    }
  }

  std::vector<double> t_, r_;
  std::function<double(double)> f_;
  mutable bool have_peak_ = false;
  mutable double peak_t_ = 0.0, peak_r_ = 0.0;
};

}  // namespace santalo
