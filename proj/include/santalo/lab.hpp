#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "santalo/measures.hpp"
#include "santalo/rng.hpp"
#include "santalo/symmetrize.hpp"

namespace santalo {

// ---------------------------------------------------------------------------
// Parametric test families.

// Unit ball with the two opposite caps {|<e0, x>| > h} removed, where the
// height h is chosen so that each removed cap has volume eps.  The result
// interpolates between the ball (eps = 0) and bodies with flat faces whose
// volume-product deficit is of order eps^2.
inline Body caps_cut_ball(int n, double eps) {
  require(n >= 2, ErrorKind::domain_error, "caps_cut_ball: dimension >= 2");
  require(eps >= 0.0, ErrorKind::domain_error,
          "caps_cut_ball: cap volume must be nonnegative");
  double half = 0.5 * unit_ball_volume(n);
  require(eps < 0.45 * half, ErrorKind::domain_error,
          "caps_cut_ball: cap volume too large");
  if (eps == 0.0) return Body::revolution(RevolutionBody::ball(n, 1.0));
  // cap(h) = kappa_{n-1} int_h^1 (1 - t^2)^{(n-1)/2} dt, decreasing in h.
  double kv = unit_ball_volume(n - 1);
  auto cap = [n, kv](double h) {
    auto f = [n](double t) {
      return std::pow(std::max(0.0, 1.0 - t * t), 0.5 * (n - 1));
    };
    return kv * adaptive_simpson(f, h, 1.0, 1e-14);
  };
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 120 && hi - lo > 1e-16; ++it) {
    double mid = 0.5 * (lo + hi);
    if (cap(mid) >= eps)
      lo = mid;
    else
      hi = mid;
  }
  double h = 0.5 * (lo + hi);
  auto f = [](double t) { return std::sqrt(std::max(0.0, 1.0 - t * t)); };
  return Body::revolution(
      RevolutionBody(n, Profile::smooth(-h, h, f, 1024, {0.0})));
}

// Unit ball of the l_p norm restricted to revolution form: the meridian is
// r(t) = (1 - |t|^p)^{1/p} on [-1, 1].  Convex for p >= 1; p = 2 is the
// round ball, large p approaches the cylinder-capped cross section.
inline Body lp_revolution(int n, double p) {
  require(n >= 2, ErrorKind::domain_error, "lp_revolution: dimension >= 2");
  require(p >= 1.0, ErrorKind::domain_error,
          "lp_revolution: exponent must be >= 1 for convexity");
  auto f = [p](double t) {
    double a = std::pow(std::abs(t), p);
    return std::pow(std::max(0.0, 1.0 - a), 1.0 / p);
  };
  return Body::revolution(
      RevolutionBody(n, Profile::smooth(-1.0, 1.0, f, 1024, {0.0})));
}

// Ellipsoid of revolution with axial semi-axis a and radial semi-axis b.
inline Body ellipsoid_revolution(int n, double a, double b) {
  require(n >= 2 && a > 0.0 && b > 0.0, ErrorKind::domain_error,
          "ellipsoid_revolution: semi-axes must be positive");
  auto f = [a, b](double t) {
    return b * std::sqrt(std::max(0.0, 1.0 - (t / a) * (t / a)));
  };
  return Body::revolution(
      RevolutionBody(n, Profile::smooth(-a, a, f, 1024, {0.0})));
}

// Convex hull of `count` random points in a shifted ball; retries until the
// hull is full-dimensional.  Deterministic in the seed.
inline Body random_polytope(int n, int count, std::uint64_t seed) {
  require(n >= 2 && count >= n + 2, ErrorKind::domain_error,
          "random_polytope: need at least n + 2 points");
  Rng rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<Vec> pts;
    pts.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
      double rad = 0.35 + 0.65 * std::pow(rng.uniform01(), 1.0 / n);
      pts.push_back(Vec(rad * rng.unit_vector(n)));
    }
    Vec shift = 0.15 * rng.unit_vector(n);
    for (auto& q : pts) q += shift;
    try {
      if (n == 2) return Body::polygon(Polygon::hull_of(pts));
      return Body::polytope_v(Polytope::from_vertices(n, pts));
    } catch (const Error&) {
      continue;
    }
  }
  fail(ErrorKind::convergence,
       "random_polytope: could not build a full-dimensional hull");
}

// Convex hull of `pairs` random antipodal point pairs; origin-symmetric by
// construction.  Deterministic in the seed.
inline Body random_symmetric_polytope(int n, int pairs, std::uint64_t seed) {
  require(n >= 2 && pairs >= n + 1, ErrorKind::domain_error,
          "random_symmetric_polytope: need at least n + 1 pairs");
  Rng rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<Vec> pts;
    pts.reserve(2 * static_cast<size_t>(pairs));
    for (int i = 0; i < pairs; ++i) {
      double rad = 0.35 + 0.65 * std::pow(rng.uniform01(), 1.0 / n);
      Vec v = rad * rng.unit_vector(n);
      pts.push_back(v);
      pts.push_back(Vec(-v));
    }
    try {
      if (n == 2) return Body::polygon(Polygon::hull_of(pts));
      return Body::polytope_v(Polytope::from_vertices(n, pts));
    } catch (const Error&) {
      continue;
    }
  }
  fail(ErrorKind::convergence,
       "random_symmetric_polytope: could not build a full-dimensional hull");
}

struct FamilyBody {
  double param = 0.0;
  Body body;
};

// Named family constructor used by the scan driver.  "caps" and "lp" take
// their shape parameter from `params`; for "random" and "symmetric" the
// parameter is the body index and the seed is advanced per body.
inline std::vector<FamilyBody> make_family(const std::string& name, int n,
                                           const std::vector<double>& params,
                                           std::uint64_t seed = 1) {
  std::vector<FamilyBody> out;
  out.reserve(params.size());
  if (name == "caps") {
    for (double e : params) out.push_back({e, caps_cut_ball(n, e)});
  } else if (name == "lp") {
    for (double p : params) out.push_back({p, lp_revolution(n, p)});
  } else if (name == "ellipsoid") {
    for (double a : params) {
      require(a > 0.0, ErrorKind::domain_error,
              "make_family: ellipsoid axis ratio must be positive");
      out.push_back(
          {a, ellipsoid_revolution(n, a, std::pow(a, -1.0 / (n - 1)))});
    }
  } else if (name == "random") {
    for (size_t i = 0; i < params.size(); ++i)
      out.push_back({static_cast<double>(i),
                     random_polytope(n, n + 7, seed + i)});
  } else if (name == "symmetric") {
    for (size_t i = 0; i < params.size(); ++i)
      out.push_back({static_cast<double>(i),
                     random_symmetric_polytope(n, n + 5, seed + i)});
  } else {
    fail(ErrorKind::domain_error, "make_family: unknown family '" + name +
                                      "' (caps, lp, ellipsoid, random, "
                                      "symmetric)");
  }
  return out;
}

// ---------------------------------------------------------------------------
// False-centre scan.
//
// Slices of an ellipsoid are ellipsoids, hence centrally symmetric: every
// hyperplane section has Minkowski measure q = 1.  For an origin-symmetric
// body of revolution that is not an ellipsoid, sections through a pencil of
// planes pivoting near a boundary point must eventually be asymmetric, and
// the largest section measure over the pencil certifies that.  The body is
// normalized to half-width 1 and central radius 1 first, so that quadric
// meridians become the round ball and the scan is exact on ellipsoids.

struct FalseCentreReport {
  double q_max = 1.0;    // largest Minkowski measure among the sections
  double m_at_max = 0.0; // pencil parameter attaining it
  // Meridian normal (axial, radial) of the worst plane, in the coordinates
  // of the body as given (before normalization).  Zero when no section
  // exceeded q = 1.
  double wt = 0.0;
  double wr = 0.0;
  std::vector<double> f_t;   // normalized axial knots with |t| >= 0.05
  std::vector<double> f_val; // (1 - r(t)^2) / t^2 there; constant on quadrics
  double f_const_dev = 0.0;  // max |f - mean| over the window
};

inline FalseCentreReport false_centre_scan(const RevolutionBody& C) {
  const int n = C.dim();
  require(n >= 3, ErrorKind::domain_error,
          "false_centre_scan: sections need dimension >= 3");
  const Profile& p = C.profile();
  double span = p.width();
  require(std::abs(p.tmin() + p.tmax()) <= 1e-7 * span,
          ErrorKind::domain_error,
          "false_centre_scan: body must be symmetric about the origin");
  double T = p.tmax();
  double r0 = p(0.0);
  require(T > 0.0 && r0 > 0.0, ErrorKind::invalid_body,
          "false_centre_scan: degenerate body");

  RevolutionBody Cn = C.scaled_axial(1.0 / T).scaled_radial(1.0 / r0);
  Vec u = Cn.axis().vec();
  Mat W = orthonormal_complement(Cn.axis());
  Vec v = W.col(0);
  const Profile& pn = Cn.profile();

  FalseCentreReport rep;

  // Pencil of planes through the pole -u and the meridian point
  // (1 - m, r(1 - m)); m sweeps geometrically toward the opposite pole.
  const int M = 48;
  for (int k = 0; k < M; ++k) {
    double m = 0.25 * std::pow(1e-3, static_cast<double>(k) / (M - 1));
    double rm = pn(1.0 - m);
    if (rm <= 1e-9) continue;
    Vec w = -rm * u + (2.0 - m) * v;
    w /= w.norm();
    double c = w.dot(-u);
    auto sec = Cn.section(Direction::of(w), c);
    if (!sec) continue;
    SymmetryReport q = minkowski_q(Body::revolution(*sec));
    if (q.q > rep.q_max) {
      rep.q_max = q.q;
      rep.m_at_max = m;
      // Undo the normalization: a plane with normalized meridian normal
      // (wt, wr) pulls back to one with normal (wt / T, wr / r0).
      double bt = w.dot(u) / T, br = w.dot(v) / r0;
      double bn = std::hypot(bt, br);
      rep.wt = bt / bn;
      rep.wr = br / bn;
    }
  }

  // Shape diagnostic: f(t) = (1 - r(t)^2) / t^2 on the normalized meridian
  // is constant exactly for quadric profiles.  Piecewise-linear meridians
  // get a 3-point moving average within each sign window to damp knot
  // noise.
  Profile tab = pn.piecewise_linear_kind() ? pn : pn.tabulated();
  const auto& kt = tab.knots();
  const auto& kr = tab.values();
  for (size_t i = 0; i < kt.size(); ++i) {
    if (std::abs(kt[i]) < 0.05) continue;
    rep.f_t.push_back(kt[i]);
    rep.f_val.push_back((1.0 - kr[i] * kr[i]) / (kt[i] * kt[i]));
  }
  if (pn.piecewise_linear_kind() && rep.f_val.size() >= 3) {
    std::vector<double> sm = rep.f_val;
    for (size_t i = 1; i + 1 < sm.size(); ++i) {
      if ((rep.f_t[i - 1] < 0.0) != (rep.f_t[i + 1] < 0.0)) continue;
      sm[i] = (rep.f_val[i - 1] + rep.f_val[i] + rep.f_val[i + 1]) / 3.0;
    }
    rep.f_val = std::move(sm);
  }
  if (!rep.f_val.empty()) {
    double mean = 0.0;
    for (double f : rep.f_val) mean += f;
    mean /= static_cast<double>(rep.f_val.size());
    for (double f : rep.f_val)
      rep.f_const_dev = std::max(rep.f_const_dev, std::abs(f - mean));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Stability scan: volume-product deficit against distance from the ball.

struct StabilityRecord {
  double param = 0.0;
  double deficit = 0.0; // 1 - V(K) V(K^z) / kappa_n^2
  double bm_minus_1 = std::numeric_limits<double>::quiet_NaN();
  double q_max = 1.0;
  double seconds = 0.0;
};

// Least-squares slope of log(bm - 1) against log(deficit), restricted to
// the calibrated window where both are resolvable; NaN when fewer than four
// records qualify.
inline double fit_exponent(const std::vector<StabilityRecord>& recs) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : recs) {
    if (!(r.deficit >= 1e-4 && r.deficit <= 1e-2)) continue;
    if (!(r.bm_minus_1 > 1e-6) || !std::isfinite(r.bm_minus_1)) continue;
    pts.push_back({std::log(r.deficit), std::log(r.bm_minus_1)});
  }
  if (pts.size() < 4) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double m = static_cast<double>(pts.size());
  double denom = m * sxx - sx * sx;
  if (std::abs(denom) < 1e-30) return std::numeric_limits<double>::quiet_NaN();
  return (m * sxy - sx * sy) / denom;
}

struct ScanResult {
  std::vector<StabilityRecord> records;
  double exponent = std::numeric_limits<double>::quiet_NaN();
};

// Per body: volume-product deficit, distance from the nearest ellipsoid
// (NaN when the body is not origin-symmetric or the measure is not
// available in its representation), and the largest section asymmetry.
inline ScanResult stability_scan(const std::vector<FamilyBody>& family) {
  ScanResult out;
  out.records.reserve(family.size());
  for (const auto& fb : family) {
    auto t0 = std::chrono::steady_clock::now();
    StabilityRecord rec;
    rec.param = fb.param;
    ProductReport pr = volume_product_report(fb.body);
    rec.deficit = pr.deficit;
    try {
      rec.bm_minus_1 = bm_distance_ball(fb.body) - 1.0;
    } catch (const Error&) {
      // left NaN: representation without a computable ellipsoid distance
    }
    if (fb.body.is_revolution() && fb.body.dim() >= 3)
      rec.q_max = false_centre_scan(fb.body.as_revolution()).q_max;
    else
      rec.q_max = minkowski_q(fb.body).q;
    rec.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    out.records.push_back(rec);
  }
  std::sort(out.records.begin(), out.records.end(),
            [](const StabilityRecord& a, const StabilityRecord& b) {
              return a.param < b.param;
            });
  out.exponent = fit_exponent(out.records);
  return out;
}

// CSV table of a scan.  Timings vary across runs; pass with_timing = false
// to zero that column so identical configurations produce identical bytes.
inline std::string scan_to_csv(const ScanResult& s, bool with_timing = true) {
  std::string out = "param,deficit,bm_minus_1,q_max,seconds\n";
  char buf[200];
  for (const auto& r : s.records) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", r.param,
                  r.deficit, r.bm_minus_1, r.q_max,
                  with_timing ? r.seconds : 0.0);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "# fitted_exponent = %.17g\n", s.exponent);
  out += buf;
  return out;
}

// ---------------------------------------------------------------------------
// Section containment behind the polar-volume growth under symmetrization.
//
// For an origin-symmetric K and the symmetral S of K about u^perp, every
// slice of S^o at height t contains the central symmetral of the matching
// slice of K^o, so V(S^o) >= V(K^o) by Fubini.  Checked on polytopes in
// dimension 3, where both sides are exact polygon computations.

struct SectionContainmentReport {
  int sections_checked = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  double polar_volume_gain = 0.0; // V(S^o) - V(K^o)
};

inline SectionContainmentReport section_containment_check(const Body& K,
                                                          const Direction& u,
                                                          int npts = 20) {
  require(K.dim() == 3 && u.dim() == 3, ErrorKind::domain_error,
          "section_containment_check: needs a 3-dimensional body");
  require(K.is_polytope(), ErrorKind::representation,
          "section_containment_check: needs a polytope");
  Vec z = Vec::Zero(3);
  require(centrally_symmetric_about(K, z, 1e-7 * K.diameter()),
          ErrorKind::domain_error,
          "section_containment_check: body must be origin-symmetric");
  require(npts >= 1, ErrorKind::domain_error,
          "section_containment_check: npts >= 1");

  Body S = steiner(K, Hyperplane(u, 0.0));
  Body Kp = polar(K, z);
  Body Sp = polar(S, z);

  SectionContainmentReport rep;
  double hi = Kp.support(u.vec());
  double lo = -Kp.support(Vec(-u.vec()));
  for (int i = 1; i <= npts; ++i) {
    double t = lo + (hi - lo) * i / (npts + 1);
    auto a = Kp.section(u, t);
    auto b = Sp.section(u, t);
    if (!a || !b) continue;
    Polygon pa = a->to_polygon();
    Polygon pb = b->to_polygon();
    Polygon D = Polygon::minkowski_sum(pa, pa.negated()).scaled(0.5);
    Mat A;
    Vec off;
    pb.halfplanes(A, off);
    for (int vi = 0; vi < D.size(); ++vi) {
      const Vec& q = D.vertex(vi);
      for (int r = 0; r < A.rows(); ++r)
        rep.worst_margin =
            std::min(rep.worst_margin, off[r] - A.row(r).dot(q));
    }
    ++rep.sections_checked;
  }
  rep.polar_volume_gain = Sp.volume() - Kp.volume();
  return rep;
}

// ---------------------------------------------------------------------------
// Polar volume of a Steiner symmetral of a body of revolution.

namespace labdetail {

struct P2 {
  double x = 0.0;
  double y = 0.0;
};

// Steiner symmetral of a convex CCW ring about the line through the origin
// along d (unit), as a CCW ring.  The two xi-monotone chains of the ring
// are walked once, so the cost is linear in the vertex count.
inline std::vector<P2> line_symmetral(const std::vector<P2>& ring, double dx,
                                      double dy) {
  const int sz = static_cast<int>(ring.size());
  if (sz == 0) return {};
  auto xi_of = [&](int i) { return dx * ring[i].x + dy * ring[i].y; };
  auto eta_of = [&](int i) { return -dy * ring[i].x + dx * ring[i].y; };
  if (sz <= 2) {
    // Degenerate: center the set on the line at its mean abscissa.
    double xi = 0.0;
    for (int i = 0; i < sz; ++i) xi += xi_of(i);
    xi /= sz;
    return {{xi * dx, xi * dy}};
  }
  int imin = 0, imax = 0;
  for (int i = 1; i < sz; ++i) {
    if (xi_of(i) < xi_of(imin)) imin = i;
    if (xi_of(i) > xi_of(imax)) imax = i;
  }
  double span = xi_of(imax) - xi_of(imin);
  if (span <= 0.0) {
    double xi = xi_of(imin);
    return {{xi * dx, xi * dy}};
  }
  // Chains imin -> imax and imax -> imin, both xi-monotone by convexity.
  auto chain = [&](int from, int to) {
    std::vector<int> c;
    for (int i = from;; i = (i + 1) % sz) {
      c.push_back(i);
      if (i == to) break;
    }
    return c;
  };
  std::vector<int> ca = chain(imin, imax);
  std::vector<int> cb = chain(imax, imin);
  std::reverse(cb.begin(), cb.end()); // now xi-ascending as well

  // Breakpoints: merged xi values of both chains.
  std::vector<double> xs;
  xs.reserve(ca.size() + cb.size());
  {
    size_t i = 0, j = 0;
    while (i < ca.size() || j < cb.size()) {
      double va = i < ca.size() ? xi_of(ca[i]) : 1e300;
      double vb = j < cb.size() ? xi_of(cb[j]) : 1e300;
      if (va <= vb) {
        xs.push_back(va);
        ++i;
      } else {
        xs.push_back(vb);
        ++j;
      }
    }
  }
  xs.erase(std::unique(xs.begin(), xs.end(),
                       [span](double a, double b) {
                         return std::abs(a - b) <= 1e-14 * span;
                       }),
           xs.end());

  // Evaluate each chain's eta at an abscissa, advancing a segment cursor.
  struct Cursor {
    const std::vector<int>* idx;
    size_t seg = 0;
  };
  Cursor A{&ca}, B{&cb};
  auto eval = [&](Cursor& c, double x) {
    const auto& id = *c.idx;
    while (c.seg + 1 < id.size() && xi_of(id[c.seg + 1]) < x) ++c.seg;
    size_t j = c.seg;
    if (j + 1 >= id.size()) return eta_of(id.back());
    double x0 = xi_of(id[j]), x1 = xi_of(id[j + 1]);
    if (x1 - x0 <= 1e-300) return eta_of(id[j + 1]);
    double s = std::clamp((x - x0) / (x1 - x0), 0.0, 1.0);
    return eta_of(id[j]) + s * (eta_of(id[j + 1]) - eta_of(id[j]));
  };

  std::vector<double> half(xs.size());
  for (size_t k = 0; k < xs.size(); ++k) {
    double ea = eval(A, xs[k]);
    double eb = eval(B, xs[k]);
    half[k] = 0.5 * std::abs(ea - eb);
  }
  std::vector<P2> out;
  out.reserve(2 * xs.size());
  for (size_t k = 0; k < xs.size(); ++k)
    out.push_back({xs[k] * dx + half[k] * dy, xs[k] * dy - half[k] * dx});
  for (size_t k = xs.size(); k-- > 0;)
    out.push_back({xs[k] * dx - half[k] * dy, xs[k] * dy + half[k] * dx});
  return out;
}

// Lower envelope of the lines sigma(rho) = (1 - rho h[k]) / c[k],
// integrated in closed form against sigma^(n-2) rho d rho over
// [0, rho_max].  The levels are nested, so slope and intercept are both
// monotone in k and the envelope is a single monotone-chain pass.
inline double envelope_integral(const std::vector<double>& h,
                                const std::vector<double>& c, double rho_max,
                                int n) {
  struct Line {
    double a; // intercept
    double b; // slope
  };
  std::vector<Line> st;
  std::vector<double> start;
  st.reserve(h.size());
  start.reserve(h.size());
  for (size_t kk = h.size(); kk-- > 0;) {
    Line L{1.0 / c[kk], -h[kk] / c[kk]};
    bool drop = false;
    while (!st.empty()) {
      double denom = st.back().b - L.b;
      if (std::abs(denom) < 1e-14 * (std::abs(L.b) + 1e-14)) {
        if (L.a >= st.back().a) {
          drop = true; // parallel and never below
          break;
        }
        st.pop_back();
        start.pop_back();
        continue;
      }
      double xi = (L.a - st.back().a) / denom;
      if (xi <= start.back()) {
        st.pop_back();
        start.pop_back();
        continue;
      }
      start.push_back(xi);
      break;
    }
    if (drop) continue;
    if (st.empty()) start.push_back(0.0);
    st.push_back(L);
  }

  double total = 0.0;
  for (size_t i = 0; i < st.size(); ++i) {
    double xa = std::max(0.0, start[i]);
    double xb = (i + 1 < st.size()) ? std::min(rho_max, start[i + 1])
                                    : rho_max;
    if (xb <= xa) continue;
    double a = st[i].a, b = st[i].b;
    if (a + b * xb < 0.0 && b < 0.0) xb = std::min(xb, -a / b);
    if (xb <= xa) continue;
    auto p2 = [](double x) { return x * x; };
    auto p3 = [](double x) { return x * x * x; };
    auto p4 = [&p2](double x) { return p2(x) * p2(x); };
    if (n == 3) {
      total += 0.5 * a * (p2(xb) - p2(xa)) + b * (p3(xb) - p3(xa)) / 3.0;
    } else {
      total += 0.5 * a * a * (p2(xb) - p2(xa)) +
               2.0 * a * b * (p3(xb) - p3(xa)) / 3.0 +
               0.25 * b * b * (p4(xb) - p4(xa));
    }
  }
  return total;
}

}  // namespace labdetail

// Volume of the polar of the Steiner symmetral of an origin-symmetric body
// of revolution about the hyperplane through the origin whose normal has
// meridian components (wt, wr), without materializing the symmetral.
//
// The symmetral keeps the rotational symmetry about the plane L spanned by
// the axis and the in-meridian radial leg of the normal.  Slicing at radial
// distance c from L gives nested planar regions D_c = {|s| <= sqrt(r(t)^2 -
// c^2)}; the symmetral slices are their planar line symmetrals, and a dual
// point rho e_phi + zeta lies in the polar iff rho h_c(phi) + c |zeta| <= 1
// for every level c.  Level supports are swept with rotating cursors and
// the radial integral of the line envelope is evaluated in closed form.
inline double steiner_polar_volume(const RevolutionBody& C, double wt,
                                   double wr, int levels = 1024,
                                   int angles = 8192) {
  const int n = C.dim();
  require(n == 3 || n == 4, ErrorKind::domain_error,
          "steiner_polar_volume: dimension must be 3 or 4");
  require(levels >= 64 && angles >= 256 && angles % 2 == 0,
          ErrorKind::domain_error, "steiner_polar_volume: grid too coarse");
  const Profile& p0 = C.profile();
  require(std::abs(p0.tmin() + p0.tmax()) <= 1e-7 * p0.width(),
          ErrorKind::domain_error,
          "steiner_polar_volume: body must be symmetric about the origin");
  double wn = std::hypot(wt, wr);
  require(wn > 0.0, ErrorKind::domain_error,
          "steiner_polar_volume: zero normal");
  double nwt = wt / wn, nwr = wr / wn;
  // Line direction of the symmetrization axis inside the meridian plane.
  double dx = -nwr, dy = nwt;

  Profile tab = p0.piecewise_linear_kind() ? p0 : p0.tabulated();
  const auto& kt = tab.knots();
  const auto& kr = tab.values();
  const int m = static_cast<int>(kt.size());
  double rmax = tab.max_radius();
  double tpk = tab.argmax_radius();

  const int M = levels;
  std::vector<double> cs(static_cast<size_t>(M) + 1);
  for (int k = 0; k <= M; ++k) cs[static_cast<size_t>(k)] = rmax * k / M;

  // Level rings, symmetrized.  Index 0 is the full meridian region and only
  // bounds the integration range; indices 1..M carry the envelope lines.
  std::vector<std::vector<labdetail::P2>> ring(static_cast<size_t>(M) + 1);
  for (int k = 0; k <= M; ++k) {
    double c = cs[static_cast<size_t>(k)];
    std::vector<labdetail::P2> pts;
    if (k < M) {
      // Upper chain left to right, then lower chain right to left: CCW.
      std::vector<labdetail::P2> up, down;
      for (int i = 0; i < m; ++i) {
        double g2 = kr[static_cast<size_t>(i)] * kr[static_cast<size_t>(i)] -
                    c * c;
        if (g2 > 0.0) {
          double g = std::sqrt(g2);
          up.push_back({kt[static_cast<size_t>(i)], g});
          down.push_back({kt[static_cast<size_t>(i)], -g});
        }
        if (i + 1 < m) {
          bool in0 = kr[static_cast<size_t>(i)] > c;
          bool in1 = kr[static_cast<size_t>(i) + 1] > c;
          if (in0 != in1) {
            double s = (c - kr[static_cast<size_t>(i)]) /
                       (kr[static_cast<size_t>(i) + 1] -
                        kr[static_cast<size_t>(i)]);
            double tc = kt[static_cast<size_t>(i)] +
                        s * (kt[static_cast<size_t>(i) + 1] -
                             kt[static_cast<size_t>(i)]);
            up.push_back({tc, 0.0});
            down.push_back({tc, 0.0});
          }
        }
      }
      pts.reserve(up.size() + down.size());
      for (size_t i = down.size(); i-- > 0;) pts.push_back(down[i]);
      for (const auto& q : up) pts.push_back(q);
    }
    if (pts.size() >= 3) {
      ring[static_cast<size_t>(k)] = labdetail::line_symmetral(pts, dx, dy);
    } else {
      // Degenerate top slice: the peak point projected onto the line.
      double xi = dx * tpk;
      ring[static_cast<size_t>(k)] = {{xi * dx, xi * dy}};
    }
  }

  // Rotating support cursors, one per level; phi sweeps [0, pi] and the
  // argmax advances monotonically around each CCW ring.
  std::vector<int> ptr(static_cast<size_t>(M) + 1, 0);
  {
    for (int k = 0; k <= M; ++k) {
      const auto& R = ring[static_cast<size_t>(k)];
      int best = 0;
      for (size_t i = 1; i < R.size(); ++i)
        if (R[i].x > R[best].x) best = static_cast<int>(i);
      ptr[static_cast<size_t>(k)] = best;
    }
  }
  std::vector<double> hk(static_cast<size_t>(M) + 1, 0.0);
  std::vector<double> hline(static_cast<size_t>(M));
  std::vector<double> cline(static_cast<size_t>(M));
  for (int k = 1; k <= M; ++k)
    cline[static_cast<size_t>(k) - 1] = cs[static_cast<size_t>(k)];

  std::vector<double> integrand(static_cast<size_t>(angles) + 1, 0.0);
  for (int j = 0; j <= angles; ++j) {
    double phi = std::numbers::pi * j / angles;
    double ex = std::cos(phi), ey = std::sin(phi);
    for (int k = 0; k <= M; ++k) {
      const auto& R = ring[static_cast<size_t>(k)];
      int sz = static_cast<int>(R.size());
      int i = ptr[static_cast<size_t>(k)];
      double cur = ex * R[static_cast<size_t>(i)].x +
                   ey * R[static_cast<size_t>(i)].y;
      for (int guard = 0; guard < 2 * sz + 8; ++guard) {
        int i2 = (i + 1) % sz;
        double nxt = ex * R[static_cast<size_t>(i2)].x +
                     ey * R[static_cast<size_t>(i2)].y;
        if (nxt > cur) {
          i = i2;
          cur = nxt;
        } else {
          break;
        }
      }
      ptr[static_cast<size_t>(k)] = i;
      hk[static_cast<size_t>(k)] = cur;
    }
    require(hk[0] > 1e-12, ErrorKind::convergence,
            "steiner_polar_volume: degenerate symmetral support");
    double rho_max = 1.0 / hk[0];
    for (int k = 1; k <= M; ++k)
      hline[static_cast<size_t>(k) - 1] = hk[static_cast<size_t>(k)];
    integrand[static_cast<size_t>(j)] =
        labdetail::envelope_integral(hline, cline, rho_max, n);
  }

  // Composite Simpson over [0, pi]; the symmetral is origin-symmetric, so
  // the other half-turn duplicates this one.
  double hstep = std::numbers::pi / angles;
  double sum = integrand[0] + integrand[static_cast<size_t>(angles)];
  for (int j = 1; j < angles; ++j)
    sum += (j % 2 ? 4.0 : 2.0) * integrand[static_cast<size_t>(j)];
  double I = sum * hstep / 3.0;
  return unit_ball_volume(n - 2) * 2.0 * I;
}

// ---------------------------------------------------------------------------
// Inequality chain: original product, reduced product, one extra
// symmetrization step when a false centre persists, and the round bound.

struct ChainReport {
  double product_original = 0.0;  // V(K) V(K^z) at the minimizing z
  double product_reduced = 0.0;   // V(C) V(C^o) after the full reduction
  double product_steinered = 0.0; // after the extra step (or = reduced)
  double bound = 0.0;             // kappa_n^2
  double q_max = 1.0;             // false-centre measure of the reduced body
  bool steiner_step = false;
  bool ok_reduce = false;   // original <= reduced, within 1e-6 relative
  bool ok_steiner = false;  // reduced <= steinered, within 1e-6 relative
  bool ok_bound = false;    // steinered <= kappa_n^2, within 1e-6 relative
};

inline ChainReport bs_chain_check(const Body& K, int grid = 1024) {
  const int n = K.dim();
  require(n >= 2 && n <= 4, ErrorKind::domain_error,
          "bs_chain_check: dimension must be 2, 3, or 4");
  ChainReport rep;
  double kn = unit_ball_volume(n);
  rep.bound = kn * kn;

  rep.product_original = volume_product_report(K).product;

  ReductionResult red = full_reduction(K, grid);
  // Evaluate the reduced body through its meridian tabulation: the pipeline
  // profiles close over section integrals, and the knots are already dense
  // enough that the tabulation error is far below the chain margins.
  RevolutionBody C(n, red.body.profile().piecewise_linear_kind()
                          ? red.body.profile()
                          : red.body.profile().tabulated(),
                   red.body.axis());
  double vc = Body::revolution(C).volume();
  double vp = Body::revolution(C.polar_axial(0.0)).volume();
  rep.product_reduced = vc * vp;

  if (n >= 3) {
    FalseCentreReport fc = false_centre_scan(C);
    rep.q_max = fc.q_max;
    if (fc.q_max > 1.0 + 1e-6) {
      rep.steiner_step = true;
      rep.product_steinered = vc * steiner_polar_volume(C, fc.wt, fc.wr);
    } else {
      rep.product_steinered = rep.product_reduced;
    }
  } else {
    // Planar reduced bodies are origin-symmetric, hence q = 1: no further
    // step is available from this detector.
    rep.q_max = 1.0;
    rep.product_steinered = rep.product_reduced;
  }

  rep.ok_reduce = rep.product_original <= rep.product_reduced * (1.0 + 1e-6);
  rep.ok_steiner =
      rep.product_reduced <= rep.product_steinered * (1.0 + 1e-6);
  rep.ok_bound = rep.product_steinered <= rep.bound * (1.0 + 1e-6);
  return rep;
}

}  // namespace santalo
