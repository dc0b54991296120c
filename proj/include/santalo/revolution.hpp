#pragma once

#include <optional>

#include "santalo/geometry.hpp"
#include "santalo/polygon.hpp"
#include "santalo/profile.hpp"

namespace santalo {

// Convex body of revolution about the line spanned by `axis`:
// { t*axis + y : tmin <= t <= tmax, y ⟂ axis, |y| <= r(t) } with r the
// concave meridian profile.  For n == 2 this is the meridian region
// itself, symmetric across the axis line.
class RevolutionBody {
public:
  RevolutionBody(int n, Profile profile)
      : RevolutionBody(n, std::move(profile), Direction::axis(n, 0)) {}

  RevolutionBody(int n, Profile profile, Direction axis)
      : n_(n), prof_(std::move(profile)), axis_(axis) {
    require(n >= 2 && n <= 8, ErrorKind::invalid_body,
            "RevolutionBody: unsupported dimension");
    require(axis_.dim() == n, ErrorKind::invalid_body,
            "RevolutionBody: axis dimension mismatch");
  }

  static RevolutionBody ball(int n, double radius = 1.0) {
    double R = radius;
    return RevolutionBody(
        n, Profile::smooth(-R, R, [R](double t) {
          return std::sqrt(std::max(0.0, R * R - t * t));
        }));
  }

  int dim() const { return n_; }
  const Profile& profile() const { return prof_; }
  const Direction& axis() const { return axis_; }

  // Same body after rotating the axis onto the first coordinate axis.
  RevolutionBody canonicalized() const {
    return RevolutionBody(n_, prof_, Direction::axis(n_, 0));
  }

  double volume() const {
    double kappa = unit_ball_volume(n_ - 1);
    int k = n_ - 1;
    return kappa *
           prof_.integrate([k](double, double r) { return std::pow(r, k); });
  }

  Vec centroid() const {
    int k = n_ - 1;
    double m0 =
        prof_.integrate([k](double, double r) { return std::pow(r, k); });
    double m1 = prof_.integrate(
        [k](double t, double r) { return t * std::pow(r, k); });
    return Vec((m1 / m0) * axis_.vec());
  }

  // Integral of x x^T over the body: axial plus isotropic radial part.
  Mat second_moment() const {
    int k = n_ - 1;
    double kappa = unit_ball_volume(n_ - 1);
    double axial = kappa * prof_.integrate([k](double t, double r) {
      return t * t * std::pow(r, k);
    });
    int p = n_ + 1;
    double radial = kappa / p * prof_.integrate([p](double, double r) {
      return std::pow(r, p);
    });
    Mat uu = axis_.vec() * axis_.vec().transpose();
    return axial * uu + radial * (Mat::Identity(n_, n_) - uu);
  }

  Mat covariance() const {
    double V = volume();
    Vec c = centroid();
    return second_moment() / V - c * c.transpose();
  }

  double support(const Vec& v) const {
    double vt = axis_.dot(v);
    double vr = (v - vt * axis_.vec()).norm();
    return prof_.support_1d(vt, vr);
  }

  double diameter() const {
    // The diameter of a revolution body is realized within a meridian
    // plane, so the meridian polygon's diameter is the body's.
    return meridian_polygon().diameter();
  }

  bool contains(const Vec& x, double tol = 1e-9) const {
    double w = prof_.width();
    double t = axis_.dot(x);
    if (t < prof_.tmin() - tol * w || t > prof_.tmax() + tol * w)
      return false;
    double rad = (x - t * axis_.vec()).norm();
    double tc = std::clamp(t, prof_.tmin(), prof_.tmax());
    return rad <= prof_(tc) + tol * std::max(1.0, prof_.max_radius());
  }

  RevolutionBody translated_axial(double d) const {
    return RevolutionBody(n_, prof_.translated(d), axis_);
  }

  RevolutionBody scaled_axial(double a) const {
    return RevolutionBody(n_, prof_.scaled_axis(a), axis_);
  }

  RevolutionBody scaled_radial(double b) const {
    return RevolutionBody(n_, prof_.scaled_radial(b), axis_);
  }

  RevolutionBody scaled(double s) const {
    require(s > 0, ErrorKind::domain_error,
            "RevolutionBody: scale must be positive");
    return RevolutionBody(n_, prof_.scaled_axis(s).scaled_radial(s), axis_);
  }

  // Affine images stay representable only when the map carries the axis
  // line to a line and acts on its orthogonal complement as a uniform
  // scaling; the translation must stay on the new axis line.
  RevolutionBody transformed(const AffineMap& T) const {
    const Mat& A = T.matrix();
    const Vec& b = T.translation();
    Vec u = axis_.vec();
    Vec Au = A * u;
    double alpha = Au.norm();
    require(alpha > 1e-14, ErrorKind::representation,
            "RevolutionBody: map collapses the axis");
    Direction newaxis = Direction::of(Au);
    Mat W = orthonormal_complement(axis_);
    Mat AW = A * W;
    double scale = 1.0 + A.norm();
    require((AW.transpose() * newaxis.vec()).norm() < 1e-10 * scale,
            ErrorKind::representation,
            "RevolutionBody: map does not preserve the revolution symmetry");
    Mat G = AW.transpose() * AW;
    double beta2 = G.trace() / (n_ - 1);
    require((G - beta2 * Mat::Identity(n_ - 1, n_ - 1)).norm() <
                1e-10 * (1.0 + beta2),
            ErrorKind::representation,
            "RevolutionBody: radial action must be a uniform scaling");
    double b_axial = newaxis.dot(b);
    require((b - b_axial * newaxis.vec()).norm() < 1e-12 * (1.0 + b.norm()),
            ErrorKind::representation,
            "RevolutionBody: translation must stay on the axis line");
    Profile p = prof_.scaled_axis(alpha)
                    .translated(b_axial)
                    .scaled_radial(std::sqrt(beta2));
    return RevolutionBody(n_, std::move(p), newaxis);
  }

  // Polar about the interior axis point z0 * axis; the polar of a
  // revolution body about an axis point is a revolution body about the
  // same axis, with meridian the planar polar of the meridian region.
  RevolutionBody polar_axial(double z0) const {
    return RevolutionBody(n_, prof_.polar_about(z0), axis_);
  }

  // Meridian cross-section {(t, s) : |s| <= r(t)} as a polygon in axis
  // coordinates; exact for piecewise-linear profiles, tabulated otherwise.
  Polygon meridian_polygon() const {
    Profile p = prof_.piecewise_linear_kind() ? prof_ : prof_.tabulated();
    const auto& t = p.knots();
    const auto& r = p.values();
    std::vector<Vec> ring;
    for (size_t i = 0; i < t.size(); ++i)
      ring.push_back(make_vec({t[i], -r[i]}));
    for (size_t i = t.size(); i-- > 0;)
      ring.push_back(make_vec({t[i], r[i]}));
    return Polygon::hull_of(ring);
  }

  // Slice by the hyperplane {<v, x> = c}.  The slice of a revolution body
  // is a revolution body one dimension down: with axial component
  // u0 = <v, axis> and radial component w = |v - u0*axis|, the fiber
  // radius at meridian parameter t is sqrt(r(t)^2 - s(t)^2) where
  // s(t) = (c - u0 t)/w, and the in-plane axial coordinate is t/w (the
  // trace of the axis in the slice has speed 1/w).  Slices orthogonal to
  // the axis are balls of radius r(c/u0).  The result is expressed in its
  // own canonical frame (defined up to an in-plane isometry).
  std::optional<RevolutionBody> section(const Direction& v, double c) const {
    require(v.dim() == n_ && n_ >= 3, ErrorKind::domain_error,
            "RevolutionBody::section: needs dimension >= 3");
    double u0 = axis_.dot(v.vec());
    double w = (v.vec() - u0 * axis_.vec()).norm();
    double span = prof_.width();
    if (w < 1e-13) {
      double t = c / u0;
      if (t < prof_.tmin() + 1e-13 * span || t > prof_.tmax() - 1e-13 * span)
        return std::nullopt;
      double R = prof_(t);
      if (R <= 1e-13 * prof_.max_radius()) return std::nullopt;
      return RevolutionBody::ball(n_ - 1, R);
    }
    Profile prof = prof_;
    auto s_of = [u0, w, c](double t) { return (c - u0 * t) / w; };
    auto gap = [&prof, &s_of](double t) {
      return prof(t) - std::abs(s_of(t));
    };
    // gap is concave; its nonnegativity set is the meridian range hit.
    double tstar;
    double gmax =
        golden_max(gap, prof.tmin(), prof.tmax(), 1e-14 * span, &tstar);
    if (gmax <= 1e-12 * prof.max_radius()) return std::nullopt;
    double lo = prof.tmin(), hi = prof.tmax();
    if (gap(lo) < 0.0)
      lo = bisect_root(gap, lo, tstar, gap(lo), gmax, 1e-15 * span);
    if (gap(hi) < 0.0)
      hi = bisect_root(gap, tstar, hi, gmax, gap(hi), 1e-15 * span);
    if (hi - lo <= 1e-13 * span) return std::nullopt;
    auto fiber = [prof, s_of, w](double tau) {
      double t = tau * w;
      double r = prof(t);
      double s = s_of(t);
      return std::sqrt(std::max(0.0, r * r - s * s));
    };
    std::vector<double> extra;
    for (double kn : prof.knots())
      if (kn > lo && kn < hi) extra.push_back(kn / w);
    Profile sec = Profile::smooth(lo / w, hi / w, fiber, 1024, extra);
    return RevolutionBody(n_ - 1, sec);
  }

private:
  int n_;
  Profile prof_;
  Direction axis_;
};

// Volume of the slice of R by the hyperplane {<v, x> = c} without
// materializing the slice: Fubini along the traced axis direction gives
// kappa_{n-2}/w times the integral of fiber^{n-2} dt over the meridian
// range hit.  Returns 0 for empty slices.
inline double section_volume(const RevolutionBody& R, const Direction& v,
                             double c) {
  int n = R.dim();
  require(v.dim() == n && n >= 3, ErrorKind::domain_error,
          "section_volume: needs dimension >= 3");
  const Profile& prof = R.profile();
  double u0 = R.axis().dot(v.vec());
  double w = (v.vec() - u0 * R.axis().vec()).norm();
  double span = prof.width();
  if (w < 1e-13) {
    double t = c / u0;
    if (t < prof.tmin() + 1e-13 * span || t > prof.tmax() - 1e-13 * span)
      return 0.0;
    double rad = prof(t);
    return rad <= 0.0 ? 0.0 : unit_ball_volume(n - 1) * std::pow(rad, n - 1);
  }
  auto gap = [&prof, u0, w, c](double t) {
    return prof(t) - std::abs((c - u0 * t) / w);
  };
  double tstar;
  double gmax = golden_max(gap, prof.tmin(), prof.tmax(), 1e-14 * span, &tstar);
  if (gmax <= 1e-12 * prof.max_radius()) return 0.0;
  double lo = prof.tmin(), hi = prof.tmax();
  if (gap(lo) < 0.0)
    lo = bisect_root(gap, lo, tstar, gap(lo), gmax, 1e-15 * span);
  if (gap(hi) < 0.0)
    hi = bisect_root(gap, tstar, hi, gmax, gap(hi), 1e-15 * span);
  if (hi - lo <= 1e-13 * span) return 0.0;
  auto fiber_pow = [&prof, u0, w, c, n](double t) {
    double r = prof(t);
    double s = (c - u0 * t) / w;
    double f2 = std::max(0.0, r * r - s * s);
    return n == 3 ? std::sqrt(f2) : std::pow(f2, 0.5 * (n - 2));
  };
  std::vector<double> inner;
  for (double kn : prof.knots())
    if (kn > lo && kn < hi) inner.push_back(kn);
  double scale = std::pow(prof.max_radius(), n - 2) * span;
  double integral = adaptive_simpson_segmented(fiber_pow, lo, hi, inner,
                                               1e-12 * std::max(scale, 1e-12));
  return unit_ball_volume(n - 2) / w * integral;
}

}  // namespace santalo
