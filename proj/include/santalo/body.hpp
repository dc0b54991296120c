#pragma once

#include <optional>
#include <string>
#include <variant>

#include "santalo/geometry.hpp"
#include "santalo/polygon.hpp"
#include "santalo/polytope.hpp"
#include "santalo/revolution.hpp"

namespace santalo {

// Declared representation of a body.  polytope_h and polytope_v share the
// same internal type; the kind records which description is authoritative
// for serialization and conversion.
enum class BodyKind { polytope_h, polytope_v, polygon, revolution };

inline std::string body_kind_name(BodyKind k) {
  switch (k) {
    case BodyKind::polytope_h: return "polytope_h";
    case BodyKind::polytope_v: return "polytope_v";
    case BodyKind::polygon: return "polygon";
    case BodyKind::revolution: return "revolution";
  }
  return "?";
}

class Body {
public:
  static Body polytope_h(Polytope P) {
    return Body(BodyKind::polytope_h, std::move(P));
  }
  static Body polytope_v(Polytope P) {
    return Body(BodyKind::polytope_v, std::move(P));
  }
  static Body polygon(Polygon P) { return Body(BodyKind::polygon, std::move(P)); }
  static Body revolution(RevolutionBody R) {
    return Body(BodyKind::revolution, std::move(R));
  }

  BodyKind kind() const { return kind_; }

  bool is_polytope() const {
    return std::holds_alternative<Polytope>(rep_);
  }
  bool is_polygon() const { return std::holds_alternative<Polygon>(rep_); }
  bool is_revolution() const {
    return std::holds_alternative<RevolutionBody>(rep_);
  }

  const Polytope& as_polytope() const {
    require(is_polytope(), ErrorKind::representation,
            "Body: not a polytope");
    return std::get<Polytope>(rep_);
  }
  const Polygon& as_polygon() const {
    require(is_polygon(), ErrorKind::representation, "Body: not a polygon");
    return std::get<Polygon>(rep_);
  }
  const RevolutionBody& as_revolution() const {
    require(is_revolution(), ErrorKind::representation,
            "Body: not a revolution body");
    return std::get<RevolutionBody>(rep_);
  }

  int dim() const {
    return std::visit(
        [](const auto& b) -> int {
          using T = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<T, Polygon>) return 2;
          else return b.dim();
        },
        rep_);
  }

  double volume() const {
    return std::visit(
        [](const auto& b) -> double {
          using T = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<T, Polygon>) return b.area();
          else return b.volume();
        },
        rep_);
  }

  Vec centroid() const {
    return std::visit([](const auto& b) -> Vec { return b.centroid(); }, rep_);
  }

  Mat second_moment() const {
    return std::visit([](const auto& b) -> Mat { return b.second_moment(); },
                      rep_);
  }

  Mat covariance() const {
    Vec c = centroid();
    return second_moment() / volume() - c * c.transpose();
  }

  double support(const Vec& u) const {
    return std::visit([&](const auto& b) -> double { return b.support(u); },
                      rep_);
  }

  bool contains(const Vec& x, double tol = 1e-9) const {
    return std::visit(
        [&](const auto& b) -> bool { return b.contains(x, tol); }, rep_);
  }

  double diameter() const {
    return std::visit([](const auto& b) -> double { return b.diameter(); },
                      rep_);
  }

  Body translated(const Vec& v) const {
    return std::visit(
        [&](const auto& b) -> Body {
          using T = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<T, RevolutionBody>) {
            double d = b.axis().dot(v);
            require((v - d * b.axis().vec()).norm() < 1e-12 * (1.0 + v.norm()),
                    ErrorKind::representation,
                    "Body: revolution bodies translate along the axis only");
            return Body(BodyKind::revolution, b.translated_axial(d));
          } else {
            return Body(BodyKindOf<T>(), b.translated(v));
          }
        },
        rep_);
  }

  Body transformed(const AffineMap& T) const {
    return std::visit(
        [&](const auto& b) -> Body {
          using U = std::decay_t<decltype(b)>;
          return Body(BodyKindOf<U>(), b.transformed(T));
        },
        rep_);
  }

  // Slice {x : <u, x> = t} as a body one dimension down.  Polytope and
  // polygon slices are expressed in the deterministic complement frame of
  // u; revolution slices are canonical up to an in-plane isometry.
  std::optional<Body> section(const Direction& u, double t) const {
    if (is_revolution() && dim() >= 3) {
      auto s = as_revolution().section(u, t);
      if (!s) return std::nullopt;
      return Body(BodyKind::revolution, std::move(*s));
    }
    if (is_polygon() || dim() == 2) {
      Polygon poly = to_polygon();
      auto ch = poly.chord(u.vec(), t);
      if (!ch) return std::nullopt;
      Mat W = orthonormal_complement(u);
      Vec o = t * u.vec();
      Vec a = W.transpose() * (ch->first - o);
      Vec b = W.transpose() * (ch->second - o);
      if (std::abs(a[0] - b[0]) < 1e-13) return std::nullopt;
      try {
        return Body(BodyKind::polytope_v,
                    Polytope::from_vertices(1, {a, b}));
      } catch (const Error&) {
        return std::nullopt;
      }
    }
    auto s = as_polytope().section(u, t);
    if (!s) return std::nullopt;
    return Body(BodyKind::polytope_h, std::move(*s));
  }

  Polygon to_polygon() const {
    require(dim() == 2, ErrorKind::representation,
            "Body: planar bodies only");
    if (is_polygon()) return as_polygon();
    if (is_polytope()) return as_polytope().to_polygon();
    // The meridian polygon lives in axis coordinates; map it back into the
    // ambient plane spanned by (axis, axis-perp).
    const RevolutionBody& R = as_revolution();
    Mat F(2, 2);
    F.col(0) = R.axis().vec();
    F.col(1) = orthonormal_complement(R.axis()).col(0);
    return R.meridian_polygon().transformed(AffineMap::linear(F));
  }

  // Re-expresses the body in another declared representation.  Only exact
  // conversions are offered: the two polytope descriptions interchange in
  // any dimension, planar polytopes interchange with polygons, and a
  // piecewise-linear planar revolution body is its meridian polygon.
  Body converted_to(BodyKind target) const {
    if (target == kind_) return *this;
    if (is_revolution()) {
      const bool planar_exact =
          dim() == 2 && as_revolution().profile().piecewise_linear_kind();
      require(planar_exact && target != BodyKind::revolution,
              ErrorKind::representation,
              "Body: no exact conversion from this revolution body");
    }
    switch (target) {
      case BodyKind::polytope_h:
      case BodyKind::polytope_v: {
        Polytope P =
            is_polytope() ? as_polytope() : Polytope::from_polygon(to_polygon());
        return Body(target, std::move(P));
      }
      case BodyKind::polygon:
        return Body(BodyKind::polygon, to_polygon());
      case BodyKind::revolution:
        fail(ErrorKind::representation,
             "Body: conversion to a revolution body is not defined");
    }
    fail(ErrorKind::representation, "Body: unknown conversion target");
  }

private:
  template <typename T>
  BodyKind BodyKindOf() const {
    if constexpr (std::is_same_v<T, Polygon>) return BodyKind::polygon;
    else if constexpr (std::is_same_v<T, RevolutionBody>)
      return BodyKind::revolution;
    else
      return kind_ == BodyKind::polytope_v ? BodyKind::polytope_v
                                           : BodyKind::polytope_h;
  }

  Body(BodyKind k, Polytope P) : kind_(k), rep_(std::move(P)) {}
  Body(BodyKind k, Polygon P) : kind_(k), rep_(std::move(P)) {}
  Body(BodyKind k, RevolutionBody R) : kind_(k), rep_(std::move(R)) {}

  BodyKind kind_;
  std::variant<Polytope, Polygon, RevolutionBody> rep_;
};

}  // namespace santalo
