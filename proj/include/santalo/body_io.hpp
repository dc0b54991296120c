#pragma once

#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "santalo/body.hpp"

namespace santalo {

using json = nlohmann::json;

namespace iodetail {

inline double finite_number(const json& j, const std::string& where) {
  require(j.is_number(), ErrorKind::io_error, where + ": expected a number");
  double x = j.get<double>();
  require(std::isfinite(x), ErrorKind::io_error, where + ": non-finite value");
  return x;
}

inline std::vector<double> number_array(const json& j,
                                        const std::string& where) {
  require(j.is_array(), ErrorKind::io_error, where + ": expected an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i)
    out.push_back(finite_number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<Vec> point_array(const json& j, int n,
                                    const std::string& where) {
  require(j.is_array(), ErrorKind::io_error, where + ": expected an array");
  std::vector<Vec> out;
  for (size_t i = 0; i < j.size(); ++i) {
    auto row = number_array(j[i], where + "[" + std::to_string(i) + "]");
    require(static_cast<int>(row.size()) == n, ErrorKind::io_error,
            where + "[" + std::to_string(i) + "]: expected " +
                std::to_string(n) + " coordinates");
    Vec v(n);
    for (int k = 0; k < n; ++k) v[k] = row[static_cast<size_t>(k)];
    out.push_back(v);
  }
  return out;
}

inline json to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

inline json to_json(const Mat& m) {
  json a = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    a.push_back(to_json(Vec(m.row(i).transpose())));
  return a;
}

}  // namespace iodetail

// Parses a body from the JSON document
//   {"kind": "polytope_h"|"polytope_v"|"polygon"|"revolution",
//    "n": int, "data": {...}, "meridian": {"t": [...], "r": [...]}}
// validating all structural and geometric invariants; the thrown Error
// carries the first violation encountered.
inline Body body_from_json(const json& j) {
  require(j.is_object(), ErrorKind::io_error, "body: expected a JSON object");
  require(j.contains("kind") && j["kind"].is_string(), ErrorKind::io_error,
          "body: missing string field 'kind'");
  std::string kind = j["kind"].get<std::string>();
  require(j.contains("n") && j["n"].is_number_integer(), ErrorKind::io_error,
          "body: missing integer field 'n'");
  int n = j["n"].get<int>();
  require(n >= 2 && n <= 4, ErrorKind::io_error,
          "body: dimension n must be 2, 3, or 4");

  if (kind == "revolution") {
    require(j.contains("meridian") && j["meridian"].is_object(),
            ErrorKind::io_error,
            "body: revolution kind needs object field 'meridian'");
    const json& m = j["meridian"];
    require(m.contains("t") && m.contains("r"), ErrorKind::io_error,
            "meridian: needs arrays 't' and 'r'");
    auto t = iodetail::number_array(m["t"], "meridian.t");
    auto r = iodetail::number_array(m["r"], "meridian.r");
    require(t.size() == r.size(), ErrorKind::io_error,
            "meridian: 't' and 'r' must have equal length");
    return Body::revolution(
        RevolutionBody(n, Profile::piecewise_linear(std::move(t), std::move(r))));
  }

  require(j.contains("data") && j["data"].is_object(), ErrorKind::io_error,
          "body: missing object field 'data'");
  const json& d = j["data"];
  if (kind == "polytope_h") {
    require(d.contains("A") && d.contains("b"), ErrorKind::io_error,
            "data: polytope_h needs arrays 'A' and 'b'");
    auto rows = iodetail::point_array(d["A"], n, "data.A");
    auto b = iodetail::number_array(d["b"], "data.b");
    require(rows.size() == b.size(), ErrorKind::io_error,
            "data: 'A' and 'b' must have equal length");
    Mat A(static_cast<Eigen::Index>(rows.size()), n);
    Vec bv(static_cast<Eigen::Index>(b.size()));
    for (size_t i = 0; i < rows.size(); ++i) {
      A.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
      bv[static_cast<Eigen::Index>(i)] = b[i];
    }
    return Body::polytope_h(Polytope::from_halfspaces(n, A, bv));
  }
  if (kind == "polytope_v") {
    require(d.contains("vertices"), ErrorKind::io_error,
            "data: polytope_v needs array 'vertices'");
    auto pts = iodetail::point_array(d["vertices"], n, "data.vertices");
    return Body::polytope_v(Polytope::from_vertices(n, pts));
  }
  if (kind == "polygon") {
    require(n == 2, ErrorKind::io_error, "body: polygon kind needs n = 2");
    require(d.contains("vertices"), ErrorKind::io_error,
            "data: polygon needs array 'vertices'");
    auto pts = iodetail::point_array(d["vertices"], 2, "data.vertices");
    return Body::polygon(Polygon::from_vertices(pts));
  }
  fail(ErrorKind::io_error, "body: unknown kind '" + kind + "'");
}

inline json body_to_json(const Body& body) {
  json j;
  j["kind"] = body_kind_name(body.kind());
  j["n"] = body.dim();
  switch (body.kind()) {
    case BodyKind::polytope_h: {
      const Polytope& P = body.as_polytope();
      j["data"] = {{"A", iodetail::to_json(P.normals())},
                   {"b", iodetail::to_json(P.offsets())}};
      break;
    }
    case BodyKind::polytope_v: {
      json verts = json::array();
      for (const auto& v : body.as_polytope().vertices())
        verts.push_back(iodetail::to_json(v));
      j["data"] = {{"vertices", verts}};
      break;
    }
    case BodyKind::polygon: {
      json verts = json::array();
      for (const auto& v : body.as_polygon().vertices())
        verts.push_back(iodetail::to_json(v));
      j["data"] = {{"vertices", verts}};
      break;
    }
    case BodyKind::revolution: {
      const RevolutionBody& R = body.as_revolution();
      // Files carry the meridian only, so the axis must be a coordinate
      // ray; flipped axes serialize by reversing the profile (same set).
      Vec e0 = Vec::Zero(R.dim());
      e0[0] = 1.0;
      double d = R.axis().vec().dot(e0);
      Profile p = R.profile();
      if (d < 0) p = p.reversed();
      require(std::abs(std::abs(d) - 1.0) < 1e-12, ErrorKind::representation,
              "body: canonicalize the revolution axis before writing");
      Profile tab = p.piecewise_linear_kind() ? p : p.tabulated();
      j["meridian"] = {{"t", tab.knots()}, {"r", tab.values()}};
      break;
    }
  }
  return j;
}

inline Body read_body_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::io_error, "cannot open body file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorKind::io_error, "invalid JSON in " + path + ": " + e.what());
  }
  return body_from_json(j);
}

inline void write_json_file(const json& j, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), ErrorKind::io_error, "cannot open output file: " + path);
  out << j.dump(2) << "\n";
  require(out.good(), ErrorKind::io_error, "write failed: " + path);
}

inline void write_body_file(const Body& body, const std::string& path) {
  write_json_file(body_to_json(body), path);
}

}  // namespace santalo
