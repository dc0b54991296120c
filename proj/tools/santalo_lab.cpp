// Command-line frontend: body I/O, polarity and symmetrization operations,
// shape measures, and the numerical experiments.  JSON for bodies and
// reports, CSV for scan tables; identical configuration and seed give
// byte-identical output.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "santalo/body_io.hpp"
#include "santalo/lab.hpp"

namespace {

using santalo::Body;
using santalo::Direction;
using santalo::Error;
using santalo::ErrorKind;
using santalo::Hyperplane;
using santalo::json;
using santalo::Vec;

const char* kUsage =
    "usage: santalo-lab <command> [options]\n"
    "\n"
    "commands\n"
    "  body validate --body FILE\n"
    "  body convert  --body FILE --out FILE [--to h|v]\n"
    "  product       --body FILE [--out FILE]\n"
    "  santalo       --body FILE [--out FILE]\n"
    "  symmetrize    --op steiner|schwarz|isotropic|rounding|full\n"
    "                --body FILE --out FILE [--axis X,Y,...] [--offset C]\n"
    "                [--grid N]\n"
    "  measure       --body FILE [--q] [--bm] [--bonnesen] [--asa]\n"
    "                [--ratios] [--out FILE]\n"
    "  lab scan      --family caps|lp|ellipsoid|random|symmetric --n N\n"
    "                --eps LO:HI:geometric|linear:COUNT [--seed S]\n"
    "                [--timings] [--out FILE]\n"
    "  lab chain     --body FILE [--grid N] [--out FILE]\n"
    "  lab falsecentre --body FILE [--out FILE]\n"
    "\n"
    "common flags: --body, --out, --n, --eps, --grid, --tol, --seed,\n"
    "--threads; set SANTALO_LAB_LOG for progress lines on stderr.\n"
    "exit codes: 0 success, 1 validation error, 2 convergence failure.\n";

bool verbose() {
  const char* v = std::getenv("SANTALO_LAB_LOG");
  return v != nullptr && v[0] != '\0';
}

void logline(const std::string& s) {
  if (verbose()) std::fprintf(stderr, "[santalo-lab] %s\n", s.c_str());
}

// Flags either take a value (--name value) or are boolean switches.
const std::set<std::string> kSwitches = {"q",  "bm",      "bonnesen",
                                         "asa", "ratios", "timings"};

struct Args {
  std::vector<std::string> positional;
  std::map<std::string, std::string> named;

  bool has(const std::string& k) const { return named.count(k) > 0; }
  std::string get(const std::string& k) const {
    auto it = named.find(k);
    santalo::require(it != named.end(), ErrorKind::io_error,
                     "missing required flag --" + k);
    return it->second;
  }
  std::string get_or(const std::string& k, const std::string& d) const {
    auto it = named.find(k);
    return it == named.end() ? d : it->second;
  }
  double num(const std::string& k) const {
    const std::string s = get(k);
    char* end = nullptr;
    double x = std::strtod(s.c_str(), &end);
    santalo::require(end != nullptr && *end == '\0' && std::isfinite(x),
                     ErrorKind::io_error, "--" + k + ": not a number: " + s);
    return x;
  }
  double num_or(const std::string& k, double d) const {
    return has(k) ? num(k) : d;
  }
  int integer(const std::string& k) const {
    double x = num(k);
    int i = static_cast<int>(x);
    santalo::require(static_cast<double>(i) == x, ErrorKind::io_error,
                     "--" + k + ": expected an integer");
    return i;
  }
  int integer_or(const std::string& k, int d) const {
    return has(k) ? integer(k) : d;
  }
};

Args parse_args(int argc, char** argv) {
  Args a;
  for (int i = 1; i < argc; ++i) {
    std::string t = argv[i];
    if (t.rfind("--", 0) == 0) {
      std::string name = t.substr(2);
      santalo::require(!name.empty(), ErrorKind::io_error,
                       "empty flag name");
      if (kSwitches.count(name)) {
        a.named[name] = "1";
      } else {
        santalo::require(i + 1 < argc, ErrorKind::io_error,
                         "--" + name + ": missing value");
        a.named[name] = argv[++i];
      }
    } else {
      a.positional.push_back(t);
    }
  }
  return a;
}

Vec parse_vec(const std::string& s) {
  std::vector<double> xs;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    double x = std::strtod(item.c_str(), &end);
    santalo::require(end != nullptr && *end == '\0' && std::isfinite(x),
                     ErrorKind::io_error, "bad vector component: " + item);
    xs.push_back(x);
  }
  santalo::require(!xs.empty(), ErrorKind::io_error, "empty vector");
  Vec v(static_cast<Eigen::Index>(xs.size()));
  for (size_t i = 0; i < xs.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = xs[i];
  return v;
}

// Parameter ranges are LO:HI:geometric|linear:COUNT, or a single number.
std::vector<double> parse_range(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  auto tod = [](const std::string& s) {
    char* end = nullptr;
    double x = std::strtod(s.c_str(), &end);
    santalo::require(end != nullptr && *end == '\0' && std::isfinite(x),
                     ErrorKind::io_error, "bad range number: " + s);
    return x;
  };
  if (parts.size() == 1) return {tod(parts[0])};
  santalo::require(parts.size() == 4, ErrorKind::io_error,
                   "range must be LO:HI:geometric|linear:COUNT");
  double lo = tod(parts[0]), hi = tod(parts[1]);
  int count = static_cast<int>(tod(parts[3]));
  santalo::require(count >= 1, ErrorKind::io_error, "range count must be >= 1");
  std::vector<double> out;
  if (count == 1) return {lo};
  if (parts[2] == "geometric") {
    santalo::require(lo > 0.0 && hi > 0.0, ErrorKind::io_error,
                     "geometric range needs positive endpoints");
    for (int k = 0; k < count; ++k)
      out.push_back(lo * std::pow(hi / lo,
                                  static_cast<double>(k) / (count - 1)));
  } else if (parts[2] == "linear") {
    for (int k = 0; k < count; ++k)
      out.push_back(lo + (hi - lo) * static_cast<double>(k) / (count - 1));
  } else {
    santalo::fail(ErrorKind::io_error,
                  "range spacing must be 'geometric' or 'linear'");
  }
  return out;
}

void emit(const json& j, const Args& a) {
  std::string text = j.dump(2);
  text += "\n";
  if (a.has("out")) {
    std::ofstream f(a.get("out"));
    santalo::require(f.good(), ErrorKind::io_error,
                     "cannot open output file " + a.get("out"));
    f << text;
  } else {
    std::fputs(text.c_str(), stdout);
  }
}

void emit_text(const std::string& text, const Args& a) {
  if (a.has("out")) {
    std::ofstream f(a.get("out"));
    santalo::require(f.good(), ErrorKind::io_error,
                     "cannot open output file " + a.get("out"));
    f << text;
  } else {
    std::fputs(text.c_str(), stdout);
  }
}

json vec_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

void validate_common(const Args& a) {
  if (a.has("tol"))
    santalo::require(a.num("tol") > 0.0, ErrorKind::io_error,
                     "--tol must be positive");
  if (a.has("threads"))
    santalo::require(a.integer("threads") >= 1, ErrorKind::io_error,
                     "--threads must be >= 1");
  if (a.has("n")) {
    int n = a.integer("n");
    santalo::require(n >= 2 && n <= 4, ErrorKind::io_error,
                     "--n must be 2, 3, or 4");
  }
}

int cmd_body(const Args& a) {
  santalo::require(!a.positional.empty() && a.positional.size() >= 2,
                   ErrorKind::io_error, "body: expected validate or convert");
  const std::string& sub = a.positional[1];
  Body K = santalo::read_body_file(a.get("body"));
  if (sub == "validate") {
    json r;
    r["valid"] = true;
    r["n"] = K.dim();
    r["kind"] = santalo::body_kind_name(K.kind());
    r["volume"] = K.volume();
    r["diameter"] = K.diameter();
    emit(r, a);
    return 0;
  }
  if (sub == "convert") {
    std::string to = a.get_or(
        "to", K.kind() == santalo::BodyKind::polytope_v ? "h" : "v");
    santalo::require(to == "h" || to == "v", ErrorKind::io_error,
                     "body convert: --to must be h or v");
    Body out = K.converted_to(to == "v" ? santalo::BodyKind::polytope_v
                                        : santalo::BodyKind::polytope_h);
    santalo::write_body_file(out, a.get("out"));
    json r;
    r["converted_to"] = to;
    r["volume"] = out.volume();
    std::fputs((r.dump(2) + "\n").c_str(), stdout);
    return 0;
  }
  santalo::fail(ErrorKind::io_error, "body: unknown subcommand " + sub);
}

int cmd_product(const Args& a) {
  Body K = santalo::read_body_file(a.get("body"));
  santalo::ProductReport r = santalo::volume_product_report(K);
  double kn = santalo::unit_ball_volume(K.dim());
  json j;
  j["n"] = K.dim();
  j["z"] = vec_json(r.z);
  j["vol"] = r.vol_K;
  j["vol_polar"] = r.vol_polar;
  j["product"] = r.product;
  j["bound"] = kn * kn;
  j["deficit"] = r.deficit;
  j["o_symmetric"] = r.o_symmetric;
  j["kuperberg_symmetric_ok"] = r.kuperberg_symmetric_ok;
  j["kuperberg_general_ok"] = r.kuperberg_general_ok;
  emit(j, a);
  return 0;
}

int cmd_santalo(const Args& a) {
  Body K = santalo::read_body_file(a.get("body"));
  santalo::SantaloInfo s = santalo::santalo(K);
  json j;
  j["z"] = vec_json(s.z);
  j["certificate"] = s.certificate;
  j["certificate_bound"] = 1e-6 * K.diameter();
  j["polar_vol"] = s.polar_vol;
  j["iterations"] = s.iterations;
  emit(j, a);
  return 0;
}

int cmd_symmetrize(const Args& a) {
  Body K = santalo::read_body_file(a.get("body"));
  const std::string op = a.get("op");
  const std::string outfile = a.get("out");
  int grid = a.integer_or("grid", 1024);
  json rep;
  rep["op"] = op;
  if (op == "steiner") {
    Direction nrm = Direction::of(parse_vec(a.get("axis")));
    double off = a.num_or("offset", 0.0);
    Body S = santalo::steiner(K, Hyperplane(nrm, off));
    santalo::write_body_file(S, outfile);
    rep["volume"] = S.volume();
  } else if (op == "schwarz") {
    Direction u = Direction::of(parse_vec(a.get("axis")));
    santalo::RevolutionBody R = santalo::schwarz_round(K, u, grid);
    Body S = Body::revolution(R);
    santalo::write_body_file(S, outfile);
    rep["volume"] = S.volume();
  } else if (op == "isotropic") {
    auto [info, S] = santalo::isotropic_normalize(K);
    santalo::write_body_file(S, outfile);
    rep["L_K"] = info.L_K;
    rep["inclusion_radius"] = info.inclusion_radius;
    rep["volume"] = S.volume();
  } else if (op == "rounding") {
    santalo::RoundingResult r = santalo::rounding_pipeline(K, grid);
    Body S = Body::revolution(r.body);
    santalo::write_body_file(S, outfile);
    rep["direction"] = vec_json(r.u.vec());
    rep["L_K"] = r.iso.L_K;
    rep["support_u"] = r.support_u;
    rep["volume"] = S.volume();
  } else if (op == "full") {
    santalo::ReductionResult r = santalo::full_reduction(K, grid);
    Body S = Body::revolution(r.body);
    santalo::write_body_file(S, outfile);
    rep["axis"] = vec_json(r.axis.vec());
    rep["diameter_branch"] = r.diameter_branch;
    rep["eps_hat"] = r.eps_hat;
    rep["volume"] = S.volume();
  } else {
    santalo::fail(ErrorKind::io_error, "symmetrize: unknown --op " + op);
  }
  std::fputs((rep.dump(2) + "\n").c_str(), stdout);
  return 0;
}

int cmd_measure(const Args& a) {
  Body K = santalo::read_body_file(a.get("body"));
  bool any = a.has("q") || a.has("bm") || a.has("bonnesen") || a.has("asa") ||
             a.has("ratios");
  json j;
  j["n"] = K.dim();
  if (a.has("q") || !any) {
    santalo::SymmetryReport r = santalo::minkowski_q(K);
    j["q"] = r.q;
    j["q_center"] = vec_json(r.center);
    j["q_certificate"] = r.lambda_certificate;
  }
  if (a.has("bm")) j["bm"] = santalo::bm_distance_ball(K);
  if (a.has("bonnesen")) {
    santalo::require(K.dim() == 2, ErrorKind::domain_error,
                     "measure --bonnesen: planar bodies only");
    santalo::BonnesenReport r = santalo::bonnesen_report(K.to_polygon());
    j["bonnesen"] = {{"W", r.W},
                     {"A", r.A},
                     {"R", r.R},
                     {"r", r.r},
                     {"slack", r.slack}};
  }
  if (a.has("asa")) {
    santalo::require(K.is_revolution(), ErrorKind::representation,
                     "measure --asa: revolution bodies only");
    j["asa"] = santalo::affine_surface_area(K.as_revolution());
  }
  if (a.has("ratios")) {
    santalo::AffineRatios r = santalo::affine_ratios(K);
    j["omega"] = r.omega;
    j["iso_ratio"] = r.iso;
    j["lutwak_ratio"] = r.lutwak;
  }
  emit(j, a);
  return 0;
}

int cmd_lab(const Args& a) {
  santalo::require(a.positional.size() >= 2, ErrorKind::io_error,
                   "lab: expected scan, chain, or falsecentre");
  const std::string& sub = a.positional[1];
  if (sub == "scan") {
    std::string family = a.get("family");
    int n = a.integer("n");
    std::vector<double> params = parse_range(a.get("eps"));
    std::uint64_t seed =
        static_cast<std::uint64_t>(a.num_or("seed", 1.0));
    logline("building family " + family + " with " +
            std::to_string(params.size()) + " bodies");
    auto fam = santalo::make_family(family, n, params, seed);
    santalo::ScanResult res = santalo::stability_scan(fam);
    emit_text(santalo::scan_to_csv(res, a.has("timings")), a);
    return 0;
  }
  if (sub == "chain") {
    Body K = santalo::read_body_file(a.get("body"));
    int grid = a.integer_or("grid", 1024);
    santalo::ChainReport r = santalo::bs_chain_check(K, grid);
    json j;
    j["product_original"] = r.product_original;
    j["product_reduced"] = r.product_reduced;
    j["product_steinered"] = r.product_steinered;
    j["bound"] = r.bound;
    j["q_max"] = r.q_max;
    j["steiner_step"] = r.steiner_step;
    j["ok_reduce"] = r.ok_reduce;
    j["ok_steiner"] = r.ok_steiner;
    j["ok_bound"] = r.ok_bound;
    emit(j, a);
    return 0;
  }
  if (sub == "falsecentre") {
    Body K = santalo::read_body_file(a.get("body"));
    santalo::require(K.is_revolution(), ErrorKind::representation,
                     "lab falsecentre: revolution bodies only");
    santalo::FalseCentreReport r =
        santalo::false_centre_scan(K.as_revolution());
    json j;
    j["q_max"] = r.q_max;
    j["m_at_max"] = r.m_at_max;
    j["normal_meridian"] = {r.wt, r.wr};
    j["f_const_dev"] = r.f_const_dev;
    j["f_t"] = r.f_t;
    j["f_val"] = r.f_val;
    emit(j, a);
    return 0;
  }
  santalo::fail(ErrorKind::io_error, "lab: unknown subcommand " + sub);
}

}  // namespace

int main(int argc, char** argv) {
  Args a;
  try {
    a = parse_args(argc, argv);
    if (a.positional.empty()) {
      std::fputs(kUsage, stderr);
      return 1;
    }
    validate_common(a);
    const std::string& cmd = a.positional[0];
    if (cmd == "body") return cmd_body(a);
    if (cmd == "product") return cmd_product(a);
    if (cmd == "santalo") return cmd_santalo(a);
    if (cmd == "symmetrize") return cmd_symmetrize(a);
    if (cmd == "measure") return cmd_measure(a);
    if (cmd == "lab") return cmd_lab(a);
    std::fprintf(stderr, "unknown command: %s\n%s", cmd.c_str(), kUsage);
    return 1;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.kind() == ErrorKind::convergence ? 2 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
