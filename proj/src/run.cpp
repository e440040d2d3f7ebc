#include "run.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "error.hpp"
#include "gallery.hpp"
#include "report.hpp"

namespace hyperrig {

namespace {

// Canonical keys and their defaults. Empty string means "unset".
const std::map<std::string, std::string>& defaults() {
  static const std::map<std::string, std::string> d = {
      {"command", ""},
      {"chart", ""},
      {"theorem", "t1"},
      {"resolution", ""},
      {"p0", ""},
      {"group", "antipodal"},
      {"group_file", ""},
      {"epsilon", "0.3"},
      {"t_list", "1,1/2,1/4,1/8"},
      {"r_grid", ""},
      {"out", ""},
      {"csv", ""},
      {"seed", "0"},
      {"threads", "1"},
      {"oracle", "false"},
      {"objective", "enclosing"},
      {"ball.multistarts", "16"},
      {"ball.max_iters", "2000"},
      {"ball.oracle_density", "100000"},
      {"degree.integer_tol", "0.05"},
      {"degree.singular_tol", "1e-8"},
      {"curvature.rank_tol", "1e-7"},
      {"curvature.h_normal", "1e-5"},
      {"curvature.asymmetry_tol", "1e-4"},
      {"curvature.finite_differences", "false"},
      {"cut_locus.density", "10000"},
      {"mesh_tol", "1e-6"},
      {"lemma.samples", "10000"},
      {"residual.h", "1e-3"},
      {"residual.samples", "64"},
  };
  return d;
}

std::string canonical_key(std::string key) {
  std::replace(key.begin(), key.end(), '-', '_');
  if (key == "ball.seed") return "seed";
  return key;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

double parse_number(const std::string& text, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ConfigError, "cannot parse " + what + " '" + text + "'");
  }
}

int parse_int(const std::string& text, const std::string& what) {
  const double v = parse_number(text, what);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw Error(ErrorCode::ConfigError, what + " must be an integer");
  return static_cast<int>(v);
}

double parse_positive(const std::string& text, const std::string& what) {
  const double v = parse_number(text, what);
  if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorCode::ConfigError, what + " must be positive");
  return v;
}

bool parse_bool(const std::string& text, const std::string& what) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw Error(ErrorCode::ConfigError, "cannot parse boolean " + what + " '" + text + "'");
}

// Ratio "a/b" or plain number; used for t lists such as 1/8.
double parse_fraction(const std::string& text, const std::string& what) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return parse_number(text, what);
  const double den = parse_number(trim(text.substr(slash + 1)), what);
  if (den == 0.0) throw Error(ErrorCode::ConfigError, what + " has a zero denominator");
  return parse_number(trim(text.substr(0, slash)), what) / den;
}

std::map<std::string, std::string> spec_params(const std::string& body, const std::string& spec) {
  std::map<std::string, std::string> out;
  if (trim(body).empty()) return out;
  for (const auto& part : split(body, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::ConfigError, "chart parameter without '=' in '" + spec + "'");
    out[trim(part.substr(0, eq))] = trim(part.substr(eq + 1));
  }
  return out;
}

void only_keys(const std::map<std::string, std::string>& params, std::initializer_list<const char*> allowed,
               const std::string& spec) {
  for (const auto& [k, v] : params) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw Error(ErrorCode::ConfigError, "unknown chart parameter '" + k + "' in '" + spec + "'");
  }
}

std::string get_or(const std::map<std::string, std::string>& m, const std::string& k, const std::string& fallback) {
  const auto it = m.find(k);
  return it == m.end() ? fallback : it->second;
}

struct Settings {
  std::map<std::string, std::string> values;

  const std::string& str(const std::string& k) const { return values.at(k); }
  bool has(const std::string& k) const { return !values.at(k).empty(); }
  double number(const std::string& k) const { return parse_number(str(k), k); }
  double positive(const std::string& k) const { return parse_positive(str(k), k); }
  int integer(const std::string& k) const { return parse_int(str(k), k); }
  bool flag(const std::string& k) const { return parse_bool(str(k), k); }
};

struct Options {
  MeshOptions mesh;
  BallConfig ball;
  DegreeOptions degree;
  int threads = 1;
};

Options make_options(const Settings& s) {
  Options o;
  o.threads = s.integer("threads");
  if (o.threads < 1) throw Error(ErrorCode::ConfigError, "threads must be >= 1");
  o.mesh.threads = o.threads;
  o.mesh.curvature.rank_tol = s.positive("curvature.rank_tol");
  o.mesh.curvature.h_normal = s.positive("curvature.h_normal");
  o.mesh.curvature.asymmetry_tol = s.positive("curvature.asymmetry_tol");
  o.mesh.curvature.force_finite_differences = s.flag("curvature.finite_differences");
  o.ball.threads = o.threads;
  o.ball.multistarts = s.integer("ball.multistarts");
  if (o.ball.multistarts < 0) throw Error(ErrorCode::ConfigError, "ball.multistarts must be >= 0");
  o.ball.max_iters = s.integer("ball.max_iters");
  if (o.ball.max_iters < 1) throw Error(ErrorCode::ConfigError, "ball.max_iters must be >= 1");
  o.ball.oracle_density = s.positive("ball.oracle_density");
  o.ball.oracle = s.flag("oracle");
  const int seed = s.integer("seed");
  if (seed < 0) throw Error(ErrorCode::ConfigError, "seed must be >= 0");
  o.ball.seed = static_cast<std::uint64_t>(seed);
  o.degree.integer_tol = s.positive("degree.integer_tol");
  o.degree.singular_tol = s.positive("degree.singular_tol");
  return o;
}

std::vector<int> resolution_for(const Settings& s, int n) {
  if (!s.has("resolution")) return std::vector<int>(static_cast<std::size_t>(n), default_resolution(n));
  const auto parts = split(s.str("resolution"), ',');
  std::vector<int> res;
  for (const auto& p : parts) res.push_back(parse_int(p, "resolution"));
  if (res.size() == 1) res.assign(static_cast<std::size_t>(n), res.front());
  if (static_cast<int>(res.size()) != n)
    throw Error(ErrorCode::ConfigError, "resolution needs 1 or " + std::to_string(n) + " entries");
  for (int r : res)
    if (r < 8) throw Error(ErrorCode::ConfigError, "resolution must be >= 8 per axis");
  return res;
}

std::optional<SpherePoint> parse_p0(const Settings& s, int ambient) {
  if (!s.has("p0")) return std::nullopt;
  if (s.str("p0") == "pole") return SpherePoint::basis(ambient, ambient - 1);
  const auto parts = split(s.str("p0"), ',');
  if (static_cast<int>(parts.size()) != ambient)
    throw Error(ErrorCode::ConfigError, "p0 needs " + std::to_string(ambient) + " coordinates");
  Vec v(ambient);
  for (int i = 0; i < ambient; ++i) v[i] = parse_number(parts[static_cast<std::size_t>(i)], "p0");
  if (!(v.norm() > 0.0)) throw Error(ErrorCode::ConfigError, "p0 must be nonzero");
  return SpherePoint(v);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

void maybe_write_mesh_csv(const Settings& s, const HypersurfaceMesh& mesh) {
  if (!s.has("csv")) return;
  std::ostringstream os;
  write_mesh_csv(mesh, os);
  write_file(s.str("csv"), os.str());
}

HypersurfaceMesh mesh_for(const Settings& s, const Options& o) {
  if (!s.has("chart")) throw Error(ErrorCode::ConfigError, "missing chart");
  const ChartPtr chart = chart_from_spec(s.str("chart"));
  return sample_mesh(chart, resolution_for(s, chart->param_dim()), o.mesh);
}

bool is_quotient_spec(const std::string& spec) {
  return spec.rfind("latpair", 0) == 0 || spec.rfind("equator", 0) == 0;
}

// latpair:c=,n=  or  equator:n=, built about p0; any other chart spec gives
// a one-piece mesh whose invariance the checkers verify.
InvariantMesh invariant_mesh_for(const Settings& s, const Options& o, const SpherePoint& p0) {
  const std::string spec = s.str("chart");
  if (!is_quotient_spec(spec)) {
    InvariantMesh single;
    single.pieces.push_back(mesh_for(s, o));
    return single;
  }
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const auto params = spec_params(colon == std::string::npos ? "" : spec.substr(colon + 1), spec);
  const int n = parse_int(get_or(params, "n", "2"), "n");
  if (n < 1 || n + 2 != p0.ambient_dim())
    throw Error(ErrorCode::ConfigError, "chart dimension n does not match p0");
  const int res = resolution_for(s, n).front();
  if (kind == "latpair") {
    only_keys(params, {"c", "n"}, spec);
    return latitude_pair(p0, parse_angle(get_or(params, "c", "pi/6")), n, res, o.mesh);
  }
  only_keys(params, {"n"}, spec);
  return equator_mesh(p0, n, res, o.mesh);
}

int quotient_dim(const Settings& s) {
  const std::string spec = s.str("chart");
  if (!is_quotient_spec(spec)) return chart_from_spec(spec)->param_dim();
  const auto colon = spec.find(':');
  const auto params = spec_params(colon == std::string::npos ? "" : spec.substr(colon + 1), spec);
  return parse_int(get_or(params, "n", "2"), "n");
}

IsometryGroup group_for(const Settings& s, int ambient) {
  if (s.has("group_file")) {
    std::ifstream f(s.str("group_file"));
    if (!f) throw Error(ErrorCode::IoError, "cannot read group file '" + s.str("group_file") + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    return IsometryGroup::from_json(buf.str());
  }
  const std::string g = s.str("group");
  if (g == "antipodal") return IsometryGroup::antipodal(ambient);
  if (g.rfind("lens", 0) == 0) {
    const auto colon = g.find(':');
    const auto params = spec_params(colon == std::string::npos ? "" : g.substr(colon + 1), g);
    only_keys(params, {"k", "q"}, g);
    return IsometryGroup::lens(parse_int(get_or(params, "k", "3"), "k"), parse_int(get_or(params, "q", "1"), "q"));
  }
  throw Error(ErrorCode::ConfigError, "unknown group '" + g + "'");
}

int exit_for(const RigidityReport& r) {
  if (r.falsification) return kExitError;
  return r.hypothesis_holds ? kExitOk : kExitHypothesisFailed;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_gallery(const Settings& s, const Options& o, Json& out) {
  const HypersurfaceMesh mesh = mesh_for(s, o);
  maybe_write_mesh_csv(s, mesh);
  out["mesh"] = mesh_summary(mesh);
  const int ambient = mesh.chart().ambient_dim();
  const SpherePoint p0 = parse_p0(s, ambient).value_or(SpherePoint::basis(ambient, ambient - 1));
  const double h = s.positive("residual.h");
  const int want = s.integer("residual.samples");
  if (want > 0) {
    const GaussMapContext ctx(p0, mesh);
    const std::size_t stride = std::max<std::size_t>(1, mesh.size() / static_cast<std::size_t>(want));
    double worst = 0.0, worst_half = 0.0;
    for (std::size_t i = 0; i < mesh.size(); i += stride) {
      worst = std::max(worst, relationship_residual(ctx, {&mesh, i}, h, o.mesh.curvature));
      worst_half = std::max(worst_half, relationship_residual(ctx, {&mesh, i}, h / 2.0, o.mesh.curvature));
    }
    Json r;
    r["basepoint"] = to_json(p0.coords());
    r["h"] = h;
    r["max_residual"] = worst;
    r["max_residual_half_step"] = worst_half;
    r["ratio"] = worst_half > 0.0 ? Json(worst / worst_half) : Json(nullptr);
    out["relationship"] = r;
  }
  if (ambient == 5 && s.str("chart").rfind("cartan", 0) == 0) {
    double q_err = 0.0, c_min = 1e300, c_max = -1e300;
    for (const auto& smp : mesh.samples()) {
      const Vec& x = smp.point.coords();
      const CartanInvariants inv = cartan_invariants(TracelessSym3(TracelessSym3::Coords(x)));
      q_err = std::max(q_err, std::abs(inv.q - 1.0));
      c_min = std::min(c_min, inv.c);
      c_max = std::max(c_max, inv.c);
    }
    Json c;
    c["max_abs_q_minus_one"] = q_err;
    c["c_min"] = c_min;
    c["c_max"] = c_max;
    out["cartan_invariants"] = c;
  }
  return kExitOk;
}

int cmd_analyze(const Settings& s, const Options& o, Json& out) {
  const std::string th = s.str("theorem");
  RigidityConfig rc;
  rc.ball = o.ball;
  rc.degree = o.degree;
  if (th == "t2" || th == "corollary") {
    const int n = quotient_dim(s);
    const SpherePoint p0 = parse_p0(s, n + 2).value_or(SpherePoint::basis(n + 2, n + 1));
    const InvariantMesh mesh = invariant_mesh_for(s, o, p0);
    QuotientConfig qc;
    qc.rigidity = rc;
    qc.cut_locus.density = s.positive("cut_locus.density");
    qc.mesh_tol = s.positive("mesh_tol");
    const RigidityReport rep =
        th == "t2" ? check_theorem2(group_for(s, n + 2), p0, mesh, qc) : check_corollary(p0, mesh, qc);
    out["report"] = to_json(rep);
    return exit_for(rep);
  }
  if (th != "t1" && th != "t3") throw Error(ErrorCode::ConfigError, "unknown theorem '" + th + "'");
  const HypersurfaceMesh mesh = mesh_for(s, o);
  maybe_write_mesh_csv(s, mesh);
  const int ambient = mesh.chart().ambient_dim();
  const auto p0 = parse_p0(s, ambient);
  RigidityReport rep;
  if (th == "t1") {
    rep = check_theorem1(mesh, rc, p0);
  } else {
    SpherePoint base = p0 ? *p0 : smallest_enclosing_ball(mesh.point_matrix(), o.ball).center;
    rep = check_variation(mesh, base, rc);
  }
  out["mesh"] = mesh_summary(mesh);
  out["report"] = to_json(rep);
  return exit_for(rep);
}

int cmd_ball(const Settings& s, const Options& o, Json& out) {
  const HypersurfaceMesh mesh = mesh_for(s, o);
  maybe_write_mesh_csv(s, mesh);
  const Mat pts = mesh.point_matrix();
  const std::string obj = s.str("objective");
  if (obj != "enclosing" && obj != "empty" && obj != "both")
    throw Error(ErrorCode::ConfigError, "objective must be enclosing, empty or both");
  out["samples"] = mesh.size();
  if (obj != "empty") out["enclosing"] = to_json(smallest_enclosing_ball(pts, o.ball));
  if (obj != "enclosing") out["empty"] = to_json(largest_empty_ball(pts, o.ball));
  return kExitOk;
}

int cmd_degree(const Settings& s, const Options& o, Json& out) {
  const HypersurfaceMesh mesh = mesh_for(s, o);
  maybe_write_mesh_csv(s, mesh);
  const auto p0 = parse_p0(s, mesh.chart().ambient_dim());
  const SpherePoint base = p0 ? *p0 : smallest_enclosing_ball(mesh.point_matrix(), o.ball).center;
  const GaussMapContext ctx(base, mesh);
  const DegreeResult d = degree_scan(ctx, o.degree);
  out["basepoint"] = to_json(base.coords());
  out["degree"] = to_json(d);
  return d.nonsingular && d.residual < o.degree.integer_tol ? kExitOk : kExitError;
}

int cmd_beltrami(const Settings& s, const Options& o, Json& out) {
  std::vector<double> ts;
  for (const auto& p : split(s.str("t_list"), ',')) ts.push_back(parse_fraction(p, "t_list"));
  const ChartPtr chart = s.has("chart") ? chart_from_spec(s.str("chart")) : off_pole_sphere(2);
  BlowupConfig bc;
  if (s.has("resolution")) bc.resolution = resolution_for(s, chart->param_dim());
  bc.mesh = o.mesh;
  bc.ball = o.ball;
  const BlowupStudy st = blowup_study(chart, ts, bc);
  out["chart"] = chart->name();
  out["study"] = to_json(st);
  if (s.has("csv")) {
    std::ostringstream os;
    os << std::setprecision(17) << "t,min_abs_curvature,max_abs_curvature,R_enclosing\n";
    for (const auto& r : st.rows)
      os << r.t << "," << r.min_abs_curvature << "," << r.max_abs_curvature << "," << r.R_enclosing << "\n";
    write_file(s.str("csv"), os.str());
  }
  return kExitOk;
}

int cmd_quotient(const Settings& s, const Options& o, Json& out) {
  if (!s.has("chart")) throw Error(ErrorCode::ConfigError, "missing chart");
  const int n = quotient_dim(s);
  const SpherePoint p0 = parse_p0(s, n + 2).value_or(SpherePoint::basis(n + 2, n + 1));
  const IsometryGroup group = group_for(s, n + 2);
  out["group"] = Json::parse(group.to_json());
  const int count = s.integer("lemma.samples");
  if (count > 0) out["lemmas"] = to_json(verify_lemmas(group, p0, static_cast<std::size_t>(count), o.ball.seed));
  const InvariantMesh mesh = invariant_mesh_for(s, o, p0);
  RigidityConfig rc;
  rc.ball = o.ball;
  rc.degree = o.degree;
  QuotientConfig qc;
  qc.rigidity = rc;
  qc.cut_locus.density = s.positive("cut_locus.density");
  qc.mesh_tol = s.positive("mesh_tol");
  const std::string th = s.str("theorem") == "corollary" ? "corollary" : "t2";
  const RigidityReport rep = th == "t2" ? check_theorem2(group, p0, mesh, qc) : check_corollary(p0, mesh, qc);
  out["report"] = to_json(rep);
  if (s.has("csv")) {
    const ComponentCount cc = count_components(group, mesh, qc.mesh_tol);
    const Mat pts = mesh.point_matrix();
    std::ostringstream os;
    os << std::setprecision(17);
    for (Eigen::Index r = 0; r < pts.rows(); ++r) os << "x" << r << ",";
    os << "component\n";
    for (Eigen::Index c = 0; c < pts.cols(); ++c) {
      for (Eigen::Index r = 0; r < pts.rows(); ++r) os << pts(r, c) << ",";
      os << cc.labels[static_cast<std::size_t>(c)] << "\n";
    }
    write_file(s.str("csv"), os.str());
  }
  return exit_for(rep);
}

int cmd_sharpness(const Settings& s, const Options& o, Json& out) {
  const double eps = s.positive("epsilon");
  std::vector<double> grid = default_sharpness_grid();
  if (s.has("r_grid")) {
    grid.clear();
    for (const auto& p : split(s.str("r_grid"), ',')) grid.push_back(parse_fraction(p, "r_grid"));
  }
  SharpnessConfig sc;
  sc.resolution = s.has("resolution") ? resolution_for(s, 2).front() : 64;
  sc.ball = o.ball;
  sc.mesh = o.mesh;
  const SharpnessResult res = sharpness_scan(eps, grid, sc);
  out["sharpness"] = to_json(res);
  if (s.has("csv")) {
    std::ostringstream os;
    os << std::setprecision(17)
       << "r,min_abs_curvature,min_abs_curvature_analytic,R_enclosing,R_enclosing_analytic,R_empty,"
          "R_empty_analytic,ratio,ratio_analytic,ratio_empty,euler_characteristic,ce_holds\n";
    for (const auto& r : res.rows)
      os << r.r << "," << r.min_abs_curvature << "," << r.min_abs_curvature_analytic << "," << r.R_enclosing << ","
         << r.R_enclosing_analytic << "," << r.R_empty << "," << r.R_empty_analytic << "," << r.ratio << ","
         << r.ratio_analytic << "," << r.ratio_empty << "," << r.euler_characteristic << "," << (r.ce_holds ? 1 : 0)
         << "\n";
    write_file(s.str("csv"), os.str());
  }
  return kExitOk;
}

}  // namespace

double parse_angle(const std::string& raw) {
  std::string t;
  for (char c : raw)
    if (c != ' ' && c != '*') t.push_back(c);
  const auto pi = t.find("pi");
  if (pi == std::string::npos) return parse_fraction(t, "angle");
  double coef = 1.0;
  const std::string head = t.substr(0, pi);
  if (head == "-") coef = -1.0;
  else if (!head.empty() && head != "+") coef = parse_number(head, "angle");
  std::string tail = t.substr(pi + 2);
  double den = 1.0;
  if (!tail.empty()) {
    if (tail[0] != '/') throw Error(ErrorCode::ConfigError, "cannot parse angle '" + raw + "'");
    den = parse_number(tail.substr(1), "angle");
    if (den == 0.0) throw Error(ErrorCode::ConfigError, "angle has a zero denominator");
  }
  return coef * kPi / den;
}

ChartPtr chart_from_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = trim(spec.substr(0, colon));
  const auto params = spec_params(colon == std::string::npos ? "" : spec.substr(colon + 1), spec);
  if (kind == "sphere") {
    only_keys(params, {"rho", "n", "tilt"}, spec);
    const int n = parse_int(get_or(params, "n", "2"), "n");
    if (n < 1) throw Error(ErrorCode::ConfigError, "n must be >= 1");
    const double tilt = parse_angle(get_or(params, "tilt", "0"));
    Vec c = Vec::Zero(n + 2);
    c[n + 1] = std::cos(tilt);
    c[0] += std::sin(tilt);
    return geodesic_sphere(SpherePoint(c), parse_angle(get_or(params, "rho", "pi/6")), n);
  }
  if (kind == "clifford") {
    only_keys(params, {"r", "j", "k"}, spec);
    return clifford_torus(parse_fraction(get_or(params, "r", "0.7071067811865476"), "r"),
                          parse_int(get_or(params, "j", "1"), "j"), parse_int(get_or(params, "k", "1"), "k"));
  }
  if (kind == "cartan") {
    only_keys(params, {"theta"}, spec);
    return cartan_hypersurface(parse_angle(get_or(params, "theta", "pi/12")));
  }
  if (kind == "clifford-patch") {
    only_keys(params, {}, spec);
    return clifford_patch();
  }
  if (kind == "equator") {
    only_keys(params, {"n"}, spec);
    const int n = parse_int(get_or(params, "n", "2"), "n");
    if (n < 1) throw Error(ErrorCode::ConfigError, "n must be >= 1");
    return geodesic_sphere(SpherePoint::basis(n + 2, n + 1), kPi / 2.0, n);
  }
  throw Error(ErrorCode::ConfigError, "unknown chart kind '" + kind + "'");
}

std::map<std::string, std::string> parse_config(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = canonical_key(trim(line.substr(0, eq)));
    if (!defaults().count(key))
      throw Error(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

RunOutput run(const std::string& config_text) {
  Json out;
  out["report_version"] = kReportVersion;
  RunOutput result;
  Settings s;
  std::string out_path;
  try {
    s.values = defaults();
    for (const auto& [k, v] : parse_config(config_text)) s.values[k] = v;
    out["config"] = s.values;
    out["command"] = s.str("command");
    out_path = s.str("out");
    const Options o = make_options(s);
    const std::string cmd = s.str("command");
    if (cmd == "gallery") result.exit_code = cmd_gallery(s, o, out);
    else if (cmd == "analyze") result.exit_code = cmd_analyze(s, o, out);
    else if (cmd == "ball") result.exit_code = cmd_ball(s, o, out);
    else if (cmd == "degree") result.exit_code = cmd_degree(s, o, out);
    else if (cmd == "beltrami-study") result.exit_code = cmd_beltrami(s, o, out);
    else if (cmd == "quotient-check") result.exit_code = cmd_quotient(s, o, out);
    else if (cmd == "sharpness") result.exit_code = cmd_sharpness(s, o, out);
    else throw Error(ErrorCode::ConfigError, cmd.empty() ? "missing command" : "unknown command '" + cmd + "'");
  } catch (const Error& e) {
    out["error"] = {{"code", error_code_name(e.code())}, {"message", e.what()}};
    result.exit_code = e.code() == ErrorCode::ConfigError ? kExitConfig : kExitError;
  } catch (const std::exception& e) {
    out["error"] = {{"code", error_code_name(ErrorCode::Internal)}, {"message", e.what()}};
    result.exit_code = kExitError;
  }
  out["exit_code"] = result.exit_code;
  result.report_json = out.dump(2) + "\n";
  if (!out_path.empty()) {
    try {
      write_file(out_path, result.report_json);
    } catch (const Error&) {
      result.exit_code = kExitError;
    }
  }
  return result;
}

}  // namespace hyperrig
