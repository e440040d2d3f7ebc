#include "rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <iomanip>
#include <limits>
#include <sstream>

#include "error.hpp"
#include "gallery.hpp"

namespace hyperrig {

namespace {

void append_doubles(std::string& buf, const Vec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    char bytes[sizeof(double)];
    const double x = v[i];
    std::memcpy(bytes, &x, sizeof x);
    buf.append(bytes, sizeof bytes);
  }
}

void fill_scan(RigidityReport& rep, const GaussScan& scan) {
  if (!scan.ran) {
    rep.notes.push_back("gauss map scan failed: " + scan.error);
    return;
  }
  rep.gauss_map_nonsingular = scan.nonsingular;
  rep.degree = scan.degree;
  rep.degree_raw = scan.raw;
  rep.degree_residual = scan.residual;
  rep.min_abs_jacobian = scan.min_abs_jacobian;
}

std::vector<SampleRef> all_refs(const HypersurfaceMesh& mesh) {
  std::vector<SampleRef> refs;
  refs.reserve(mesh.size());
  for (std::size_t i = 0; i < mesh.size(); ++i) refs.push_back({&mesh, i});
  return refs;
}

void finish(RigidityReport& rep, const HypersurfaceMesh& mesh, const SpherePoint& p0,
            const RigidityConfig& cfg) {
  rep.min_abs_curvature = mesh.min_abs_curvature();
  rep.margin = rep.min_abs_curvature - rep.bound;
  // The results concern closed hypersurfaces; a patch fails the hypothesis
  // whatever its curvature.
  rep.hypothesis_holds = rep.margin > 0.0 && mesh.chart().closed();
  if (!mesh.chart().closed()) rep.notes.push_back("chart has boundary; the hypothesis needs a closed hypersurface");
  if (rep.hypothesis_holds || cfg.always_scan) fill_scan(rep, gauss_scan(p0, all_refs(mesh), cfg.degree));
  if (!rep.hypothesis_holds) rep.notes.push_back("hypothesis fails; the condition is sufficient, not necessary");
  apply_falsification_monitor(rep);
}

}  // namespace

const char* theorem_id_name(TheoremId id) {
  switch (id) {
    case TheoremId::T1: return "T1";
    case TheoremId::T3: return "T3";
    case TheoremId::T2: return "T2";
    case TheoremId::Corollary: return "Corollary";
  }
  return "T1";
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string inputs_digest(const HypersurfaceMesh& mesh, const std::string& salt) {
  std::string buf = mesh.chart().name();
  buf.push_back('\0');
  for (const auto& s : mesh.samples()) {
    append_doubles(buf, s.point.coords());
    append_doubles(buf, s.normal.vec());
  }
  buf += salt;
  return fnv1a_hex(buf);
}

GaussScan gauss_scan(const SpherePoint& p0, std::vector<SampleRef> samples, const DegreeOptions& opts) {
  GaussScan out;
  out.samples = samples.size();
  try {
    const GaussMapContext ctx(p0, std::move(samples));
    const DegreeResult d = degree_scan(ctx, opts);
    out.ran = true;
    out.nonsingular = d.nonsingular;
    out.degree = d.degree;
    out.raw = d.raw;
    out.residual = d.residual;
    out.min_abs_jacobian = d.min_abs_jacobian;
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

void apply_falsification_monitor(RigidityReport& rep) {
  if (!rep.hypothesis_holds) return;
  bool bad = false;
  if (rep.degree) {
    bad = !rep.gauss_map_nonsingular || std::abs(*rep.degree) != 1;
  } else if (rep.components.empty()) {
    bad = true;  // hypothesis held but the conclusion could not be checked
  }
  for (const auto& c : rep.components)
    if (!c.scan.ran || !c.scan.nonsingular || std::abs(c.scan.degree) != 1 || !c.avoids_small_ball) bad = true;
  if (bad) {
    rep.falsification = true;
    rep.notes.push_back("FALSIFICATION: hypothesis holds but the gauss map check failed");
  }
}

RigidityReport check_theorem1(const HypersurfaceMesh& mesh, const RigidityConfig& cfg,
                              const std::optional<SpherePoint>& p0_override) {
  if (mesh.chart().param_dim() < 2) throw Error(ErrorCode::BadDimension, "theorem checks need n >= 2");
  RigidityReport rep;
  rep.theorem_id = TheoremId::T1;
  rep.inputs_digest = inputs_digest(mesh, cfg.digest_salt);
  const Mat pts = mesh.point_matrix();
  std::optional<SpherePoint> p0;
  if (p0_override) {
    if (p0_override->ambient_dim() != mesh.chart().ambient_dim())
      throw Error(ErrorCode::BadDimension, "p0 dimension does not match the mesh");
    p0 = *p0_override;
    double R = 0.0;
    for (Eigen::Index i = 0; i < pts.cols(); ++i) R = std::max(R, unit_angle(p0->coords(), pts.col(i)));
    if (R >= kPi - 1e-6) throw Error(ErrorCode::DegenerateEnclosure, "ball about p0 has radius ~pi");
    rep.R = R;
    rep.notes.push_back("p0 supplied by the user; R is the radius of the ball about p0");
  } else {
    const BallResult ball = smallest_enclosing_ball(pts, cfg.ball);
    p0 = ball.center;
    rep.R = ball.radius;
    rep.ball_gap = ball.certified_gap;
  }
  rep.basepoint = p0->coords();
  rep.bound = std::tan(rep.R / 2.0);
  finish(rep, mesh, *p0, cfg);
  return rep;
}

RigidityReport check_variation(const HypersurfaceMesh& mesh, const SpherePoint& p0, const RigidityConfig& cfg) {
  if (mesh.chart().param_dim() < 2) throw Error(ErrorCode::BadDimension, "theorem checks need n >= 2");
  if (p0.ambient_dim() != mesh.chart().ambient_dim())
    throw Error(ErrorCode::BadDimension, "p0 dimension does not match the mesh");
  RigidityReport rep;
  rep.theorem_id = TheoremId::T3;
  rep.inputs_digest = inputs_digest(mesh, cfg.digest_salt);
  rep.basepoint = p0.coords();
  double L = 0.0, R = 0.0;
  for (const auto& s : mesh.samples()) {
    if (1.0 + s.point.coords().dot(p0.coords()) <= kAntipodalTol)
      throw Error(ErrorCode::AntipodalPoints, "-p0 lies on the hypersurface");
    L = std::max(L, std::asin(std::min(1.0, std::abs(s.normal.vec().dot(p0.coords())))));
    R = std::max(R, unit_angle(s.point.coords(), p0.coords()));
  }
  rep.L = L;
  rep.R = R;
  rep.bound = std::sin(L) / (1.0 + std::cos(R));
  finish(rep, mesh, p0, cfg);
  return rep;
}

std::vector<double> default_sharpness_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 16; ++i) g.push_back(0.10 + 0.05 * i);
  g.push_back(1.0 / std::sqrt(2.0));
  std::sort(g.begin(), g.end());
  return g;
}

SharpnessResult sharpness_scan(double epsilon, const std::vector<double>& r_grid, const SharpnessConfig& cfg) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  if (r_grid.empty()) throw Error(ErrorCode::EmptyInput, "empty r grid");
  // Ties with the threshold are not strict inequalities.
  constexpr double kStrict = 1e-12;
  SharpnessResult out;
  out.epsilon = epsilon;
  out.max_ratio = -std::numeric_limits<double>::infinity();
  out.max_ratio_analytic = -std::numeric_limits<double>::infinity();
  for (double r : r_grid) {
    if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::InvalidArgument, "r grid must lie in (0, 1)");
    const double s = std::sqrt(1.0 - r * r);
    const HypersurfaceMesh mesh = sample_mesh(clifford_torus(r, 1, 1), {cfg.resolution, cfg.resolution}, cfg.mesh);
    const Mat pts = mesh.point_matrix();
    SharpnessRow row;
    row.r = r;
    row.min_abs_curvature = mesh.min_abs_curvature();
    row.min_abs_curvature_analytic = std::min(r / s, s / r);
    row.R_enclosing = smallest_enclosing_ball(pts, cfg.ball).radius;
    row.R_empty = largest_empty_ball(pts, cfg.ball).radius;
    row.R_empty_analytic = std::acos(std::min(r, s));
    row.R_enclosing_analytic = kPi - row.R_empty_analytic;
    row.ratio = row.min_abs_curvature / std::tan(row.R_enclosing / 2.0);
    row.ratio_analytic = row.min_abs_curvature_analytic / std::tan(row.R_enclosing_analytic / 2.0);
    row.ratio_empty = row.min_abs_curvature / std::tan(row.R_empty / 2.0);
    double chi = 0.0;
    for (const auto& smp : mesh.samples())
      chi += smp.weight * (1.0 + smp.principal_curvatures.prod());
    row.euler_characteristic = chi / (2.0 * kPi);
    row.ce_holds = row.ratio > epsilon + kStrict;
    row.ce_holds_analytic = row.ratio_analytic > epsilon + kStrict;
    if (row.ratio > out.max_ratio) {
      out.max_ratio = row.ratio;
      out.best_r = r;
    }
    out.max_ratio_analytic = std::max(out.max_ratio_analytic, row.ratio_analytic);
    out.ce_satisfiable = out.ce_satisfiable || row.ce_holds;
    out.ce_satisfiable_analytic = out.ce_satisfiable_analytic || row.ce_holds_analytic;
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace hyperrig
