#include "quotient.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

#include "error.hpp"
#include "gallery.hpp"

namespace hyperrig {

namespace {

constexpr double kOrthoTol = 1e-10;
constexpr double kMatchTol = 1e-8;
constexpr double kFreeTol = 1e-6;

std::string elem(std::size_t i) { return "element " + std::to_string(i); }

bool close(const Mat& a, const Mat& b, double tol) { return (a - b).cwiseAbs().maxCoeff() <= tol; }

std::ptrdiff_t find_element(const std::vector<Mat>& els, const Mat& m) {
  for (std::size_t i = 0; i < els.size(); ++i)
    if (close(els[i], m, kMatchTol)) return static_cast<std::ptrdiff_t>(i);
  return -1;
}

Mat rotation_block(double a1, double a2) {
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = std::cos(a1);
  m(0, 1) = -std::sin(a1);
  m(1, 0) = std::sin(a1);
  m(1, 1) = std::cos(a1);
  m(2, 2) = std::cos(a2);
  m(2, 3) = -std::sin(a2);
  m(3, 2) = std::sin(a2);
  m(3, 3) = std::cos(a2);
  return m;
}

Mat parse_matrix(const nlohmann::json& j, std::size_t index) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::ConfigError, elem(index) + " is not a matrix");
  if (j.front().is_array()) {
    const std::size_t d = j.size();
    Mat m(d, d);
    for (std::size_t r = 0; r < d; ++r) {
      if (!j[r].is_array() || j[r].size() != d)
        throw Error(ErrorCode::ConfigError, elem(index) + " is not square");
      for (std::size_t c = 0; c < d; ++c) {
        if (!j[r][c].is_number()) throw Error(ErrorCode::ConfigError, elem(index) + " has a non-numeric entry");
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = j[r][c].get<double>();
      }
    }
    return m;
  }
  const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(j.size()))));
  if (d * d != j.size()) throw Error(ErrorCode::ConfigError, elem(index) + " flat entry count is not a square");
  Mat m(d, d);
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_number()) throw Error(ErrorCode::ConfigError, elem(index) + " has a non-numeric entry");
    m(static_cast<Eigen::Index>(k / d), static_cast<Eigen::Index>(k % d)) = j[k].get<double>();
  }
  return m;
}

// Index of the column of `rows`^T nearest to each column of `queries`, by
// maximal inner product; `rows` holds the reference points as rows.
std::vector<Eigen::Index> nearest(const Mat& rows, const Mat& queries) {
  std::vector<Eigen::Index> out(static_cast<std::size_t>(queries.cols()));
  const Eigen::Index chunk = std::max<Eigen::Index>(1, 4000000 / std::max<Eigen::Index>(1, rows.rows()));
  Mat ip;
  for (Eigen::Index s = 0; s < queries.cols(); s += chunk) {
    const Eigen::Index len = std::min(chunk, queries.cols() - s);
    ip.noalias() = rows * queries.middleCols(s, len);
    for (Eigen::Index c = 0; c < len; ++c) ip.col(c).maxCoeff(&out[static_cast<std::size_t>(s + c)]);
  }
  return out;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  // Labels 0..k-1 in order of first appearance.
  std::vector<int> labels(int& count) {
    std::vector<int> map(parent.size(), -1), out(parent.size());
    count = 0;
    for (std::size_t i = 0; i < parent.size(); ++i) {
      const std::size_t r = find(i);
      if (map[r] < 0) map[r] = count++;
      out[i] = map[r];
    }
    return out;
  }
};

// Unions samples whose points coincide within tol; with `g` the images g x_i
// are matched against the samples instead.
void merge_coincident(UnionFind& uf, const Mat& pts, const Mat& rows, const Mat* g, double tol) {
  const Mat queries = g ? Mat(*g * pts) : pts;
  const double cos_tol = std::cos(tol);
  const Eigen::Index chunk = std::max<Eigen::Index>(1, 4000000 / std::max<Eigen::Index>(1, rows.rows()));
  Mat ip;
  for (Eigen::Index s = 0; s < queries.cols(); s += chunk) {
    const Eigen::Index len = std::min(chunk, queries.cols() - s);
    ip.noalias() = rows * queries.middleCols(s, len);
    for (Eigen::Index c = 0; c < len; ++c)
      for (Eigen::Index r = 0; r < ip.rows(); ++r)
        if (ip(r, c) >= cos_tol && r != s + c &&
            unit_angle(rows.row(r).transpose(), queries.col(s + c)) <= tol)
          uf.unite(static_cast<std::size_t>(r), static_cast<std::size_t>(s + c));
  }
}

std::string digest_of(const InvariantMesh& mesh, const std::string& group_json, const std::string& salt) {
  std::string buf;
  for (const auto& piece : mesh.pieces) buf += inputs_digest(piece, "");
  buf += group_json;
  buf += salt;
  return fnv1a_hex(buf);
}

// Shared tail of the quotient checkers once r and R are known.
RigidityReport finish_quotient(TheoremId id, const IsometryGroup& group, const SpherePoint& p0,
                               const InvariantMesh& mesh, double r, double R, const QuotientConfig& cfg) {
  RigidityReport rep;
  rep.theorem_id = id;
  rep.inputs_digest = digest_of(mesh, group.to_json(), cfg.rigidity.digest_salt);
  rep.basepoint = p0.coords();
  rep.r = r;
  rep.R = R;
  if (!(R < r / 2.0)) {
    std::ostringstream os;
    os << "R = " << R << " is not below r/2 = " << r / 2.0;
    throw Error(ErrorCode::RTooLarge, os.str());
  }
  rep.bound = 1.0 / std::tan((r - 2.0 * R) / 4.0);
  rep.identity_residual = theorem2_identity_residual(r, R);
  rep.min_abs_curvature = mesh.min_abs_curvature();
  rep.margin = rep.min_abs_curvature - rep.bound;
  bool closed = true;
  for (const auto& piece : mesh.pieces) closed = closed && piece.chart().closed();
  rep.hypothesis_holds = rep.margin > 0.0 && closed;
  if (!closed) rep.notes.push_back("a piece has boundary; the hypothesis needs a closed hypersurface");

  const ComponentCount cc = count_components(group, mesh, cfg.mesh_tol);
  rep.components_upstairs = cc.upstairs;
  rep.components_downstairs = cc.downstairs;
  rep.multiplicity = static_cast<double>(group.size()) / cc.upstairs;

  // Per-component scan with basepoint -p0; run always, as a diagnostic when
  // the hypothesis fails.
  const std::vector<SampleRef> refs = mesh.refs();
  const SpherePoint base = p0.antipode();
  const double small_ball = r / 2.0 - R;
  bool all_ok = true;
  for (int comp = 0; comp < cc.upstairs; ++comp) {
    ComponentReport cr;
    std::vector<SampleRef> mine;
    cr.min_abs_curvature = std::numeric_limits<double>::infinity();
    cr.min_distance_to_basepoint = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < refs.size(); ++i) {
      if (cc.labels[i] != comp) continue;
      mine.push_back(refs[i]);
      const SurfaceSample& s = refs[i].sample();
      cr.min_abs_curvature = std::min(cr.min_abs_curvature, s.principal_curvatures.cwiseAbs().minCoeff());
      cr.min_distance_to_basepoint =
          std::min(cr.min_distance_to_basepoint, unit_angle(s.point.coords(), p0.coords()));
    }
    cr.samples = mine.size();
    cr.avoids_small_ball = cr.min_distance_to_basepoint >= small_ball;
    cr.scan = gauss_scan(base, std::move(mine), cfg.rigidity.degree);
    all_ok = all_ok && cr.scan.ran && cr.scan.nonsingular && std::abs(cr.scan.degree) == 1;
    rep.components.push_back(std::move(cr));
  }
  rep.gauss_map_nonsingular = all_ok;
  if (!rep.hypothesis_holds) rep.notes.push_back("hypothesis fails; the condition is sufficient, not necessary");
  std::ostringstream os;
  os << "predicted covering multiplicity |G|/k = " << group.size() << "/" << cc.upstairs;
  rep.notes.push_back(os.str());
  apply_falsification_monitor(rep);
  return rep;
}

}  // namespace

// ---------------------------------------------------------------------------
// Groups

IsometryGroup IsometryGroup::antipodal(int ambient_dim) {
  if (ambient_dim < 3) throw Error(ErrorCode::BadDimension, "antipodal group needs ambient dimension >= 3");
  const Mat id = Mat::Identity(ambient_dim, ambient_dim);
  return IsometryGroup({id, -id}, "antipodal");
}

IsometryGroup IsometryGroup::lens(int k, int q) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "lens group needs k >= 2");
  if (std::gcd(k, q) != 1) throw Error(ErrorCode::InvalidArgument, "lens group needs gcd(k, q) = 1 for a free action");
  std::vector<Mat> els;
  for (int m = 0; m < k; ++m) els.push_back(rotation_block(2.0 * kPi * m / k, 2.0 * kPi * q * m / k));
  els.front() = Mat::Identity(4, 4);
  return from_matrices(std::move(els), "lens:k=" + std::to_string(k) + ",q=" + std::to_string(q));
}

IsometryGroup IsometryGroup::from_matrices(std::vector<Mat> els, std::string name) {
  if (els.empty()) throw Error(ErrorCode::EmptyInput, "group has no elements");
  const Eigen::Index d = els.front().rows();
  if (d < 3) throw Error(ErrorCode::BadDimension, "group needs ambient dimension >= 3");
  for (std::size_t i = 0; i < els.size(); ++i) {
    if (els[i].rows() != d || els[i].cols() != d)
      throw Error(ErrorCode::BadDimension, elem(i) + " has the wrong shape");
    if (!els[i].allFinite()) throw Error(ErrorCode::InvalidArgument, elem(i) + " has non-finite entries");
    if (!close(els[i].transpose() * els[i], Mat::Identity(d, d), kOrthoTol))
      throw Error(ErrorCode::InvalidArgument, elem(i) + " is not orthogonal");
  }
  if (!close(els.front(), Mat::Identity(d, d), kOrthoTol))
    throw Error(ErrorCode::InvalidArgument, "element 0 must be the identity");
  for (std::size_t i = 0; i < els.size(); ++i)
    for (std::size_t j = i + 1; j < els.size(); ++j)
      if (close(els[i], els[j], kMatchTol))
        throw Error(ErrorCode::InvalidArgument, elem(j) + " duplicates " + elem(i));
  for (std::size_t i = 0; i < els.size(); ++i) {
    if (find_element(els, els[i].transpose()) < 0)
      throw Error(ErrorCode::InvalidArgument, "inverse of " + elem(i) + " is missing");
    for (std::size_t j = 0; j < els.size(); ++j)
      if (find_element(els, els[i] * els[j]) < 0)
        throw Error(ErrorCode::InvalidArgument,
                    "product of " + elem(i) + " and " + elem(j) + " is not in the group");
  }
  // Free action: no eigenvalue 1, i.e. g - I nonsingular, plus a sampled check.
  std::mt19937_64 rng(0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat probe(d, 2000);
  for (Eigen::Index c = 0; c < probe.cols(); ++c) {
    for (Eigen::Index r = 0; r < d; ++r) probe(r, c) = gauss(rng);
    probe.col(c).normalize();
  }
  for (std::size_t i = 1; i < els.size(); ++i) {
    Eigen::JacobiSVD<Mat> svd(els[i] - Mat::Identity(d, d));
    if (svd.singularValues().minCoeff() <= kFreeTol)
      throw Error(ErrorCode::InvalidArgument, elem(i) + " has fixed points on the sphere");
    if (((els[i] * probe) - probe).colwise().norm().minCoeff() <= kFreeTol)
      throw Error(ErrorCode::InvalidArgument, elem(i) + " nearly fixes a sampled point");
  }
  return IsometryGroup(std::move(els), std::move(name));
}

IsometryGroup IsometryGroup::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("group JSON: ") + e.what());
  }
  std::string name = "custom";
  nlohmann::json list = j;
  if (j.is_object()) {
    if (!j.contains("elements")) throw Error(ErrorCode::ConfigError, "group JSON object needs \"elements\"");
    list = j["elements"];
    if (j.contains("name") && j["name"].is_string()) name = j["name"].get<std::string>();
  }
  if (!list.is_array()) throw Error(ErrorCode::ConfigError, "group JSON must hold a list of matrices");
  std::vector<Mat> els;
  for (std::size_t i = 0; i < list.size(); ++i) els.push_back(parse_matrix(list[i], i));
  return from_matrices(std::move(els), std::move(name));
}

std::string IsometryGroup::to_json() const {
  std::ostringstream os;
  os << std::setprecision(17) << "{\"name\":" << nlohmann::json(name_).dump() << ",\"elements\":[";
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    os << (i ? "," : "") << "[";
    const Mat& m = elements_[i];
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      os << (r ? "," : "") << "[";
      for (Eigen::Index c = 0; c < m.cols(); ++c) os << (c ? "," : "") << m(r, c);
      os << "]";
    }
    os << "]";
  }
  os << "]}";
  return os.str();
}

// ---------------------------------------------------------------------------
// Domains and distances

double separation(const IsometryGroup& group, const SpherePoint& p) {
  if (group.size() < 2) throw Error(ErrorCode::TrivialGroup, "group has only the identity");
  double r = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < group.size(); ++i) r = std::min(r, unit_angle(p.coords(), group[i] * p.coords()));
  return r;
}

bool in_fundamental_domain(const IsometryGroup& group, const SpherePoint& p, const SpherePoint& x,
                           double strict_tol) {
  const double dp = unit_angle(p.coords(), x.coords());
  for (std::size_t i = 1; i < group.size(); ++i)
    if (!(dp < unit_angle(group[i] * p.coords(), x.coords()) - strict_tol)) return false;
  return true;
}

bool in_domain_closure(const IsometryGroup& group, const SpherePoint& p, const SpherePoint& x, double tol) {
  const double dp = unit_angle(p.coords(), x.coords());
  for (std::size_t i = 1; i < group.size(); ++i)
    if (dp > unit_angle(group[i] * p.coords(), x.coords()) + tol) return false;
  return true;
}

std::vector<std::size_t> bisector_membership(const IsometryGroup& group, const SpherePoint& p,
                                             const SpherePoint& x, double tol) {
  std::vector<std::size_t> out;
  const double dp = unit_angle(p.coords(), x.coords());
  for (std::size_t i = 1; i < group.size(); ++i)
    if (std::abs(dp - unit_angle(group[i] * p.coords(), x.coords())) < tol) out.push_back(i);
  return out;
}

double quotient_distance(const IsometryGroup& group, const SpherePoint& x, const SpherePoint& y) {
  double d = std::numeric_limits<double>::infinity();
  for (const Mat& g : group.elements()) d = std::min(d, unit_angle(x.coords(), g * y.coords()));
  return d;
}

CutLocusSampler::CutLocusSampler(const IsometryGroup& group, const SpherePoint& p0, const CutLocusOptions& opts)
    : group_(group), p0_(p0.coords()), closure_tol_(opts.closure_tol) {
  if (group.size() < 2) throw Error(ErrorCode::TrivialGroup, "group has only the identity");
  const int d = group.ambient_dim();
  if (p0.ambient_dim() != d) throw Error(ErrorCode::BadDimension, "basepoint dimension does not match the group");
  for (std::size_t i = 1; i < group.size(); ++i) normals_.push_back((p0_ - group[i] * p0_).normalized());

  const Mat grid = sphere_grid(d - 1, opts.density);
  spacing_ = std::pow(sphere_volume(d - 2) / std::max(1.0, static_cast<double>(grid.cols())), 1.0 / (d - 2));
  std::vector<Vec> keep;
  Mat images(d, static_cast<Eigen::Index>(group.size()));
  for (std::size_t i = 0; i < group.size(); ++i) images.col(static_cast<Eigen::Index>(i)) = group[i] * p0_;
  for (const Vec& nu : normals_) {
    const Mat pts = orthonormal_complement(nu) * grid;
    const Mat ip = images.transpose() * pts;  // row 0 is <p0, y>
    for (Eigen::Index c = 0; c < pts.cols(); ++c) {
      // Closure of the domain: <y, p0> >= <y, g p0> for all g.
      if (ip.col(c).maxCoeff() - ip(0, c) <= closure_tol_) keep.push_back(pts.col(c));
    }
  }
  if (keep.empty()) throw Error(ErrorCode::SamplingTooCoarse, "no boundary samples of the fundamental domain");
  samples_.resize(d, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i) samples_.col(static_cast<Eigen::Index>(i)) = keep[i];
}

double CutLocusSampler::projection_candidates(const Vec& x) const {
  double best = std::numeric_limits<double>::infinity();
  auto consider = [&](const Vec& z, const Vec& y_raw) {
    const double n = y_raw.norm();
    if (n < 1e-12) return;
    const Vec y = y_raw / n;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < group_.size(); ++i) worst = std::max(worst, y.dot(group_[i] * p0_));
    if (worst - y.dot(p0_) <= closure_tol_) best = std::min(best, unit_angle(z, y));
  };
  for (const Mat& g : group_.elements()) {
    const Vec z = g * x;
    for (std::size_t a = 0; a < normals_.size(); ++a) {
      const Vec& na = normals_[a];
      consider(z, z - z.dot(na) * na);
      for (std::size_t b = a + 1; b < normals_.size(); ++b) {
        Vec nb = normals_[b] - normals_[b].dot(na) * na;
        const double len = nb.norm();
        if (len < 1e-12) continue;
        nb /= len;
        consider(z, z - z.dot(na) * na - z.dot(nb) * nb);
      }
    }
  }
  return best;
}

double CutLocusSampler::distance(const SpherePoint& x) const {
  Mat one(x.ambient_dim(), 1);
  one.col(0) = x.coords();
  return distances(one)[0];
}

Vec CutLocusSampler::distances(const Mat& points) const {
  if (points.rows() != group_.ambient_dim())
    throw Error(ErrorCode::BadDimension, "point dimension does not match the group");
  const Mat rows = samples_.transpose();
  Vec out(points.cols());
  for (Eigen::Index c = 0; c < points.cols(); ++c) out[c] = std::numeric_limits<double>::infinity();
  for (const Mat& g : group_.elements()) {
    const Mat imgs = g * points;
    const auto idx = nearest(rows, imgs);
    for (Eigen::Index c = 0; c < points.cols(); ++c)
      out[c] = std::min(out[c], unit_angle(imgs.col(c), samples_.col(idx[static_cast<std::size_t>(c)])));
  }
  for (Eigen::Index c = 0; c < points.cols(); ++c) out[c] = std::min(out[c], projection_candidates(points.col(c)));
  return out;
}

double cut_locus_distance(const IsometryGroup& group, const SpherePoint& p0, const SpherePoint& x,
                          const CutLocusOptions& opts) {
  return CutLocusSampler(group, p0, opts).distance(x);
}

// ---------------------------------------------------------------------------
// Invariant meshes

std::size_t InvariantMesh::size() const {
  std::size_t n = 0;
  for (const auto& p : pieces) n += p.size();
  return n;
}

Mat InvariantMesh::point_matrix() const {
  if (pieces.empty()) throw Error(ErrorCode::EmptyInput, "invariant mesh has no pieces");
  Mat out(pieces.front().chart().ambient_dim(), static_cast<Eigen::Index>(size()));
  Eigen::Index col = 0;
  for (const auto& p : pieces) {
    const Mat m = p.point_matrix();
    out.middleCols(col, m.cols()) = m;
    col += m.cols();
  }
  return out;
}

double InvariantMesh::min_abs_curvature() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& p : pieces) m = std::min(m, p.min_abs_curvature());
  return m;
}

std::vector<SampleRef> InvariantMesh::refs() const {
  std::vector<SampleRef> out;
  for (const auto& p : pieces)
    for (std::size_t i = 0; i < p.size(); ++i) out.push_back({&p, i});
  return out;
}

InvariantMesh latitude_pair(const SpherePoint& p0, double c, int n, int resolution, const MeshOptions& opts) {
  if (!(c > 0.0 && c < kPi / 2.0)) throw Error(ErrorCode::InvalidArgument, "latitude offset c must lie in (0, pi/2)");
  const ChartPtr north = geodesic_sphere(p0, kPi / 2.0 - c, n);
  const Mat minus = -Mat::Identity(n + 2, n + 2);
  const ChartPtr south = transform_chart(north, minus, north->name() + "|antipodal");
  const std::vector<int> res(static_cast<std::size_t>(n), resolution);
  InvariantMesh mesh;
  mesh.pieces.push_back(sample_mesh(north, res, opts));
  mesh.pieces.push_back(sample_mesh(south, res, opts));
  return mesh;
}

InvariantMesh equator_mesh(const SpherePoint& p0, int n, int resolution, const MeshOptions& opts) {
  InvariantMesh mesh;
  mesh.pieces.push_back(
      sample_mesh(geodesic_sphere(p0, kPi / 2.0, n), std::vector<int>(static_cast<std::size_t>(n), resolution), opts));
  return mesh;
}

double invariance_defect(const IsometryGroup& group, const InvariantMesh& mesh) {
  const Mat pts = mesh.point_matrix();
  if (pts.rows() != group.ambient_dim()) throw Error(ErrorCode::BadDimension, "mesh and group dimensions differ");
  const Mat rows = pts.transpose();
  double worst = 0.0;
  for (std::size_t i = 1; i < group.size(); ++i) {
    const Mat imgs = group[i] * pts;
    const auto idx = nearest(rows, imgs);
    for (Eigen::Index c = 0; c < imgs.cols(); ++c)
      worst = std::max(worst, unit_angle(imgs.col(c), pts.col(idx[static_cast<std::size_t>(c)])));
  }
  return worst;
}

ComponentCount count_components(const IsometryGroup& group, const InvariantMesh& mesh, double tol) {
  const Mat pts = mesh.point_matrix();
  const Mat rows = pts.transpose();
  UnionFind uf(static_cast<std::size_t>(pts.cols()));
  std::size_t offset = 0;
  for (const auto& piece : mesh.pieces) {
    for (std::size_t i = 0; i < piece.size(); ++i)
      for (std::size_t j : piece.forward_neighbors(i)) uf.unite(offset + i, offset + j);
    offset += piece.size();
  }
  merge_coincident(uf, pts, rows, nullptr, tol);
  ComponentCount out;
  UnionFind down = uf;
  out.labels = uf.labels(out.upstairs);
  for (std::size_t i = 1; i < group.size(); ++i) merge_coincident(down, pts, rows, &group[i], tol);
  down.labels(out.downstairs);
  return out;
}

double theorem2_identity_residual(double r, double R) {
  return std::abs(std::tan((kPi - r / 2.0 + R) / 2.0) - 1.0 / std::tan((r - 2.0 * R) / 4.0));
}

RigidityReport check_theorem2(const IsometryGroup& group, const SpherePoint& p0, const InvariantMesh& mesh,
                              const QuotientConfig& cfg) {
  if (mesh.pieces.empty()) throw Error(ErrorCode::EmptyInput, "invariant mesh has no pieces");
  if (mesh.pieces.front().chart().param_dim() < 2) throw Error(ErrorCode::BadDimension, "theorem checks need n >= 2");
  const double defect = invariance_defect(group, mesh);
  if (defect > cfg.mesh_tol) {
    std::ostringstream os;
    os << "mesh is not invariant: Hausdorff defect " << defect << " > " << cfg.mesh_tol;
    throw Error(ErrorCode::NotInvariant, os.str());
  }
  const double r = separation(group, p0);
  const CutLocusSampler sampler(group, p0, cfg.cut_locus);
  const double R = sampler.distances(mesh.point_matrix()).maxCoeff();
  RigidityReport rep = finish_quotient(TheoremId::T2, group, p0, mesh, r, R, cfg);
  std::ostringstream os;
  os << "cut-locus distance from " << sampler.sample_count() << " boundary samples plus exact projections; grid spacing "
     << sampler.spacing();
  rep.notes.push_back(os.str());
  return rep;
}

RigidityReport check_corollary(const SpherePoint& p0, const InvariantMesh& mesh, const QuotientConfig& cfg) {
  if (mesh.pieces.empty()) throw Error(ErrorCode::EmptyInput, "invariant mesh has no pieces");
  if (mesh.pieces.front().chart().param_dim() < 2) throw Error(ErrorCode::BadDimension, "theorem checks need n >= 2");
  const IsometryGroup group = IsometryGroup::antipodal(p0.ambient_dim());
  const double defect = invariance_defect(group, mesh);
  if (defect > cfg.mesh_tol) {
    std::ostringstream os;
    os << "mesh is not antipodally invariant: Hausdorff defect " << defect << " > " << cfg.mesh_tol;
    throw Error(ErrorCode::NotInvariant, os.str());
  }
  double R = 0.0;
  for (const auto& piece : mesh.pieces)
    for (const auto& s : piece.samples())
      R = std::max(R, std::asin(std::min(1.0, std::abs(s.point.coords().dot(p0.coords())))));
  RigidityReport rep = finish_quotient(TheoremId::Corollary, group, p0, mesh, kPi, R, cfg);
  const int n = mesh.pieces.front().chart().param_dim();
  bool scans_ok = true;
  for (const auto& c : rep.components) scans_ok = scans_ok && c.scan.ran && c.scan.nonsingular && std::abs(c.scan.degree) == 1;
  const bool flat = rep.min_abs_curvature <= cfg.rigidity.degree.singular_tol;
  const int k = *rep.components_upstairs;
  if ((k == 1 || k == 2) && scans_ok && !flat) {
    rep.topology_label = (k == 2 ? "S^" : "RP^") + std::to_string(n);
  } else {
    rep.notes.push_back("topology label withheld");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Lemma sampling

LemmaReport verify_lemmas(const IsometryGroup& group, const SpherePoint& p, std::size_t count, std::uint64_t seed) {
  const int d = group.ambient_dim();
  const double r = separation(group, p);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto random_unit = [&] {
    Vec v(d);
    for (int i = 0; i < d; ++i) v[i] = gauss(rng);
    return Vec(v.normalized());
  };
  // Uniform radius in [0, radius), random direction.
  auto in_ball = [&](double radius) {
    const TangentVector dir(p, random_unit());
    const double len = dir.norm();
    return exp_map(TangentVector(p, dir.vec() * (radius * unif(rng) / len)));
  };

  LemmaReport rep;
  for (std::size_t i = 0; i < count; ++i) {
    ++rep.small_ball_samples;
    if (!in_fundamental_domain(group, p, in_ball(r / 2.0))) ++rep.small_ball_violations;
  }
  for (std::size_t i = 0; i < count; ++i) {
    SpherePoint x(random_unit());
    while (!in_fundamental_domain(group, p, x)) x = SpherePoint(random_unit());
    rep.isometry_max_error =
        std::max(rep.isometry_max_error, std::abs(quotient_distance(group, p, x) - geodesic_distance(p, x)));
    for (std::size_t g = 1; g < group.size(); ++g)
      if (in_fundamental_domain(group, p, SpherePoint(group[g] * x.coords()))) ++rep.injectivity_violations;
    const SpherePoint a = in_ball(r / 4.0), b = in_ball(r / 4.0);
    rep.isometry_max_error =
        std::max(rep.isometry_max_error, std::abs(quotient_distance(group, a, b) - geodesic_distance(a, b)));
    rep.isometry_pairs += 2;
  }
  const SpherePoint minus = p.antipode();
  rep.antipode_excluded = !in_fundamental_domain(group, p, minus);
  rep.antipode_bisector_size = bisector_membership(group, p, minus).size();
  return rep;
}

}  // namespace hyperrig
