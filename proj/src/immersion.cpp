#include "immersion.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "error.hpp"
#include "parallel.hpp"

namespace hyperrig {

namespace {

std::string format_u(const Vec& u) {
  std::ostringstream os;
  os << std::setprecision(10) << "u=(";
  for (Eigen::Index i = 0; i < u.size(); ++i) os << (i ? "," : "") << u[i];
  os << ")";
  return os.str();
}

// Unit normal with the det[f | J | eta0] > 0 convention, before orientation_sign.
Vec raw_normal(const Vec& point, const Mat& jac) {
  const Eigen::Index d = point.size();
  const Eigen::Index n = jac.cols();
  Mat m(d, n + 1);
  m.col(0) = point;
  m.rightCols(n) = jac;
  Eigen::HouseholderQR<Mat> qr(m);
  Mat q = qr.householderQ() * Mat::Identity(d, d);
  Vec eta = q.col(d - 1);
  Mat full(d, d);
  full.leftCols(n + 1) = m;
  full.col(d - 1) = eta;
  if (full.determinant() < 0.0) eta = -eta;
  return eta;
}

}  // namespace

ImmersionChart::ImmersionChart(std::string name, int param_dim, ParamBox domain)
    : name_(std::move(name)), param_dim_(param_dim), domain_(std::move(domain)) {
  if (param_dim_ < 1) throw Error(ErrorCode::BadDimension, "chart needs param_dim >= 1");
  if (domain_.dim() != param_dim_ || domain_.hi.size() != param_dim_ ||
      static_cast<int>(domain_.periodic.size()) != param_dim_)
    throw Error(ErrorCode::BadDimension, "parameter box does not match param_dim");
  for (int i = 0; i < param_dim_; ++i)
    if (!(domain_.hi[i] > domain_.lo[i]))
      throw Error(ErrorCode::InvalidArgument, "parameter box must have hi > lo on every axis");
}

Mat ImmersionChart::jacobian(const Vec& u) const {
  const double base = std::cbrt(std::numeric_limits<double>::epsilon());
  Mat jac(ambient_dim(), param_dim_);
  for (int i = 0; i < param_dim_; ++i) {
    const double h = base * (domain_.hi[i] - domain_.lo[i]);
    Vec up = u, um = u;
    up[i] += h;
    um[i] -= h;
    jac.col(i) = (eval(up) - eval(um)) / (2.0 * h);
  }
  return jac;
}

std::optional<Hessian> ImmersionChart::hessian(const Vec&) const { return std::nullopt; }

void ImmersionChart::orient_toward(const Vec& u, const Vec& preferred) {
  const Vec eta = raw_normal(eval(u), jacobian(u));
  set_orientation_sign(eta.dot(preferred) >= 0.0 ? 1 : -1);
}

void ImmersionChart::set_analytic_curvatures(Vec values) {
  std::sort(values.data(), values.data() + values.size());
  analytic_ = std::move(values);
}

// ---------------------------------------------------------------------------
// Wrappers

namespace {

class FlippedChart final : public ImmersionChart {
 public:
  explicit FlippedChart(ChartPtr base)
      : ImmersionChart(base->name(), base->param_dim(), base->domain()), base_(std::move(base)) {
    set_orientation_sign(-base_->orientation_sign());
    set_closed(base_->closed());
    if (base_->analytic_curvatures()) set_analytic_curvatures(-*base_->analytic_curvatures());
    for (const auto& n : base_->notes()) add_note(n);
    add_note("orientation flipped");
  }
  Vec eval(const Vec& u) const override { return base_->eval(u); }
  Mat jacobian(const Vec& u) const override { return base_->jacobian(u); }
  std::optional<Hessian> hessian(const Vec& u) const override { return base_->hessian(u); }
  bool exact_jacobian() const override { return base_->exact_jacobian(); }

 private:
  ChartPtr base_;
};

ParamBox make_box(Vec lo, Vec hi) {
  ParamBox box{std::move(lo), std::move(hi), {}};
  box.periodic.assign(box.lo.size(), false);
  return box;
}

class RestrictedChart final : public ImmersionChart {
 public:
  RestrictedChart(ChartPtr base, Vec lo, Vec hi)
      : ImmersionChart(base->name() + "[patch]", base->param_dim(), make_box(std::move(lo), std::move(hi))),
        base_(std::move(base)) {
    set_orientation_sign(base_->orientation_sign());
    if (base_->analytic_curvatures()) set_analytic_curvatures(*base_->analytic_curvatures());
    set_closed(false);
    add_note("open patch: not a closed hypersurface");
  }
  Vec eval(const Vec& u) const override { return base_->eval(u); }
  Mat jacobian(const Vec& u) const override { return base_->jacobian(u); }
  std::optional<Hessian> hessian(const Vec& u) const override { return base_->hessian(u); }
  bool exact_jacobian() const override { return base_->exact_jacobian(); }

 private:
  ChartPtr base_;
};

class TransformedChart final : public ImmersionChart {
 public:
  TransformedChart(ChartPtr base, Mat g, std::string name)
      : ImmersionChart(name.empty() ? base->name() + "[image]" : std::move(name), base->param_dim(),
                       base->domain()),
        base_(std::move(base)),
        g_(std::move(g)) {
    // det[g f | g J | g eta] = det(g) det[f | J | eta]
    const int det_sign = g_.determinant() >= 0.0 ? 1 : -1;
    set_orientation_sign(det_sign * base_->orientation_sign());
    set_closed(base_->closed());
    if (base_->analytic_curvatures()) set_analytic_curvatures(*base_->analytic_curvatures());
  }
  Vec eval(const Vec& u) const override { return g_ * base_->eval(u); }
  Mat jacobian(const Vec& u) const override { return g_ * base_->jacobian(u); }
  std::optional<Hessian> hessian(const Vec& u) const override {
    auto h = base_->hessian(u);
    if (!h) return std::nullopt;
    for (auto& v : *h) v = g_ * v;
    return h;
  }
  bool exact_jacobian() const override { return base_->exact_jacobian(); }

 private:
  ChartPtr base_;
  Mat g_;
};

}  // namespace

ChartPtr flip_orientation(ChartPtr base) { return std::make_shared<FlippedChart>(std::move(base)); }

ChartPtr restrict_domain(ChartPtr base, Vec lo, Vec hi) {
  return std::make_shared<RestrictedChart>(std::move(base), std::move(lo), std::move(hi));
}

ChartPtr transform_chart(ChartPtr base, const Mat& g, std::string name) {
  const int d = base->ambient_dim();
  if (g.rows() != d || g.cols() != d) throw Error(ErrorCode::BadDimension, "transform size mismatch");
  if ((g.transpose() * g - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10)
    throw Error(ErrorCode::InvalidArgument, "transform is not orthogonal");
  return std::make_shared<TransformedChart>(std::move(base), g, std::move(name));
}

// ---------------------------------------------------------------------------
// Pointwise geometry

LocalFrame local_frame(const ImmersionChart& chart, const Vec& u, const CurvatureOptions& opts) {
  LocalFrame fr;
  fr.u = u;
  fr.point = chart.eval(u);
  fr.jacobian = chart.jacobian(u);
  const Eigen::Index n = chart.param_dim();
  const Eigen::Index d = chart.ambient_dim();

  Eigen::JacobiSVD<Mat> svd(fr.jacobian);
  const double smin = svd.singularValues()[n - 1];
  if (!(smin > opts.rank_tol))
    throw Error(ErrorCode::DegenerateImmersion,
                "jacobian rank deficient at " + format_u(u) + " (smallest singular value " +
                    std::to_string(smin) + ")");

  Eigen::HouseholderQR<Mat> qr(fr.jacobian);
  fr.tangent = qr.householderQ() * Mat::Identity(d, n);
  fr.r_factor = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  fr.normal = chart.orientation_sign() * raw_normal(fr.point, fr.jacobian);
  fr.area_element = std::abs(fr.r_factor.diagonal().prod());
  return fr;
}

TangentVector unit_normal(const ImmersionChart& chart, const Vec& u, const CurvatureOptions& opts) {
  const LocalFrame fr = local_frame(chart, u, opts);
  return TangentVector(SpherePoint(fr.point), fr.normal);
}

ShapeData shape_data(const ImmersionChart& chart, const LocalFrame& fr, const CurvatureOptions& opts) {
  const int n = chart.param_dim();
  Mat raw(n, n);
  std::optional<Hessian> hess;
  if (!opts.force_finite_differences) hess = chart.hessian(fr.u);

  if (hess) {
    // S = R^{-T} H R^{-1} with H_ij = <d_ij f, eta>.
    Mat h(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) h(i, j) = (*hess)[i * n + j].dot(fr.normal);
    const auto rt = fr.r_factor.triangularView<Eigen::Upper>();
    Mat tmp = rt.transpose().solve(h);                         // R^{-T} H
    raw = rt.transpose().solve(tmp.transpose()).transpose();   // (R^{-T} (R^{-T} H)^T)^T
  } else {
    // a = -E^T d(eta), S = a R^{-1}.
    Mat deta(chart.ambient_dim(), n);
    for (int i = 0; i < n; ++i) {
      Vec up = fr.u, um = fr.u;
      up[i] += opts.h_normal;
      um[i] -= opts.h_normal;
      const Vec np = chart.orientation_sign() * raw_normal(chart.eval(up), chart.jacobian(up));
      const Vec nm = chart.orientation_sign() * raw_normal(chart.eval(um), chart.jacobian(um));
      deta.col(i) = (np - nm) / (2.0 * opts.h_normal);
    }
    const Mat a = -fr.tangent.transpose() * deta;
    // S R = a  =>  R^T S^T = a^T
    raw = fr.r_factor.triangularView<Eigen::Upper>().transpose().solve(a.transpose()).transpose();
  }

  ShapeData out;
  out.asymmetry = (raw - raw.transpose()).cwiseAbs().maxCoeff();
  if (out.asymmetry > opts.asymmetry_tol)
    throw Error(ErrorCode::DegenerateImmersion,
                "shape matrix asymmetric by " + std::to_string(out.asymmetry) + " at " + format_u(fr.u));
  out.shape = 0.5 * (raw + raw.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> eig(out.shape, Eigen::EigenvaluesOnly);
  out.principal = eig.eigenvalues();
  return out;
}

Mat shape_operator(const ImmersionChart& chart, const Vec& u, const CurvatureOptions& opts) {
  return shape_data(chart, local_frame(chart, u, opts), opts).shape;
}

Vec principal_curvatures(const ImmersionChart& chart, const Vec& u, const CurvatureOptions& opts) {
  return shape_data(chart, local_frame(chart, u, opts), opts).principal;
}

double gauss_kronecker(const ImmersionChart& chart, const Vec& u, const CurvatureOptions& opts) {
  return principal_curvatures(chart, u, opts).prod();
}

// ---------------------------------------------------------------------------
// Meshes

HypersurfaceMesh::HypersurfaceMesh(ChartPtr chart, std::vector<int> resolution,
                                   std::vector<SurfaceSample> samples)
    : chart_(std::move(chart)), resolution_(std::move(resolution)), samples_(std::move(samples)) {
  for (const auto& s : samples_) {
    if (!(s.weight > 0.0)) throw Error(ErrorCode::DegenerateImmersion, "nonpositive quadrature weight");
    total_area_ += s.weight;
  }
}

std::vector<std::size_t> HypersurfaceMesh::forward_neighbors(std::size_t i) const {
  const int n = static_cast<int>(resolution_.size());
  std::vector<int> idx(n);
  std::size_t rest = i;
  for (int a = n - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(rest % resolution_[a]);
    rest /= resolution_[a];
  }
  std::vector<std::size_t> out;
  for (int a = 0; a < n; ++a) {
    std::vector<int> j = idx;
    j[a] += 1;
    if (j[a] == resolution_[a]) {
      if (!chart_->domain().periodic[a]) continue;
      j[a] = 0;
    }
    std::size_t flat = 0;
    for (int b = 0; b < n; ++b) flat = flat * resolution_[b] + j[b];
    if (flat != i) out.push_back(flat);
  }
  return out;
}

Mat HypersurfaceMesh::point_matrix() const {
  Mat m(chart_->ambient_dim(), static_cast<Eigen::Index>(samples_.size()));
  for (std::size_t i = 0; i < samples_.size(); ++i) m.col(i) = samples_[i].point.coords();
  return m;
}

double HypersurfaceMesh::min_abs_curvature() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& s : samples_) m = std::min(m, s.principal_curvatures.cwiseAbs().minCoeff());
  return m;
}

double HypersurfaceMesh::max_abs_curvature() const {
  double m = 0.0;
  for (const auto& s : samples_) m = std::max(m, s.principal_curvatures.cwiseAbs().maxCoeff());
  return m;
}

double HypersurfaceMesh::max_asymmetry() const {
  double m = 0.0;
  for (const auto& s : samples_) m = std::max(m, s.asymmetry);
  return m;
}

int default_resolution(int param_dim) { return param_dim <= 2 ? 64 : 24; }

namespace {

void check_seams(const ImmersionChart& chart, double tol) {
  const ParamBox& box = chart.domain();
  const int n = box.dim();
  for (int a = 0; a < n; ++a) {
    if (!box.periodic[a]) continue;
    for (int probe = 0; probe < 7; ++probe) {
      Vec u(n);
      for (int b = 0; b < n; ++b) {
        const double frac = (probe + 0.5 + 0.37 * b) / 7.0;
        u[b] = box.lo[b] + (frac - std::floor(frac)) * (box.hi[b] - box.lo[b]);
      }
      Vec u_hi = u;
      u[a] = box.lo[a];
      u_hi[a] = box.hi[a];
      const double gap = (chart.eval(u) - chart.eval(u_hi)).norm();
      if (!(gap <= tol))
        throw Error(ErrorCode::DegenerateImmersion,
                    "periodic seam mismatch on axis " + std::to_string(a) + " at " + format_u(u));
    }
  }
}

}  // namespace

HypersurfaceMesh sample_mesh(ChartPtr chart, const std::vector<int>& resolution, const MeshOptions& opts) {
  const ParamBox& box = chart->domain();
  const int n = chart->param_dim();
  if (static_cast<int>(resolution.size()) != n)
    throw Error(ErrorCode::InvalidArgument, "resolution must list one count per parameter axis");
  for (int r : resolution)
    if (r < 8) throw Error(ErrorCode::InvalidArgument, "resolution must be >= 8 per axis");

  check_seams(*chart, opts.seam_tol);

  std::size_t total = 1;
  Vec step(n);
  double cell = 1.0;
  for (int a = 0; a < n; ++a) {
    total *= static_cast<std::size_t>(resolution[a]);
    step[a] = (box.hi[a] - box.lo[a]) / resolution[a];
    cell *= step[a];
  }

  std::vector<std::optional<SurfaceSample>> slots(total);
  parallel_for(total, opts.threads, [&](std::size_t i) {
    Vec u(n);
    std::size_t rest = i;
    for (int a = n - 1; a >= 0; --a) {
      const int k = static_cast<int>(rest % resolution[a]);
      rest /= resolution[a];
      u[a] = box.lo[a] + (box.periodic[a] ? k : k + 0.5) * step[a];
    }
    const LocalFrame fr = local_frame(*chart, u, opts.curvature);
    ShapeData sd = shape_data(*chart, fr, opts.curvature);
    SpherePoint p(fr.point);
    TangentVector eta(p, fr.normal);
    slots[i].emplace(SurfaceSample{u, p, eta, fr.tangent, std::move(sd.shape), sd.asymmetry,
                                   std::move(sd.principal), fr.area_element * cell});
  });

  std::vector<SurfaceSample> samples;
  samples.reserve(total);
  for (auto& s : slots) samples.push_back(std::move(*s));
  return HypersurfaceMesh(std::move(chart), resolution, std::move(samples));
}

bool orientation_coherent(const HypersurfaceMesh& mesh) {
  for (std::size_t i = 0; i < mesh.size(); ++i)
    for (std::size_t j : mesh.forward_neighbors(i))
      if (!(mesh[i].normal.vec().dot(mesh[j].normal.vec()) > 0.0)) return false;
  return true;
}

void write_mesh_csv(const HypersurfaceMesh& mesh, std::ostream& out) {
  const int n = mesh.chart().param_dim();
  const int d = mesh.chart().ambient_dim();
  for (int i = 0; i < n; ++i) out << "u" << i << ",";
  for (int i = 0; i < d; ++i) out << "x" << i << ",";
  for (int i = 0; i < d; ++i) out << "eta" << i << ",";
  for (int i = 0; i < n; ++i) out << "k" << i << ",";
  out << "weight\n";
  out << std::setprecision(17);
  for (const auto& s : mesh.samples()) {
    for (int i = 0; i < n; ++i) out << s.u[i] << ",";
    for (int i = 0; i < d; ++i) out << s.point[i] << ",";
    for (int i = 0; i < d; ++i) out << s.normal.vec()[i] << ",";
    for (int i = 0; i < n; ++i) out << s.principal_curvatures[i] << ",";
    out << s.weight << "\n";
  }
}

}  // namespace hyperrig
