#include "beltrami.hpp"

#include <cmath>
#include <sstream>

#include "error.hpp"
#include "gallery.hpp"

namespace hyperrig {

namespace {

void require_upper(const Vec& p, double hem_tol) {
  if (!(p[p.size() - 1] > hem_tol)) {
    std::ostringstream os;
    os << "point has last coordinate " << p[p.size() - 1] << " <= " << hem_tol;
    throw Error(ErrorCode::OutsideHemisphere, os.str());
  }
}

class DeformedChart final : public ImmersionChart {
 public:
  DeformedChart(ChartPtr base, double t, double hem_tol)
      : ImmersionChart(base->name() + "|deform:t=" + num(t), base->param_dim(), base->domain()),
        base_(std::move(base)),
        t_(t),
        hem_tol_(hem_tol) {
    // C_t is isotopic to the identity, so the raw normal convention carries over.
    set_orientation_sign(base_->orientation_sign());
    set_closed(base_->closed());
    for (const auto& note : base_->notes()) add_note(note);
  }

  Vec eval(const Vec& u) const override {
    const Vec w = scale(base_->eval(u));
    return w / w.norm();
  }

  Mat jacobian(const Vec& u) const override {
    const Vec p = base_->eval(u);
    const Vec w = scale(p);
    const double s = w.norm();
    const Mat dw = scale_cols(base_->jacobian(u));
    return dn(w, s, dw);
  }

  std::optional<Hessian> hessian(const Vec& u) const override {
    auto hb = base_->hessian(u);
    if (!hb) return std::nullopt;
    const int n = param_dim();
    const Vec w = scale(base_->eval(u));
    const double s = w.norm();
    const Mat dw = scale_cols(base_->jacobian(u));
    const double s3 = s * s * s, s5 = s3 * s * s;
    Hessian out(hb->size());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Vec hw = scale_raw((*hb)[i * n + j]);
        const Vec v1 = dw.col(i), v2 = dw.col(j);
        const double a = w.dot(v1), b = w.dot(v2);
        out[i * n + j] = (hw / s - w * (w.dot(hw) / s3)) -
                         (v1 * b + v2 * a + w * v1.dot(v2)) / s3 + w * (3.0 * a * b / s5);
      }
    return out;
  }

  bool exact_jacobian() const override { return base_->exact_jacobian(); }

 private:
  static std::string num(double x) {
    std::ostringstream os;
    os.precision(10);
    os << x;
    return os.str();
  }

  Vec scale(const Vec& p) const {
    require_upper(p, hem_tol_);
    Vec w = t_ * p;
    w[w.size() - 1] = p[p.size() - 1];
    return w;
  }
  Vec scale_raw(const Vec& v) const {
    Vec w = t_ * v;
    w[w.size() - 1] = v[v.size() - 1];
    return w;
  }
  Mat scale_cols(const Mat& m) const {
    Mat out = t_ * m;
    out.row(out.rows() - 1) = m.row(m.rows() - 1);
    return out;
  }
  // d(w/|w|)[dw] = dw/s - w <w,dw>/s^3.
  static Mat dn(const Vec& w, double s, const Mat& dw) {
    return dw / s - w * (w.transpose() * dw) / (s * s * s);
  }

  ChartPtr base_;
  double t_;
  double hem_tol_;
};

}  // namespace

Vec beltrami(const SpherePoint& p, double hem_tol) {
  const Vec& c = p.coords();
  require_upper(c, hem_tol);
  const Eigen::Index m = c.size() - 1;
  return c.head(m) / c[m];
}

SpherePoint beltrami_inverse(const Vec& x) {
  Vec p(x.size() + 1);
  p.head(x.size()) = x;
  p[x.size()] = 1.0;
  return SpherePoint(p);
}

SpherePoint beltrami_deform(const SpherePoint& p, double t, double hem_tol) {
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "deformation parameter t must be positive");
  require_upper(p.coords(), hem_tol);
  Vec w = t * p.coords();
  w[w.size() - 1] = p.coords()[w.size() - 1];
  return SpherePoint(w);
}

ChartPtr deform_chart(ChartPtr chart, double t, double hem_tol) {
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "deformation parameter t must be positive");
  return std::make_shared<DeformedChart>(std::move(chart), t, hem_tol);
}

BlowupStudy blowup_study(ChartPtr chart, const std::vector<double>& t_list, const BlowupConfig& cfg) {
  if (t_list.empty()) throw Error(ErrorCode::EmptyInput, "empty t list");
  for (std::size_t i = 0; i < t_list.size(); ++i) {
    if (!(t_list[i] > 0.0)) throw Error(ErrorCode::InvalidArgument, "t values must be positive");
    if (i > 0 && !(t_list[i] < t_list[i - 1]))
      throw Error(ErrorCode::InvalidArgument, "t values must be strictly decreasing");
  }
  std::vector<int> res = cfg.resolution;
  if (res.empty()) res.assign(static_cast<std::size_t>(chart->param_dim()), default_resolution(chart->param_dim()));

  BlowupStudy out;
  for (double t : t_list) {
    const HypersurfaceMesh mesh = sample_mesh(deform_chart(chart, t), res, cfg.mesh);
    DeformationRow row;
    row.t = t;
    row.min_abs_curvature = mesh.min_abs_curvature();
    row.max_abs_curvature = mesh.max_abs_curvature();
    if (!std::isfinite(row.min_abs_curvature) || !std::isfinite(row.max_abs_curvature))
      throw Error(ErrorCode::DegenerateImmersion, "non-finite curvature in deformed mesh");
    if (cfg.compute_radius) row.R_enclosing = smallest_enclosing_ball(mesh.point_matrix(), cfg.ball).radius;
    out.rows.push_back(row);
  }
  std::size_t start = out.rows.size() - 1;
  while (start > 0 && out.rows[start].min_abs_curvature > out.rows[start - 1].min_abs_curvature) --start;
  out.t_threshold = out.rows[start].t;
  out.strictly_increasing = out.rows.size() > 1 && start == 0;
  for (const auto& row : out.rows)
    if (row.min_abs_curvature > 1.0) {
      out.t_exceeds_one = row.t;
      break;
    }
  return out;
}

ChartPtr off_pole_sphere(int n) {
  Vec c = Vec::Zero(n + 2);
  c[0] = std::sin(kPi / 8.0);
  c[n + 1] = std::cos(kPi / 8.0);
  return geodesic_sphere(SpherePoint(c), kPi / 4.0, n);
}

ChartPtr clifford_patch() {
  Vec lo(2), hi(2);
  lo << -0.5, kPi / 2.0 - 0.5;
  hi << 0.5, kPi / 2.0 + 0.5;
  return restrict_domain(clifford_torus(1.0 / std::sqrt(2.0), 1, 1), lo, hi);
}

}  // namespace hyperrig
