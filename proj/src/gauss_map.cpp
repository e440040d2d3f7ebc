#include "gauss_map.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "error.hpp"

namespace hyperrig {

namespace {

std::vector<SampleRef> all_samples(const HypersurfaceMesh& mesh) {
  std::vector<SampleRef> refs;
  refs.reserve(mesh.size());
  for (std::size_t i = 0; i < mesh.size(); ++i) refs.push_back({&mesh, i});
  return refs;
}

void require_off_antipode(const Vec& p0, const Vec& p, double tol) {
  if (1.0 + p.dot(p0) <= tol)
    throw Error(ErrorCode::AntipodalPoints, "sample is antipodal to the Gauss map basepoint");
}

}  // namespace

GaussMapContext::GaussMapContext(SpherePoint p0, const HypersurfaceMesh& mesh, double tol)
    : GaussMapContext(std::move(p0), all_samples(mesh), tol) {}

GaussMapContext::GaussMapContext(SpherePoint p0, std::vector<SampleRef> samples, double tol)
    : p0_(std::move(p0)), samples_(std::move(samples)), tol_(tol) {
  if (samples_.empty()) throw Error(ErrorCode::EmptyInput, "gauss map context without samples");
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& ref : samples_) {
    if (ref.chart().ambient_dim() != p0_.ambient_dim())
      throw Error(ErrorCode::BadDimension, "basepoint dimension does not match the mesh");
    worst = std::min(worst, 1.0 + ref.sample().point.coords().dot(p0_.coords()));
  }
  if (!(worst > tol_))
    throw Error(ErrorCode::AntipodalPoints, "-p0 lies on the hypersurface (min 1+<p,p0> = " +
                                                std::to_string(worst) + ")");
}

int GaussMapContext::param_dim() const { return samples_.front().chart().param_dim(); }

Vec gauss_map_at(const Vec& p0, const Vec& point, const Vec& normal) {
  const double c = normal.dot(p0) / (1.0 + point.dot(p0));
  return normal - c * (point + p0);
}

Vec gauss_map(const GaussMapContext& ctx, const SurfaceSample& s) {
  require_off_antipode(ctx.basepoint().coords(), s.point.coords(), ctx.tolerance());
  return gauss_map_at(ctx.basepoint().coords(), s.point.coords(), s.normal.vec());
}

double transport_coefficient(const GaussMapContext& ctx, const SurfaceSample& s) {
  const Vec& p0 = ctx.basepoint().coords();
  require_off_antipode(p0, s.point.coords(), ctx.tolerance());
  return s.normal.vec().dot(p0) / (1.0 + s.point.coords().dot(p0));
}

Mat invariant_shape(const GaussMapContext& ctx, const SurfaceSample& s) {
  const auto n = s.shape.rows();
  return transport_coefficient(ctx, s) * Mat::Identity(n, n);
}

double relationship_residual(const GaussMapContext& ctx, const SampleRef& ref, double h,
                             const CurvatureOptions& opts) {
  const SurfaceSample& s = ref.sample();
  const ImmersionChart& chart = ref.chart();
  const int n = chart.param_dim();
  const Vec& p0 = ctx.basepoint().coords();
  const Vec& p = s.point.coords();

  const LocalFrame fr = local_frame(chart, s.u, opts);
  Mat pulled(chart.ambient_dim(), n);
  for (int i = 0; i < n; ++i) {
    Vec up = s.u, um = s.u;
    up[i] += h;
    um[i] -= h;
    const LocalFrame fp = local_frame(chart, up, opts);
    const LocalFrame fm = local_frame(chart, um, opts);
    require_off_antipode(p0, fp.point, ctx.tolerance());
    require_off_antipode(p0, fm.point, ctx.tolerance());
    const Vec dgamma =
        (gauss_map_at(p0, fp.point, fp.normal) - gauss_map_at(p0, fm.point, fm.normal)) / (2.0 * h);
    pulled.col(i) = transport_raw(p0, p, dgamma);
  }
  // Columns are tau(dgamma(d_i f)); d_i f = E R e_i, so the frame matrix is E^T T R^{-1}.
  const Mat et = fr.tangent.transpose() * pulled;
  const Mat lhs = fr.r_factor.triangularView<Eigen::Upper>().transpose().solve(et.transpose()).transpose();
  // The sample's shape is written in its own frame; re-express the pullback there.
  const Mat change = s.tangent.transpose() * fr.tangent;
  const Mat lhs_sample = change * lhs * change.transpose();
  const double c = transport_coefficient(ctx, s);
  return (lhs_sample + s.shape + c * Mat::Identity(n, n)).cwiseAbs().maxCoeff();
}

double jacobian_determinant(const GaussMapContext& ctx, const SampleRef& ref) {
  const SurfaceSample& s = ref.sample();
  const auto n = s.shape.rows();
  const double c = transport_coefficient(ctx, s);
  return ref.chart().orientation_sign() * (s.shape + c * Mat::Identity(n, n)).determinant();
}

double sphere_volume(int n) {
  const double h = 0.5 * (n + 1);
  return 2.0 * std::pow(kPi, h) / std::tgamma(h);
}

DegreeResult degree_scan(const GaussMapContext& ctx, const DegreeOptions& opts) {
  DegreeResult out;
  out.min_abs_jacobian = std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (const auto& ref : ctx.samples()) {
    const double det = jacobian_determinant(ctx, ref);
    out.min_abs_jacobian = std::min(out.min_abs_jacobian, std::abs(det));
    sum += ref.sample().weight * det;
  }
  out.raw = sum / sphere_volume(ctx.param_dim());
  out.degree = static_cast<int>(std::lround(out.raw));
  out.residual = std::abs(out.raw - out.degree);
  out.nonsingular = out.min_abs_jacobian > opts.singular_tol;
  return out;
}

DegreeResult degree(const GaussMapContext& ctx, const DegreeOptions& opts) {
  DegreeResult r = degree_scan(ctx, opts);
  if (!r.nonsingular)
    throw Error(ErrorCode::SingularGaussMap,
                "min |det(A + cI)| = " + std::to_string(r.min_abs_jacobian) + " below tolerance");
  if (!(r.residual < opts.integer_tol))
    throw Error(ErrorCode::NonIntegerDegree,
                "quadrature degree " + std::to_string(r.raw) + " is not within tolerance of an integer");
  return r;
}

}  // namespace hyperrig
