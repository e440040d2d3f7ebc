#include "sphere.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"

namespace hyperrig {

SpherePoint::SpherePoint(Vec coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) throw Error(ErrorCode::BadDimension, "sphere point needs ambient dimension >= 2");
  const double n = coords_.norm();
  if (!std::isfinite(n) || n == 0.0)
    throw Error(ErrorCode::InvalidArgument, "sphere point coordinates must be finite and nonzero");
  coords_ /= n;
}

SpherePoint SpherePoint::basis(int ambient_dim, int axis) {
  if (axis < 0 || axis >= ambient_dim)
    throw Error(ErrorCode::InvalidArgument, "basis axis out of range");
  Vec e = Vec::Zero(ambient_dim);
  e[axis] = 1.0;
  return SpherePoint(std::move(e));
}

TangentVector::TangentVector(SpherePoint base, const Vec& vec) : base_(std::move(base)) {
  if (vec.size() != base_.coords().size())
    throw Error(ErrorCode::BadDimension, "tangent vector dimension mismatch");
  vec_ = vec - vec.dot(base_.coords()) * base_.coords();
}

TangentVector TangentVector::zero(const SpherePoint& base) {
  return TangentVector(base, Vec::Zero(base.ambient_dim()));
}

double unit_angle(const Vec& p, const Vec& q) {
  const double c = p.dot(q);
  const double s = (q - c * p).norm();
  return std::atan2(s, c);
}

double geodesic_distance(const SpherePoint& p, const SpherePoint& q) {
  if (p.ambient_dim() != q.ambient_dim()) throw Error(ErrorCode::BadDimension, "dimension mismatch");
  return unit_angle(p.coords(), q.coords());
}

Vec transport_raw(const Vec& p, const Vec& q, const Vec& v) {
  return v - (v.dot(q) / (1.0 + q.dot(p))) * (q + p);
}

namespace {

void require_not_antipodal(const Vec& p, const Vec& q, double tol, const char* what) {
  if (1.0 + p.dot(q) <= tol)
    throw Error(ErrorCode::AntipodalPoints, std::string(what) + ": points are (nearly) antipodal");
}

}  // namespace

TangentVector parallel_transport(const TangentVector& v, const SpherePoint& q, double tol) {
  const Vec& p = v.base().coords();
  if (p.size() != q.coords().size()) throw Error(ErrorCode::BadDimension, "dimension mismatch");
  require_not_antipodal(p, q.coords(), tol, "parallel_transport");
  return TangentVector(q, transport_raw(p, q.coords(), v.vec()));
}

SpherePoint exp_map(const TangentVector& v) {
  const double len = v.norm();
  if (len == 0.0) return v.base();
  return SpherePoint(std::cos(len) * v.base().coords() + (std::sin(len) / len) * v.vec());
}

TangentVector log_map(const SpherePoint& p, const SpherePoint& q, double tol) {
  require_not_antipodal(p.coords(), q.coords(), tol, "log_map");
  const Vec& x = p.coords();
  const Vec w = q.coords() - x.dot(q.coords()) * x;
  const double s = w.norm();
  if (s == 0.0) return TangentVector::zero(p);
  return TangentVector(p, (unit_angle(x, q.coords()) / s) * w);
}

TangentVector tilde_field(const TangentVector& v, const SpherePoint& p0, const SpherePoint& q,
                          double tol) {
  if (1.0 + v.base().coords().dot(p0.coords()) <= tol)
    throw Error(ErrorCode::AntipodalPoints, "tilde_field: first leg p -> p0 is antipodal");
  if (1.0 + q.coords().dot(p0.coords()) <= tol)
    throw Error(ErrorCode::AntipodalPoints, "tilde_field: second leg p0 -> q is antipodal");
  return parallel_transport(parallel_transport(v, p0, tol), q, tol);
}

double distance_to_great_sphere(const SpherePoint& x, const SpherePoint& p0) {
  const double c = std::min(1.0, std::abs(x.coords().dot(p0.coords())));
  return std::asin(c);
}

Mat orthonormal_complement(const Vec& unit) {
  const Eigen::Index d = unit.size();
  Eigen::HouseholderQR<Mat> qr(unit);
  Mat q = qr.householderQ() * Mat::Identity(d, d);
  return q.rightCols(d - 1);
}

}  // namespace hyperrig
