#include "gallery.hpp"

#include <cmath>
#include <sstream>

#include "error.hpp"

namespace hyperrig {

// ---------------------------------------------------------------------------
// Hyperspherical angles

HypersphereAngles::HypersphereAngles(int m) : m_(m), table_(m + 1, std::vector<Factor>(m, Factor::One)) {
  if (m < 1) throw Error(ErrorCode::BadDimension, "sphere parametrization needs m >= 1");
  for (int c = 0; c <= m; ++c)
    for (int k = 0; k < m; ++k) {
      if (k < c) table_[c][k] = Factor::Sin;
      else if (k == c) table_[c][k] = Factor::Cos;
    }
}

double HypersphereAngles::factor(Factor f, double x, int order) const {
  switch (f) {
    case Factor::One: return order == 0 ? 1.0 : 0.0;
    case Factor::Sin:
      switch (order) {
        case 0: return std::sin(x);
        case 1: return std::cos(x);
        default: return -std::sin(x);
      }
    case Factor::Cos:
      switch (order) {
        case 0: return std::cos(x);
        case 1: return -std::sin(x);
        default: return -std::cos(x);
      }
  }
  return 0.0;
}

Vec HypersphereAngles::eval(const Eigen::Ref<const Vec>& phi) const {
  Vec x(m_ + 1);
  for (int c = 0; c <= m_; ++c) {
    double v = 1.0;
    for (int k = 0; k < m_; ++k) v *= factor(table_[c][k], phi[k], 0);
    x[c] = v;
  }
  return x;
}

Mat HypersphereAngles::jacobian(const Eigen::Ref<const Vec>& phi) const {
  Mat jac(m_ + 1, m_);
  for (int i = 0; i < m_; ++i)
    for (int c = 0; c <= m_; ++c) {
      double v = 1.0;
      for (int k = 0; k < m_; ++k) v *= factor(table_[c][k], phi[k], k == i ? 1 : 0);
      jac(c, i) = v;
    }
  return jac;
}

std::vector<Vec> HypersphereAngles::hessian(const Eigen::Ref<const Vec>& phi) const {
  std::vector<Vec> h(static_cast<std::size_t>(m_ * m_), Vec(m_ + 1));
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j)
      for (int c = 0; c <= m_; ++c) {
        double v = 1.0;
        for (int k = 0; k < m_; ++k) v *= factor(table_[c][k], phi[k], (k == i) + (k == j));
        h[i * m_ + j][c] = v;
      }
  return h;
}

ParamBox HypersphereAngles::domain() const {
  ParamBox box{Vec::Zero(m_), Vec::Constant(m_, kPi), std::vector<bool>(m_, false)};
  box.hi[m_ - 1] = 2.0 * kPi;
  box.periodic[m_ - 1] = true;
  return box;
}

namespace {

std::string num(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

ParamBox concat(const ParamBox& a, const ParamBox& b) {
  ParamBox out;
  out.lo.resize(a.dim() + b.dim());
  out.hi.resize(a.dim() + b.dim());
  out.lo << a.lo, b.lo;
  out.hi << a.hi, b.hi;
  out.periodic = a.periodic;
  out.periodic.insert(out.periodic.end(), b.periodic.begin(), b.periodic.end());
  return out;
}

Vec box_center(const ParamBox& box) { return 0.5 * (box.lo + box.hi); }

// ---------------------------------------------------------------------------

class CliffordChart final : public ImmersionChart {
 public:
  CliffordChart(double r, int j, int k)
      : ImmersionChart("clifford:r=" + num(r) + ",j=" + std::to_string(j) + ",k=" + std::to_string(k), j + k,
                       concat(HypersphereAngles(j).domain(), HypersphereAngles(k).domain())),
        r_(r),
        s_(std::sqrt(1.0 - r * r)),
        first_(j),
        second_(k) {
    const Vec u = box_center(domain()) + Vec::Constant(j + k, 0.1);
    orient_toward(u, preferred_normal(u));
    Vec lam(j + k);
    lam.head(j).setConstant(-s_ / r_);
    lam.tail(k).setConstant(r_ / s_);
    set_analytic_curvatures(lam);
  }

  Vec eval(const Vec& u) const override {
    Vec x(ambient_dim());
    x.head(first_.dim() + 1) = r_ * first_.eval(u.head(first_.dim()));
    x.tail(second_.dim() + 1) = s_ * second_.eval(u.tail(second_.dim()));
    return x;
  }

  Mat jacobian(const Vec& u) const override {
    const int j = first_.dim(), k = second_.dim();
    Mat jac = Mat::Zero(ambient_dim(), j + k);
    jac.block(0, 0, j + 1, j) = r_ * first_.jacobian(u.head(j));
    jac.block(j + 1, j, k + 1, k) = s_ * second_.jacobian(u.tail(k));
    return jac;
  }

  std::optional<Hessian> hessian(const Vec& u) const override {
    const int j = first_.dim(), k = second_.dim(), n = j + k;
    Hessian h(static_cast<std::size_t>(n * n), Vec::Zero(ambient_dim()));
    const auto h1 = first_.hessian(u.head(j));
    const auto h2 = second_.hessian(u.tail(k));
    for (int a = 0; a < j; ++a)
      for (int b = 0; b < j; ++b) h[a * n + b].head(j + 1) = r_ * h1[a * j + b];
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) h[(j + a) * n + (j + b)].tail(k + 1) = s_ * h2[a * k + b];
    return h;
  }

  bool exact_jacobian() const override { return true; }

 private:
  Vec preferred_normal(const Vec& u) const {
    Vec eta(ambient_dim());
    eta.head(first_.dim() + 1) = s_ * first_.eval(u.head(first_.dim()));
    eta.tail(second_.dim() + 1) = -r_ * second_.eval(u.tail(second_.dim()));
    return eta;
  }

  double r_, s_;
  HypersphereAngles first_, second_;
};

class GeodesicSphereChart final : public ImmersionChart {
 public:
  GeodesicSphereChart(const SpherePoint& center, double rho, int n)
      : ImmersionChart("sphere:rho=" + num(rho) + ",n=" + std::to_string(n), n, HypersphereAngles(n).domain()),
        center_(center.coords()),
        basis_(orthonormal_complement(center.coords())),
        rho_(rho),
        angles_(n) {
    const Vec u = box_center(domain()) + Vec::Constant(n, 0.1);
    orient_toward(u, std::sin(rho_) * center_ - std::cos(rho_) * basis_ * angles_.eval(u));
    if (orientation_sign() < 0) {
      // Reflect the parametrization so the inward normal is the positive one.
      basis_.col(0) *= -1.0;
      orient_toward(u, std::sin(rho_) * center_ - std::cos(rho_) * basis_ * angles_.eval(u));
    }
    set_analytic_curvatures(Vec::Constant(n, std::cos(rho_) / std::sin(rho_)));
  }

  Vec eval(const Vec& u) const override {
    return std::cos(rho_) * center_ + std::sin(rho_) * (basis_ * angles_.eval(u));
  }
  Mat jacobian(const Vec& u) const override { return std::sin(rho_) * (basis_ * angles_.jacobian(u)); }
  std::optional<Hessian> hessian(const Vec& u) const override {
    auto h = angles_.hessian(u);
    for (auto& v : h) v = std::sin(rho_) * (basis_ * v);
    return h;
  }
  bool exact_jacobian() const override { return true; }

 private:
  Vec center_;
  Mat basis_;
  double rho_;
  HypersphereAngles angles_;
};

// ---------------------------------------------------------------------------
// Cartan

using M3 = Eigen::Matrix3d;

M3 rot_z(double a, int order) {
  const double c = std::cos(a), s = std::sin(a);
  M3 m = M3::Zero();
  switch (order) {
    case 0: m << c, -s, 0, s, c, 0, 0, 0, 1; break;
    case 1: m << -s, -c, 0, c, -s, 0, 0, 0, 0; break;
    default: m << -c, s, 0, -s, -c, 0, 0, 0, 0; break;
  }
  return m;
}

M3 rot_y(double b, int order) {
  const double c = std::cos(b), s = std::sin(b);
  M3 m = M3::Zero();
  switch (order) {
    case 0: m << c, 0, s, 0, 1, 0, -s, 0, c; break;
    case 1: m << -s, 0, c, 0, 0, 0, -c, 0, -s; break;
    default: m << -c, 0, -s, 0, 0, 0, s, 0, -c; break;
  }
  return m;
}

class CartanChart final : public ImmersionChart {
 public:
  explicit CartanChart(double theta)
      : ImmersionChart("cartan:theta=" + num(theta), 3, make_domain()), theta_(theta) {
    diag_ = M3::Zero();
    ddiag_ = M3::Zero();
    for (int i = 0; i < 3; ++i) {
      const double phase = theta + (i == 0 ? 0.0 : (i == 1 ? 2.0 : -2.0) * kPi / 3.0);
      diag_(i, i) = 2.0 * std::cos(phase);
      ddiag_(i, i) = -2.0 * std::sin(phase);
    }
    const Vec u = Vec((Vec(3) << 1.0, 1.3, 0.7).finished());
    const M3 a = rotation(u, -1, -1);
    orient_toward(u, coords(-(a * ddiag_ * a.transpose())));
    Vec lam(3);
    lam << 1.0 / std::tan(theta - kPi / 3.0), 1.0 / std::tan(theta), 1.0 / std::tan(theta + kPi / 3.0);
    set_analytic_curvatures(lam);
    add_note("parameter box covers the SO(3)-orbit 4 times (stabilizer D = Z2 + Z2 of diagonal sign matrices)");
    add_note("normal points towards decreasing theta; curvature signs as cot(theta - pi/3), cot(theta), cot(theta + pi/3)");
  }

  Vec eval(const Vec& u) const override {
    const M3 a = rotation(u, -1, -1);
    return coords(a * diag_ * a.transpose());
  }

  Mat jacobian(const Vec& u) const override {
    const M3 a = rotation(u, -1, -1);
    Mat jac(5, 3);
    for (int i = 0; i < 3; ++i) {
      const M3 ai = rotation(u, i, -1);
      jac.col(i) = coords(ai * diag_ * a.transpose() + a * diag_ * ai.transpose());
    }
    return jac;
  }

  std::optional<Hessian> hessian(const Vec& u) const override {
    const M3 a = rotation(u, -1, -1);
    std::array<M3, 3> d1;
    for (int i = 0; i < 3; ++i) d1[i] = rotation(u, i, -1);
    Hessian h(9);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const M3 aij = rotation(u, i, j);
        h[i * 3 + j] = coords(aij * diag_ * a.transpose() + d1[i] * diag_ * d1[j].transpose() +
                              d1[j] * diag_ * d1[i].transpose() + a * diag_ * aij.transpose());
      }
    return h;
  }

  bool exact_jacobian() const override { return true; }

 private:
  static ParamBox make_domain() {
    ParamBox box;
    box.lo = Vec((Vec(3) << 0.0, kCartanEulerMargin, 0.0).finished());
    box.hi = Vec((Vec(3) << 2.0 * kPi, kPi - kCartanEulerMargin, 2.0 * kPi).finished());
    box.periodic = {true, false, true};
    return box;
  }

  // Rz(a) Ry(b) Rz(c) differentiated along the parameter axes i and j (-1 = none).
  static M3 rotation(const Vec& u, int i, int j) {
    int order[3] = {0, 0, 0};
    if (i >= 0) ++order[i];
    if (j >= 0) ++order[j];
    return rot_z(u[0], order[0]) * rot_y(u[1], order[1]) * rot_z(u[2], order[2]);
  }

  static Vec coords(const M3& m) {
    const auto& basis = TracelessSym3::basis();
    Vec x(5);
    for (int k = 0; k < 5; ++k) x[k] = (m * basis[k]).trace() / 6.0;
    return x;
  }

  double theta_;
  M3 diag_, ddiag_;
};

}  // namespace

ChartPtr clifford_torus(double r, int j, int k) {
  if (j < 1 || k < 1) throw Error(ErrorCode::BadDimension, "clifford torus needs j, k >= 1");
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::InvalidArgument, "clifford torus needs r in (0, 1)");
  return std::make_shared<CliffordChart>(r, j, k);
}

ChartPtr geodesic_sphere(const SpherePoint& center, double rho, int n) {
  if (n < 2) throw Error(ErrorCode::BadDimension, "geodesic sphere needs n >= 2");
  if (center.ambient_dim() != n + 2) throw Error(ErrorCode::BadDimension, "center must live in R^{n+2}");
  if (!(rho > 0.0 && rho < kPi)) throw Error(ErrorCode::InvalidArgument, "geodesic sphere needs rho in (0, pi)");
  return std::make_shared<GeodesicSphereChart>(center, rho, n);
}

const std::array<TracelessSym3::Matrix3, 5>& TracelessSym3::basis() {
  static const std::array<Matrix3, 5> b = [] {
    const double r3 = std::sqrt(3.0);
    std::array<Matrix3, 5> out;
    for (auto& m : out) m.setZero();
    out[0].diagonal() << 2.0, -1.0, -1.0;
    out[1].diagonal() << 0.0, r3, -r3;
    out[2](0, 1) = out[2](1, 0) = r3;
    out[3](0, 2) = out[3](2, 0) = r3;
    out[4](1, 2) = out[4](2, 1) = r3;
    return out;
  }();
  return b;
}

TracelessSym3 TracelessSym3::from_matrix(const Matrix3& m) {
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw Error(ErrorCode::InvalidArgument, "matrix is not symmetric");
  if (std::abs(m.trace()) > 1e-12) throw Error(ErrorCode::InvalidArgument, "matrix is not traceless");
  Coords c;
  for (int k = 0; k < 5; ++k) c[k] = (m * basis()[k]).trace() / 6.0;
  return TracelessSym3(c);
}

TracelessSym3::Matrix3 TracelessSym3::matrix() const {
  Matrix3 m = Matrix3::Zero();
  for (int k = 0; k < 5; ++k) m += coords_[k] * basis()[k];
  return m;
}

CartanInvariants cartan_invariants(const TracelessSym3& m) {
  const auto mat = m.matrix();
  return {(mat * mat).trace() / 6.0, mat.determinant() / 2.0};
}

ChartPtr cartan_hypersurface(double theta) {
  if (!(theta > 0.0 && theta < kPi / 6.0))
    throw Error(ErrorCode::ThetaOutOfRange, "cartan hypersurface needs theta strictly inside (0, pi/6)");
  return std::make_shared<CartanChart>(theta);
}

}  // namespace hyperrig
