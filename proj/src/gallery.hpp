#pragma once

// Closed-form charts with known curvature data.

#include <array>

#include "immersion.hpp"

namespace hyperrig {

/// Hyperspherical-angle parametrization of the unit sphere S^m in R^{m+1}
/// with exact first and second derivatives. Angles 0..m-2 range over (0, pi),
/// the last one over [0, 2 pi) and is periodic.
class HypersphereAngles {
 public:
  explicit HypersphereAngles(int m);

  int dim() const { return m_; }
  Vec eval(const Eigen::Ref<const Vec>& phi) const;
  Mat jacobian(const Eigen::Ref<const Vec>& phi) const;
  /// Entry i*m + j holds d^2 sigma / dphi_i dphi_j.
  std::vector<Vec> hessian(const Eigen::Ref<const Vec>& phi) const;
  ParamBox domain() const;

 private:
  enum class Factor : unsigned char { One, Sin, Cos };
  double factor(Factor f, double x, int order) const;
  int m_;
  std::vector<std::vector<Factor>> table_;  // [component][angle]
};

/// Clifford torus S^j(r) x S^k(s) in S^{j+k+1}, s = sqrt(1 - r^2). The normal
/// is (s x/r, -r y/s), giving curvatures -s/r (j times) and r/s (k times).
ChartPtr clifford_torus(double r, int j, int k);

/// Geodesic sphere of radius rho about `center`, inward normal (towards the
/// center), curvature cot(rho) with multiplicity n.
ChartPtr geodesic_sphere(const SpherePoint& center, double rho, int n);

/// Traceless symmetric 3x3 matrix stored by coordinates in the frozen
/// orthonormal basis of V under <a,b> = tr(ab)/6:
///   B0 = diag(2,-1,-1), B1 = sqrt3 diag(0,1,-1),
///   B2 = sqrt3 (E01+E10), B3 = sqrt3 (E02+E20), B4 = sqrt3 (E12+E21).
class TracelessSym3 {
 public:
  using Coords = Eigen::Matrix<double, 5, 1>;
  using Matrix3 = Eigen::Matrix3d;

  explicit TracelessSym3(const Coords& coords) : coords_(coords) {}
  /// Rejects matrices that are not symmetric or not traceless (1e-12).
  static TracelessSym3 from_matrix(const Matrix3& m);
  static const std::array<Matrix3, 5>& basis();

  const Coords& coords() const { return coords_; }
  Matrix3 matrix() const;

 private:
  Coords coords_;
};

struct CartanInvariants {
  double q;  // tr(m^2) / 6
  double c;  // det(m) / 2
};

CartanInvariants cartan_invariants(const TracelessSym3& m);

/// Cartan's isoparametric orbit {C = cos 3 theta} in S^4, theta in (0, pi/6),
/// via u = (a, b, c) -> A D A^T with A = Rz(a) Ry(b) Rz(c) and
/// D = diag(2cos theta, 2cos(theta + 2pi/3), 2cos(theta - 2pi/3)).
/// The normal points towards decreasing theta, which gives the curvatures
/// cot(theta - pi/3), cot(theta), cot(theta + pi/3).
ChartPtr cartan_hypersurface(double theta);

/// Euler-angle margin kept away from the coordinate singularities b = 0, pi.
inline constexpr double kCartanEulerMargin = 1e-3;

}  // namespace hyperrig
