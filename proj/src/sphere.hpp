#pragma once

// Exact-formula geometry of the unit sphere S^{n+1} in R^{n+2}.

#include <Eigen/Dense>

namespace hyperrig {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Default cutoff on 1 + <p,q> below which two points count as antipodal.
inline constexpr double kAntipodalTol = 1e-9;

inline constexpr double kPi = 3.14159265358979323846;

/// A point of the unit sphere. Coordinates are renormalized on construction.
class SpherePoint {
 public:
  explicit SpherePoint(Vec coords);

  /// The basis vector e_axis of R^ambient_dim (axis is zero based).
  static SpherePoint basis(int ambient_dim, int axis);

  const Vec& coords() const { return coords_; }
  int ambient_dim() const { return static_cast<int>(coords_.size()); }
  double operator[](int i) const { return coords_[i]; }
  SpherePoint antipode() const { return SpherePoint(-coords_, Trusted{}); }

 private:
  struct Trusted {};
  SpherePoint(Vec coords, Trusted) : coords_(std::move(coords)) {}
  Vec coords_;
};

/// A vector tangent to the sphere at `base`. The normal component of the
/// supplied vector is projected out.
class TangentVector {
 public:
  TangentVector(SpherePoint base, const Vec& vec);

  static TangentVector zero(const SpherePoint& base);

  const SpherePoint& base() const { return base_; }
  const Vec& vec() const { return vec_; }
  double norm() const { return vec_.norm(); }

 private:
  SpherePoint base_;
  Vec vec_;
};

/// Angle in [0, pi] between two unit vectors, evaluated as
/// atan2(|q - <p,q> p|, <p,q>) which keeps full precision near 0 and pi.
double unit_angle(const Vec& p, const Vec& q);

double geodesic_distance(const SpherePoint& p, const SpherePoint& q);

/// Parallel transport of v from v.base() to q along the minimizing geodesic:
///   tau(v) = -<v,q>/(1+<q,p>) (q + p) + v.
/// Throws AntipodalPoints when 1 + <p,q> <= tol.
TangentVector parallel_transport(const TangentVector& v, const SpherePoint& q,
                                 double tol = kAntipodalTol);

/// Raw transport formula on coordinate vectors, no checks.
Vec transport_raw(const Vec& p, const Vec& q, const Vec& v);

SpherePoint exp_map(const TangentVector& v);

/// Inverse of exp_map on the open ball of radius pi.
TangentVector log_map(const SpherePoint& p, const SpherePoint& q, double tol = kAntipodalTol);

/// The field v~(q) = (tau_{p0}^q o tau_p^{p0})(v) generated by v in T_p.
TangentVector tilde_field(const TangentVector& v, const SpherePoint& p0, const SpherePoint& q,
                          double tol = kAntipodalTol);

/// Distance from x to the great hypersphere {<x,p0> = 0}: arcsin |<x,p0>|.
double distance_to_great_sphere(const SpherePoint& x, const SpherePoint& p0);

/// Orthonormal basis (as columns) of the orthogonal complement of a unit vector.
Mat orthonormal_complement(const Vec& unit);

}  // namespace hyperrig
