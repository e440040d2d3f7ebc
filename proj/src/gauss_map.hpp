#pragma once

// The transport Gauss map gamma(p) = tau_p^{p0}(eta(p)) and the quantities
// built from it: c(p), the invariant shape operator, the differential
// identity tau_{p0}^p o dgamma = -(A + c I), and the covering degree.

#include <optional>
#include <vector>

#include "immersion.hpp"

namespace hyperrig {

/// A sample of some mesh; lets one context span several meshes or a subset.
struct SampleRef {
  const HypersurfaceMesh* mesh;
  std::size_t index;

  const SurfaceSample& sample() const { return (*mesh)[index]; }
  const ImmersionChart& chart() const { return mesh->chart(); }
};

class GaussMapContext {
 public:
  /// Throws AntipodalPoints if -p0 lies on the mesh (1 + <p, p0> <= tol).
  GaussMapContext(SpherePoint p0, const HypersurfaceMesh& mesh, double tol = kAntipodalTol);
  GaussMapContext(SpherePoint p0, std::vector<SampleRef> samples, double tol = kAntipodalTol);

  const SpherePoint& basepoint() const { return p0_; }
  const std::vector<SampleRef>& samples() const { return samples_; }
  int param_dim() const;
  double tolerance() const { return tol_; }

 private:
  SpherePoint p0_;
  std::vector<SampleRef> samples_;
  double tol_;
};

/// gamma(p) = -<eta,p0>/(1+<p,p0>) (p + p0) + eta, a unit vector orthogonal to p0.
Vec gauss_map(const GaussMapContext& ctx, const SurfaceSample& s);
/// Same point and normal given explicitly.
Vec gauss_map_at(const Vec& p0, const Vec& point, const Vec& normal);

/// c(p) = <eta(p), p0> / (1 + <p, p0>).
double transport_coefficient(const GaussMapContext& ctx, const SurfaceSample& s);

/// alpha_p = c(p) Id in the sample's tangent frame.
Mat invariant_shape(const GaussMapContext& ctx, const SurfaceSample& s);

/// Max-abs entry of tau_{p0}^p o dgamma + A + c I, with dgamma taken by
/// central differences of gamma along the chart's parameter axes.
double relationship_residual(const GaussMapContext& ctx, const SampleRef& ref, double h = 1e-3,
                             const CurvatureOptions& opts = {});

/// orientation_sign * det(A + c I).
double jacobian_determinant(const GaussMapContext& ctx, const SampleRef& ref);

struct DegreeResult {
  double raw = 0.0;
  int degree = 0;
  double residual = 0.0;
  double min_abs_jacobian = 0.0;
  bool nonsingular = false;
};

struct DegreeOptions {
  double singular_tol = 1e-8;
  double integer_tol = 0.05;
};

/// Quadrature of the Jacobian determinant over the context's samples,
/// normalized by vol(S^n). Never throws on singular or non-integer results.
DegreeResult degree_scan(const GaussMapContext& ctx, const DegreeOptions& opts = {});

/// As degree_scan, but throws SingularGaussMap / NonIntegerDegree.
DegreeResult degree(const GaussMapContext& ctx, const DegreeOptions& opts = {});

/// vol(S^n) = 2 pi^{(n+1)/2} / Gamma((n+1)/2).
double sphere_volume(int n);

}  // namespace hyperrig
