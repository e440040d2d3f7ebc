#pragma once

// Central projection of the upper hemisphere onto R^{n+1} and the deformation
// C_t = B^{-1} o (x -> t x) o B that pulls a hypersurface towards the pole.

#include <optional>
#include <vector>

#include "ball.hpp"
#include "immersion.hpp"

namespace hyperrig {

inline constexpr double kHemisphereTol = 1e-9;

/// B(p) = (p_1, ..., p_{n+1}) / p_{n+2}. Throws OutsideHemisphere when
/// p_{n+2} <= hem_tol.
Vec beltrami(const SpherePoint& p, double hem_tol = kHemisphereTol);

/// (x, 1) / sqrt(1 + |x|^2).
SpherePoint beltrami_inverse(const Vec& x);

/// C_t(p) = (t p_1, ..., t p_{n+1}, p_{n+2}) / |...|, which equals
/// B^{-1}(t B(p)) on the upper hemisphere.
SpherePoint beltrami_deform(const SpherePoint& p, double t, double hem_tol = kHemisphereTol);

/// The chart composed with C_t. Derivatives come from the chain rule on the
/// normalization map, so no differencing passes through the composition.
/// Evaluation throws OutsideHemisphere at points with p_{n+2} <= hem_tol.
ChartPtr deform_chart(ChartPtr chart, double t, double hem_tol = kHemisphereTol);

struct DeformationRow {
  double t = 1.0;
  double min_abs_curvature = 0.0;
  double max_abs_curvature = 0.0;
  double R_enclosing = 0.0;
};

struct BlowupStudy {
  std::vector<DeformationRow> rows;
  /// min|lambda| strictly increases from row to row.
  bool strictly_increasing = false;
  /// Largest t from which min|lambda| strictly increases through the last row.
  double t_threshold = 0.0;
  /// First t with min|lambda| > 1 = tan(pi/4), if any.
  std::optional<double> t_exceeds_one;
};

struct BlowupConfig {
  std::vector<int> resolution;  // empty: default_resolution per axis
  MeshOptions mesh;
  BallConfig ball;
  bool compute_radius = true;
};

/// One row per t (t_list positive and strictly decreasing).
BlowupStudy blowup_study(ChartPtr chart, const std::vector<double>& t_list, const BlowupConfig& cfg = {});

/// Geodesic sphere of radius pi/4 about a center tilted pi/8 from the pole
/// e_{n+2}, inside the open upper hemisphere.
ChartPtr off_pole_sphere(int n);

/// Open patch of the Clifford torus r = s = 1/sqrt(2) in S^3 around
/// phi = 0, psi = pi/2, inside the upper hemisphere.
ChartPtr clifford_patch();

}  // namespace hyperrig
