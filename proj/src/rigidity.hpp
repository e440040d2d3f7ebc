#pragma once

// Hypothesis and conclusion checkers for the curvature-pinching rigidity
// results, plus the Clifford sharpness scan.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ball.hpp"
#include "gauss_map.hpp"

namespace hyperrig {

enum class TheoremId { T1, T3, T2, Corollary };

const char* theorem_id_name(TheoremId id);

/// Outcome of a Gauss map scan over one set of samples.
struct GaussScan {
  bool ran = false;
  bool nonsingular = false;
  int degree = 0;
  double raw = 0.0;
  double residual = 0.0;
  double min_abs_jacobian = 0.0;
  std::size_t samples = 0;
  std::string error;  // set when the scan could not run
};

/// One connected component of an invariant mesh (quotient checks).
struct ComponentReport {
  std::size_t samples = 0;
  double min_abs_curvature = 0.0;
  /// Minimum distance from the component to the lifted basepoint.
  double min_distance_to_basepoint = 0.0;
  bool avoids_small_ball = false;
  GaussScan scan;
};

struct RigidityReport {
  TheoremId theorem_id = TheoremId::T1;
  std::string inputs_digest;
  Vec basepoint;
  double R = 0.0;
  double bound = 0.0;
  double min_abs_curvature = 0.0;
  double margin = 0.0;
  bool hypothesis_holds = false;
  bool gauss_map_nonsingular = false;
  std::optional<int> degree;
  std::optional<double> degree_raw;
  std::optional<double> degree_residual;
  std::optional<double> min_abs_jacobian;
  /// Hypothesis held but the checkable conclusion did not.
  bool falsification = false;
  std::vector<std::string> notes;

  // T1 only.
  std::optional<double> ball_gap;
  // T3 only.
  std::optional<double> L;
  // T2 / Corollary.
  std::optional<double> r;
  std::optional<double> identity_residual;
  std::optional<int> components_upstairs;
  std::optional<int> components_downstairs;
  std::optional<double> multiplicity;
  std::optional<std::string> topology_label;
  std::vector<ComponentReport> components;
};

struct RigidityConfig {
  BallConfig ball;
  DegreeOptions degree;
  /// Run the Gauss scan even when the hypothesis fails (diagnostic only).
  bool always_scan = false;
  /// Extra text folded into the inputs digest (the resolved run config).
  std::string digest_salt;
};

/// FNV-1a 64-bit over the sample points and normals plus `salt`, as 16 hex digits.
std::string inputs_digest(const HypersurfaceMesh& mesh, const std::string& salt);
std::string fnv1a_hex(const std::string& bytes);

/// Gauss map scan over `samples` with basepoint p0. Never throws; failures are
/// recorded in GaussScan::error.
GaussScan gauss_scan(const SpherePoint& p0, std::vector<SampleRef> samples, const DegreeOptions& opts);

/// Marks a report as falsifying when its hypothesis holds but the scan shows a
/// singular differential or |degree| != 1.
void apply_falsification_monitor(RigidityReport& report);

/// Enclosing-radius pinching: min |lambda| > tan(R / 2), R the radius of the
/// smallest geodesic ball containing the mesh and p0 its center. With
/// `p0_override` the ball is centered there instead.
RigidityReport check_theorem1(const HypersurfaceMesh& mesh, const RigidityConfig& cfg = {},
                              const std::optional<SpherePoint>& p0_override = std::nullopt);

/// Normal-strip pinching: min |lambda| > sin L / (1 + cos R) with
/// L = max arcsin |<eta, p0>| and R = max d(p, p0).
RigidityReport check_variation(const HypersurfaceMesh& mesh, const SpherePoint& p0,
                               const RigidityConfig& cfg = {});

struct SharpnessRow {
  double r = 0.0;
  double min_abs_curvature = 0.0;           // numeric pipeline
  double min_abs_curvature_analytic = 0.0;  // min{r/s, s/r}
  double R_enclosing = 0.0;
  double R_enclosing_analytic = 0.0;  // pi - arccos min{r, s}
  double R_empty = 0.0;
  double R_empty_analytic = 0.0;  // arccos min{r, s}
  double ratio = 0.0;             // min|lambda| / tan(R_enclosing / 2)
  double ratio_analytic = 0.0;
  double ratio_empty = 0.0;  // min|lambda| / tan(R_empty / 2)
  /// (1 / 2 pi) * integral of the intrinsic curvature 1 + lambda_1 lambda_2.
  double euler_characteristic = 0.0;
  bool ce_holds = false;
  bool ce_holds_analytic = false;
};

struct SharpnessResult {
  double epsilon = 0.0;
  std::vector<SharpnessRow> rows;
  double best_r = 0.0;
  double max_ratio = 0.0;
  double max_ratio_analytic = 0.0;
  /// Some row satisfies min|lambda| > epsilon tan(R/2) (numeric / closed form).
  bool ce_satisfiable = false;
  bool ce_satisfiable_analytic = false;
};

struct SharpnessConfig {
  int resolution = 64;
  BallConfig ball;
  MeshOptions mesh;
};

/// r = 0.10, 0.15, ..., 0.90 together with 1/sqrt(2), ascending.
std::vector<double> default_sharpness_grid();

/// Scans the Clifford tori S^1(r) x S^1(s) in S^3.
SharpnessResult sharpness_scan(double epsilon, const std::vector<double>& r_grid,
                               const SharpnessConfig& cfg = {});

}  // namespace hyperrig
