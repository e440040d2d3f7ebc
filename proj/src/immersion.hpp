#pragma once

// Parametrized hypersurfaces of S^{n+1} and their extrinsic curvature data.

#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sphere.hpp"

namespace hyperrig {

/// Rectangular parameter box with per-axis periodicity.
struct ParamBox {
  Vec lo;
  Vec hi;
  std::vector<bool> periodic;

  int dim() const { return static_cast<int>(lo.size()); }
};

/// Second partials d^2 f / du_i du_j stored at index i * n + j.
using Hessian = std::vector<Vec>;

class ImmersionChart;
using ChartPtr = std::shared_ptr<const ImmersionChart>;

/// A map from an n-dimensional parameter box into S^{n+1}.
///
/// Subclasses supply eval() and, where closed forms exist, exact jacobian()
/// and hessian(). The normal convention is det[f | df | eta0] > 0 and the
/// chart's normal is orientation_sign() * eta0.
class ImmersionChart {
 public:
  ImmersionChart(std::string name, int param_dim, ParamBox domain);
  virtual ~ImmersionChart() = default;

  const std::string& name() const { return name_; }
  int param_dim() const { return param_dim_; }
  int ambient_dim() const { return param_dim_ + 2; }
  const ParamBox& domain() const { return domain_; }
  int orientation_sign() const { return orientation_sign_; }
  /// False for charts with boundary (patches); the rigidity checks need a
  /// closed hypersurface.
  bool closed() const { return closed_; }

  virtual Vec eval(const Vec& u) const = 0;
  /// Central differences unless overridden.
  virtual Mat jacobian(const Vec& u) const;
  virtual std::optional<Hessian> hessian(const Vec& u) const;
  virtual bool exact_jacobian() const { return false; }

  /// Closed-form principal curvatures (ascending) when the generator knows them.
  const std::optional<Vec>& analytic_curvatures() const { return analytic_; }
  const std::vector<std::string>& notes() const { return notes_; }

 protected:
  void set_orientation_sign(int sign) { orientation_sign_ = sign >= 0 ? 1 : -1; }
  /// Picks orientation_sign so that the normal at u has positive inner product
  /// with `preferred`.
  void orient_toward(const Vec& u, const Vec& preferred);
  void set_analytic_curvatures(Vec values);
  void add_note(std::string note) { notes_.push_back(std::move(note)); }
  void set_closed(bool closed) { closed_ = closed; }

 private:
  std::string name_;
  int param_dim_;
  ParamBox domain_;
  int orientation_sign_ = 1;
  bool closed_ = true;
  std::optional<Vec> analytic_;
  std::vector<std::string> notes_;
};

/// Same immersion, opposite normal.
ChartPtr flip_orientation(ChartPtr base);
/// Restricts the parameter box (no periodic axes).
ChartPtr restrict_domain(ChartPtr base, Vec lo, Vec hi);
/// Composes the chart with an orthogonal map g of the ambient space; the
/// normal is carried along as g * eta.
ChartPtr transform_chart(ChartPtr base, const Mat& g, std::string name = {});

struct CurvatureOptions {
  double rank_tol = 1e-7;
  /// Step for differencing the normal when no exact hessian is used.
  double h_normal = 1e-5;
  /// Ignore an available hessian and difference the normal instead.
  bool force_finite_differences = false;
  /// Raw shape matrices more asymmetric than this are rejected.
  double asymmetry_tol = 1e-4;
};

/// Point, derivatives and orthonormalized tangent frame at one parameter.
struct LocalFrame {
  Vec u;
  Vec point;
  Mat jacobian;  // (n+2) x n
  Mat tangent;   // (n+2) x n, orthonormal columns, jacobian = tangent * r_factor
  Mat r_factor;  // n x n upper triangular
  Vec normal;
  double area_element = 0.0;
};

LocalFrame local_frame(const ImmersionChart& chart, const Vec& u, const CurvatureOptions& opts = {});

TangentVector unit_normal(const ImmersionChart& chart, const Vec& u, const CurvatureOptions& opts = {});

struct ShapeData {
  Mat shape;          // symmetrized, in the orthonormal tangent frame
  double asymmetry;   // max |S - S^T| before symmetrization
  Vec principal;      // ascending
};

ShapeData shape_data(const ImmersionChart& chart, const LocalFrame& frame,
                     const CurvatureOptions& opts = {});
Mat shape_operator(const ImmersionChart& chart, const Vec& u, const CurvatureOptions& opts = {});
Vec principal_curvatures(const ImmersionChart& chart, const Vec& u, const CurvatureOptions& opts = {});
double gauss_kronecker(const ImmersionChart& chart, const Vec& u, const CurvatureOptions& opts = {});

struct SurfaceSample {
  Vec u;
  SpherePoint point;
  TangentVector normal;
  Mat tangent;  // orthonormal frame the shape matrix is written in
  Mat shape;
  double asymmetry = 0.0;
  Vec principal_curvatures;
  double weight = 0.0;
};

class HypersurfaceMesh {
 public:
  HypersurfaceMesh(ChartPtr chart, std::vector<int> resolution, std::vector<SurfaceSample> samples);

  const ImmersionChart& chart() const { return *chart_; }
  const ChartPtr& chart_ptr() const { return chart_; }
  const std::vector<int>& resolution() const { return resolution_; }
  const std::vector<SurfaceSample>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  const SurfaceSample& operator[](std::size_t i) const { return samples_[i]; }
  double total_area() const { return total_area_; }

  /// Grid neighbours of sample i (+1 along every axis, wrapping periodic axes).
  std::vector<std::size_t> forward_neighbors(std::size_t i) const;

  /// Points as columns of an (n+2) x N matrix.
  Mat point_matrix() const;

  double min_abs_curvature() const;
  double max_abs_curvature() const;
  double max_asymmetry() const;

 private:
  ChartPtr chart_;
  std::vector<int> resolution_;
  std::vector<SurfaceSample> samples_;
  double total_area_ = 0.0;
};

struct MeshOptions {
  CurvatureOptions curvature;
  int threads = 1;
  double seam_tol = 1e-8;
};

/// Uniform grid sampling. Periodic axes use lo + k*h, others the cell midpoints.
HypersurfaceMesh sample_mesh(ChartPtr chart, const std::vector<int>& resolution,
                             const MeshOptions& opts = {});

/// Default per-axis resolution: 64 for surfaces, 24 for threefolds.
int default_resolution(int param_dim);

/// Inner product of normals at grid-adjacent samples is positive everywhere.
bool orientation_coherent(const HypersurfaceMesh& mesh);

/// One row per sample: u, point, normal, principal curvatures, weight.
void write_mesh_csv(const HypersurfaceMesh& mesh, std::ostream& out);

}  // namespace hyperrig
