#pragma once

// Finite groups of isometries acting freely on S^{n+1}: Dirichlet fundamental
// domains, bisectors, distances in the quotient, and the space-form checkers.

#include <cstdint>
#include <string>
#include <vector>

#include "rigidity.hpp"

namespace hyperrig {

class IsometryGroup {
 public:
  /// {I, -I} on R^d.
  static IsometryGroup antipodal(int ambient_dim);
  /// Cyclic group of order k on R^4 generated by rotation by 2 pi / k in the
  /// (x0, x1) plane and by 2 pi q / k in the (x2, x3) plane.
  static IsometryGroup lens(int k, int q = 1);
  /// Validates orthogonality (1e-10), closure under products and inverses,
  /// identity first, and a free action. Errors name the offending element.
  static IsometryGroup from_matrices(std::vector<Mat> elements, std::string name = "custom");
  /// Either a list of matrices or {"name": ..., "elements": [...]}; each
  /// matrix is a list of rows or a flat row-major list.
  static IsometryGroup from_json(const std::string& text);

  const std::string& name() const { return name_; }
  int ambient_dim() const { return static_cast<int>(elements_.front().rows()); }
  std::size_t size() const { return elements_.size(); }
  const Mat& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<Mat>& elements() const { return elements_; }

  /// Row-major matrices with 17 significant digits.
  std::string to_json() const;

 private:
  IsometryGroup(std::vector<Mat> elements, std::string name)
      : elements_(std::move(elements)), name_(std::move(name)) {}
  std::vector<Mat> elements_;
  std::string name_;
};

/// r = min over g != e of d(p, g p). Throws TrivialGroup.
double separation(const IsometryGroup& group, const SpherePoint& p);

/// d(p, x) < d(g p, x) - strict_tol for every g != e.
bool in_fundamental_domain(const IsometryGroup& group, const SpherePoint& p, const SpherePoint& x,
                           double strict_tol = 0.0);

/// d(p, x) <= d(g p, x) + tol for every g != e.
bool in_domain_closure(const IsometryGroup& group, const SpherePoint& p, const SpherePoint& x,
                       double tol = 1e-9);

/// Indices g != e with |d(p, x) - d(g p, x)| < tol.
std::vector<std::size_t> bisector_membership(const IsometryGroup& group, const SpherePoint& p,
                                             const SpherePoint& x, double tol = 1e-8);

/// min over g of d(x, g y).
double quotient_distance(const IsometryGroup& group, const SpherePoint& x, const SpherePoint& y);

struct CutLocusOptions {
  /// Grid points per bisector great sphere.
  double density = 1e4;
  double closure_tol = 1e-9;
};

/// Samples of the boundary of the Dirichlet domain at p0, used to evaluate
/// distances to the cut locus of the projected basepoint.
class CutLocusSampler {
 public:
  CutLocusSampler(const IsometryGroup& group, const SpherePoint& p0, const CutLocusOptions& opts = {});

  /// min over boundary points y of the quotient distance from x to y. Uses the
  /// boundary samples plus the exact projections of every image g x onto
  /// each bisector and each pairwise intersection of bisectors.
  double distance(const SpherePoint& x) const;
  /// Batched distance for the columns of `points`.
  Vec distances(const Mat& points) const;

  std::size_t sample_count() const { return static_cast<std::size_t>(samples_.cols()); }
  /// Nominal spacing of the boundary grid (error bound of the sampled part).
  double spacing() const { return spacing_; }
  const Mat& samples() const { return samples_; }

 private:
  double projection_candidates(const Vec& x) const;

  IsometryGroup group_;
  Vec p0_;
  std::vector<Vec> normals_;  // unit normals of the bisector great spheres
  Mat samples_;
  double spacing_ = 0.0;
  double closure_tol_;
};

double cut_locus_distance(const IsometryGroup& group, const SpherePoint& p0, const SpherePoint& x,
                          const CutLocusOptions& opts = {});

/// A hypersurface given by one or more sampled pieces.
struct InvariantMesh {
  std::vector<HypersurfaceMesh> pieces;

  std::size_t size() const;
  Mat point_matrix() const;
  double min_abs_curvature() const;
  std::vector<SampleRef> refs() const;
};

/// Pair of latitude spheres at distance c from the great sphere orthogonal to
/// p0 (geodesic spheres of radius pi/2 - c about p0 and -p0); the second
/// piece is the image of the first under -I.
InvariantMesh latitude_pair(const SpherePoint& p0, double c, int n, int resolution, const MeshOptions& opts = {});
/// The great sphere orthogonal to p0, as one piece.
InvariantMesh equator_mesh(const SpherePoint& p0, int n, int resolution, const MeshOptions& opts = {});

/// Max over g and samples x of the distance from g x to the nearest sample.
double invariance_defect(const IsometryGroup& group, const InvariantMesh& mesh);

struct ComponentCount {
  int upstairs = 0;
  int downstairs = 0;
  /// Component label per sample, pieces concatenated in order.
  std::vector<int> labels;
};

/// Grid adjacency within pieces plus coincidence of samples (within tol)
/// across and inside pieces; downstairs also identifies x with g x.
ComponentCount count_components(const IsometryGroup& group, const InvariantMesh& mesh, double tol = 1e-6);

struct QuotientConfig {
  RigidityConfig rigidity;
  CutLocusOptions cut_locus;
  double mesh_tol = 1e-6;
};

RigidityReport check_theorem2(const IsometryGroup& group, const SpherePoint& p0, const InvariantMesh& mesh,
                              const QuotientConfig& cfg = {});

/// The antipodal case: r = pi, distance to the cut locus arcsin |<x, p0>|.
RigidityReport check_corollary(const SpherePoint& p0, const InvariantMesh& mesh, const QuotientConfig& cfg = {});

/// |tan((pi - r/2 + R)/2) - cot((r - 2R)/4)|.
double theorem2_identity_residual(double r, double R);

struct LemmaReport {
  std::size_t small_ball_samples = 0;
  std::size_t small_ball_violations = 0;
  std::size_t isometry_pairs = 0;
  /// Max |d_quotient - d| over pairs (p, x), x in the domain, and pairs
  /// inside B_{r/4}(p).
  double isometry_max_error = 0.0;
  /// Points x in the domain with some g x (g != e) also in the domain.
  std::size_t injectivity_violations = 0;
  bool antipode_excluded = false;
  std::size_t antipode_bisector_size = 0;
};

/// Sampled checks of the fundamental-domain lemmas at p.
LemmaReport verify_lemmas(const IsometryGroup& group, const SpherePoint& p, std::size_t count,
                          std::uint64_t seed = 0);

}  // namespace hyperrig
