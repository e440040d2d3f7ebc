#pragma once

// Smallest enclosing and largest empty geodesic balls of a finite point set
// on S^m.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sphere.hpp"

namespace hyperrig {

enum class BallObjective { Enclosing, Empty };

struct BallConfig {
  int multistarts = 16;
  std::uint64_t seed = 0;
  int max_iters = 2000;
  /// Step schedule a / k.
  double step_scale = kPi / 4.0;
  double tie_tol = 1e-6;
  double move_tol = 1e-10;
  bool oracle = false;
  double oracle_density = 1e5;
  int threads = 1;
};

struct BallResult {
  SpherePoint center;
  double radius = 0.0;
  std::vector<std::size_t> achiever_indices;
  int iterations = 0;
  /// Index of the winning start (0 = Euclidean-mean start).
  int start_index = 0;
  /// solver - oracle for the enclosing ball, oracle - solver for the empty ball.
  std::optional<double> certified_gap;
  std::optional<double> oracle_value;
};

struct OracleResult {
  SpherePoint center;
  double value = 0.0;
  std::size_t grid_points = 0;
};

/// Minimizes max_i d(c, x_i) by Riemannian subgradient descent with multistart.
/// Throws EmptyInput, or DegenerateEnclosure when the best radius reaches pi - 1e-6.
BallResult smallest_enclosing_ball(std::span<const SpherePoint> points, const BallConfig& cfg = {});
BallResult smallest_enclosing_ball(const Mat& points, const BallConfig& cfg = {});

/// Maximizes min_i d(c, x_i) by supergradient ascent with multistart
/// (random starts, -mean, and the coordinate poles +-e_k).
BallResult largest_empty_ball(std::span<const SpherePoint> points, const BallConfig& cfg = {});
BallResult largest_empty_ball(const Mat& points, const BallConfig& cfg = {});

/// Exhaustive evaluation of the objective on a quasi-uniform grid of about
/// `grid_density` points followed by a local pattern refinement. Ambient
/// dimension must be <= 5.
OracleResult brute_force_ball_oracle(const Mat& points, BallObjective objective, double grid_density);
OracleResult brute_force_ball_oracle(std::span<const SpherePoint> points, BallObjective objective,
                                     double grid_density);

/// Quasi-uniform grid of about `count` points on the unit sphere of R^dim
/// (Fibonacci spiral for dim 3, nested angle rings otherwise), as columns.
Mat sphere_grid(int dim, double count);

}  // namespace hyperrig
