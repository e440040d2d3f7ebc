#include "ball.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "error.hpp"
#include "parallel.hpp"

namespace hyperrig {

namespace {

Mat to_matrix(std::span<const SpherePoint> points) {
  if (points.empty()) throw Error(ErrorCode::EmptyInput, "ball problem needs at least one point");
  const int d = points.front().ambient_dim();
  Mat m(d, static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].ambient_dim() != d) throw Error(ErrorCode::BadDimension, "mixed point dimensions");
    m.col(static_cast<Eigen::Index>(i)) = points[i].coords();
  }
  return m;
}

void validate(const Mat& points) {
  if (points.cols() == 0) throw Error(ErrorCode::EmptyInput, "ball problem needs at least one point");
  if (points.rows() < 2) throw Error(ErrorCode::BadDimension, "points need ambient dimension >= 2");
}

// Points are held as rows (N x d) so that inner products with one or many
// centers are plain column-major products.

// Objective to minimize: max distance (enclosing) or minus min distance (empty).
// Distances come from unit_angle at the extreme inner product.
double score_from(const Mat& rows, const Vec& ip, const Vec& c, BallObjective obj) {
  Eigen::Index k;
  if (obj == BallObjective::Enclosing) {
    ip.minCoeff(&k);
    return unit_angle(c, rows.row(k).transpose());
  }
  ip.maxCoeff(&k);
  return -unit_angle(c, rows.row(k).transpose());
}

Vec unit_log_direction(const Vec& c, const Vec& x) {
  Vec w = x - x.dot(c) * c;
  const double n = w.norm();
  if (n < 1e-14) return Vec::Zero(c.size());
  return w / n;
}

struct Descent {
  Vec center;
  double value;  // score (minimized)
  int iterations;
};

Descent descend(const Mat& rows, Vec c, BallObjective obj, const BallConfig& cfg) {
  Descent best{c, std::numeric_limits<double>::infinity(), 0};
  Vec ip(rows.rows());
  int it = 0;
  for (int k = 1; k <= cfg.max_iters + 1; ++k) {
    ip.noalias() = rows * c;
    const double v = score_from(rows, ip, c, obj);
    if (v < best.value) {
      best.value = v;
      best.center = c;
    }
    if (k > cfg.max_iters) break;
    it = k;
    Vec dir = Vec::Zero(c.size());
    if (obj == BallObjective::Enclosing) {
      const double thr = std::cos(std::max(0.0, v - cfg.tie_tol));
      for (Eigen::Index i = 0; i < ip.size(); ++i)
        if (ip[i] <= thr) dir += unit_log_direction(c, rows.row(i).transpose());
    } else {
      const double thr = std::cos(std::min(kPi, -v + cfg.tie_tol));
      for (Eigen::Index i = 0; i < ip.size(); ++i)
        if (ip[i] >= thr) dir -= unit_log_direction(c, rows.row(i).transpose());
    }
    const double dn = dir.norm();
    if (dn < 1e-12) break;
    const double step = cfg.step_scale / k;
    if (step < cfg.move_tol) break;
    c = std::cos(step) * c + (std::sin(step) / dn) * dir;
    c.normalize();
  }
  best.iterations = it;
  return best;
}

BallResult solve(const Mat& x, BallObjective obj, const BallConfig& cfg) {
  validate(x);
  const int d = static_cast<int>(x.rows());

  // Starts in a fixed order: mean-based start first, then random, then poles.
  std::vector<std::optional<Vec>> starts;
  Vec mean = x.rowwise().sum();
  if (mean.norm() > 1e-12 * static_cast<double>(x.cols())) {
    mean.normalize();
    starts.emplace_back(obj == BallObjective::Enclosing ? mean : Vec(-mean));
  } else {
    starts.emplace_back(std::nullopt);
  }
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int s = 0; s < cfg.multistarts; ++s) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v[i] = gauss(rng);
    starts.emplace_back(v.normalized());
  }
  if (obj == BallObjective::Empty)
    for (int i = 0; i < d; ++i)
      for (double sgn : {1.0, -1.0}) {
        Vec e = Vec::Zero(d);
        e[i] = sgn;
        starts.emplace_back(e);
      }

  std::vector<std::optional<Descent>> runs(starts.size());
  const Mat rows = x.transpose();
  parallel_for(starts.size(), cfg.threads, [&](std::size_t i) {
    if (starts[i]) runs[i] = descend(rows, *starts[i], obj, cfg);
  });

  int best = -1;
  for (std::size_t i = 0; i < runs.size(); ++i)
    if (runs[i] && (best < 0 || runs[i]->value < runs[best]->value)) best = static_cast<int>(i);

  const Descent& win = *runs[best];
  BallResult out{SpherePoint(win.center), 0.0, {}, win.iterations, best, std::nullopt, std::nullopt};
  const Vec& c = out.center.coords();
  std::vector<double> dist(static_cast<std::size_t>(x.cols()));
  for (Eigen::Index i = 0; i < x.cols(); ++i) dist[i] = unit_angle(c, x.col(i));
  if (obj == BallObjective::Enclosing) {
    out.radius = *std::max_element(dist.begin(), dist.end());
    for (std::size_t i = 0; i < dist.size(); ++i)
      if (dist[i] >= out.radius - cfg.tie_tol) out.achiever_indices.push_back(i);
    if (out.radius >= kPi - 1e-6)
      throw Error(ErrorCode::DegenerateEnclosure, "smallest enclosing ball has radius ~pi");
  } else {
    out.radius = *std::min_element(dist.begin(), dist.end());
    for (std::size_t i = 0; i < dist.size(); ++i)
      if (dist[i] <= out.radius + cfg.tie_tol) out.achiever_indices.push_back(i);
  }

  if (cfg.oracle && d <= 5) {
    const OracleResult o = brute_force_ball_oracle(x, obj, cfg.oracle_density);
    out.oracle_value = o.value;
    out.certified_gap = obj == BallObjective::Enclosing ? out.radius - o.value : o.value - out.radius;
  }
  return out;
}

// Recursive ring grid on S^m with target spacing h, appended as columns.
void ring_grid(int m, double h, std::vector<Vec>& out) {
  if (m == 1) {
    const int n = std::max(3, static_cast<int>(std::lround(2.0 * kPi / h)));
    for (int i = 0; i < n; ++i) {
      const double a = 2.0 * kPi * i / n;
      out.push_back((Vec(2) << std::cos(a), std::sin(a)).finished());
    }
    return;
  }
  const int levels = std::max(2, static_cast<int>(std::lround(kPi / h)));
  for (int k = 0; k < levels; ++k) {
    const double phi = (k + 0.5) * kPi / levels;
    std::vector<Vec> sub;
    ring_grid(m - 1, std::min(kPi, h / std::sin(phi)), sub);
    for (const auto& s : sub) {
      Vec v(m + 1);
      v[0] = std::cos(phi);
      v.tail(m) = std::sin(phi) * s;
      out.push_back(std::move(v));
    }
  }
}

double grid_spacing(int dim, double count) {
  const int m = dim - 1;
  const double vol = 2.0 * std::pow(kPi, 0.5 * dim) / std::tgamma(0.5 * dim);
  return std::pow(vol / std::max(1.0, count), 1.0 / m);
}

// Batch scores of the columns of `cands`; `rows` holds the points as rows.
Vec batch_scores(const Mat& rows, const Mat& cands, BallObjective obj) {
  Vec out(cands.cols());
  const Eigen::Index chunk = std::max<Eigen::Index>(1, 2000000 / std::max<Eigen::Index>(1, rows.rows()));
  Mat ip;
  for (Eigen::Index start = 0; start < cands.cols(); start += chunk) {
    const Eigen::Index len = std::min(chunk, cands.cols() - start);
    ip.noalias() = rows * cands.middleCols(start, len);
    for (Eigen::Index r = 0; r < len; ++r) {
      Eigen::Index k;
      const Vec c = cands.col(start + r);
      if (obj == BallObjective::Enclosing) {
        ip.col(r).minCoeff(&k);
        out[start + r] = unit_angle(c, rows.row(k).transpose());
      } else {
        ip.col(r).maxCoeff(&k);
        out[start + r] = -unit_angle(c, rows.row(k).transpose());
      }
    }
  }
  return out;
}

}  // namespace

Mat sphere_grid(int dim, double count) {
  if (dim < 2) throw Error(ErrorCode::BadDimension, "sphere grid needs dim >= 2");
  const auto n = static_cast<Eigen::Index>(std::max(1.0, std::round(count)));
  if (dim == 3) {
    Mat g(3, n);
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (Eigen::Index i = 0; i < n; ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / static_cast<double>(n);
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double a = golden * static_cast<double>(i);
      g(0, i) = r * std::cos(a);
      g(1, i) = r * std::sin(a);
      g(2, i) = z;
    }
    return g;
  }
  std::vector<Vec> pts;
  ring_grid(dim - 1, grid_spacing(dim, count), pts);
  Mat g(dim, static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) g.col(static_cast<Eigen::Index>(i)) = pts[i];
  return g;
}

OracleResult brute_force_ball_oracle(const Mat& x, BallObjective obj, double grid_density) {
  validate(x);
  const int d = static_cast<int>(x.rows());
  if (d > 5) throw Error(ErrorCode::DimensionTooLarge, "brute-force oracle supports ambient dimension <= 5");

  const Mat grid = sphere_grid(d, grid_density);
  const Mat rows = x.transpose();
  const Vec scores = batch_scores(rows, grid, obj);

  // Refine from the best few grid points with a shrinking local pattern grid.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(grid.cols()));
  for (Eigen::Index i = 0; i < grid.cols(); ++i) order[i] = i;
  const std::size_t seeds = std::min<std::size_t>(4, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(seeds), order.end(),
                    [&](Eigen::Index a, Eigen::Index b) { return scores[a] < scores[b] || (scores[a] == scores[b] && a < b); });

  const int m = d - 1;
  int offsets = 1;
  for (int i = 0; i < m; ++i) offsets *= 3;
  double best_value = std::numeric_limits<double>::infinity();
  Vec best_center;
  for (std::size_t s = 0; s < seeds; ++s) {
    Vec c = grid.col(order[s]);
    double value = scores[order[s]];
    double h = grid_spacing(d, static_cast<double>(grid.cols()));
    for (int iter = 0; iter < 2000 && h > 1e-10; ++iter) {
      const Mat t = orthonormal_complement(c);
      Mat cands(d, offsets - 1);
      int col = 0;
      for (int code = 0; code < offsets; ++code) {
        Vec step = Vec::Zero(m);
        int rest = code;
        bool zero = true;
        for (int a = 0; a < m; ++a) {
          step[a] = static_cast<double>(rest % 3) - 1.0;
          rest /= 3;
          zero = zero && step[a] == 0.0;
        }
        if (zero) continue;
        const Vec v = h * (t * step);
        const double len = v.norm();
        cands.col(col++) = (std::cos(len) * c + std::sin(len) / len * v).normalized();
      }
      const Vec sc = batch_scores(rows, cands, obj);
      Eigen::Index k;
      const double trial = sc.minCoeff(&k);
      if (trial < value) {
        value = trial;
        c = cands.col(k);
      } else {
        h *= 0.5;
      }
    }
    if (value < best_value) {
      best_value = value;
      best_center = c;
    }
  }
  return {SpherePoint(best_center), obj == BallObjective::Enclosing ? best_value : -best_value,
          static_cast<std::size_t>(grid.cols())};
}

OracleResult brute_force_ball_oracle(std::span<const SpherePoint> points, BallObjective obj,
                                     double grid_density) {
  return brute_force_ball_oracle(to_matrix(points), obj, grid_density);
}

BallResult smallest_enclosing_ball(std::span<const SpherePoint> points, const BallConfig& cfg) {
  return solve(to_matrix(points), BallObjective::Enclosing, cfg);
}

BallResult smallest_enclosing_ball(const Mat& points, const BallConfig& cfg) {
  return solve(points, BallObjective::Enclosing, cfg);
}

BallResult largest_empty_ball(std::span<const SpherePoint> points, const BallConfig& cfg) {
  return solve(to_matrix(points), BallObjective::Empty, cfg);
}

BallResult largest_empty_ball(const Mat& points, const BallConfig& cfg) {
  return solve(points, BallObjective::Empty, cfg);
}

}  // namespace hyperrig
