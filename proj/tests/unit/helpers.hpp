#pragma once

#include <random>

#include "sphere.hpp"

namespace hyperrig::test {

inline Vec random_unit(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> g;
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = g(rng);
  return v.normalized();
}

inline Vec random_gaussian(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> g;
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = g(rng);
  return v;
}

// Parallel transport along the great circle from p to q by RK4 on
// V' = -<V, c'> c, independent of the closed form.
inline Vec transport_ode(const Vec& p, const Vec& q, const Vec& v, int steps = 400) {
  const double theta = unit_angle(p, q);
  Vec dir = q - p.dot(q) * p;
  if (dir.norm() < 1e-15) return v;
  dir.normalize();
  auto curve = [&](double t) { return Vec(std::cos(t) * p + std::sin(t) * dir); };
  auto speed = [&](double t) { return Vec(-std::sin(t) * p + std::cos(t) * dir); };
  auto rhs = [&](double t, const Vec& w) { return Vec(-w.dot(speed(t)) * curve(t)); };
  const double h = theta / steps;
  Vec w = v;
  for (int i = 0; i < steps; ++i) {
    const double t = i * h;
    Vec k1 = rhs(t, w);
    Vec k2 = rhs(t + h / 2, w + h / 2 * k1);
    Vec k3 = rhs(t + h / 2, w + h / 2 * k2);
    Vec k4 = rhs(t + h, w + h * k3);
    w += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return w;
}

}  // namespace hyperrig::test
