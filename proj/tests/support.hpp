#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "l0screen/instance.hpp"

namespace l0screen::testing {

inline Instance tiny_instance() {
  Matrix a = Matrix::Identity(2, 2);
  Vector y(2);
  y << 3.0, 0.1;
  return Instance(std::move(a), std::move(y));
}

inline Instance random_instance(std::mt19937_64& rng, int m, int n) {
  std::normal_distribution<double> nd;
  Matrix a(m, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) a(i, j) = nd(rng);
  Vector y(m);
  for (int i = 0; i < m; ++i) y[i] = nd(rng);
  return Instance(std::move(a), std::move(y));
}

/// y built from a sparse signal plus noise so that sparse supports matter.
inline Instance planted_instance(std::mt19937_64& rng, int m, int n, int k, double noise) {
  std::normal_distribution<double> nd;
  Matrix a(m, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) a(i, j) = nd(rng);
  Vector beta = Vector::Zero(n);
  for (int j = 0; j < k; ++j) beta[(j * n) / k] = 1.0 + 0.5 * nd(rng);
  Vector y = a * beta;
  for (int i = 0; i < m; ++i) y[i] += noise * nd(rng);
  return Instance(std::move(a), std::move(y));
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

/// Golden-section minimization of a unimodal function on [lo, hi].
inline double golden_min(const std::function<double(double)>& f, double lo, double hi,
                         int iters = 200, double* arg = nullptr) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < iters && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  const double candidates[] = {f(lo), f(hi), f(x)};
  double best = candidates[2];
  double best_arg = x;
  if (candidates[0] < best) {
    best = candidates[0];
    best_arg = lo;
  }
  if (candidates[1] < best) {
    best = candidates[1];
    best_arg = hi;
  }
  if (arg) *arg = best_arg;
  return best;
}

/// Relaxation value for fixed z: min_x ||y - Ax||^2 + x' diag(1/(gamma z)) x
/// = y' (I + gamma A Z A')^{-1} y, well defined at z = 0.
inline double value_at_z(const Instance& inst, double gamma, const Vector& z) {
  const Matrix& a = inst.a();
  Matrix k = Matrix::Identity(inst.rows(), inst.rows()) +
             gamma * a * z.asDiagonal() * a.transpose();
  return inst.y().dot(k.llt().solve(inst.y()));
}

/// Generic convex oracle for the perspective relaxation over z in [0,1]^n
/// with sum z <= budget (budget = n means unconstrained), plus mu sum z.
/// Nested golden-section search; intended for n <= 3.
inline double relaxation_oracle(const Instance& inst, double gamma, double mu,
                                double budget, int iters = 70) {
  const int n = inst.cols();
  Vector z = Vector::Zero(n);
  std::function<double(int, double)> rec = [&](int j, double left) -> double {
    if (j == n) return value_at_z(inst, gamma, z) + mu * z.sum();
    const double hi = std::min(1.0, std::max(0.0, left));
    return golden_min(
        [&](double v) {
          z[j] = v;
          return rec(j + 1, left - v);
        },
        0.0, hi, iters);
  };
  return rec(0, budget);
}

}  // namespace l0screen::testing
