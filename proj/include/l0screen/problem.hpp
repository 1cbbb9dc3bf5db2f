#pragma once

#include <span>

#include "l0screen/instance.hpp"

namespace l0screen {

/// ||y - Ax||^2 + (1/gamma) sum_{i in S} x_i^2 + mu |S|.
/// x must vanish off the support.
double objective_reg(const Instance& inst, const ProblemSpec& spec,
                     std::span<const int> support, const Vector& x);

/// ||y - Ax||^2 + (1/gamma) sum_{i in S} x_i^2, with |S| <= k enforced.
double objective_card(const Instance& inst, const ProblemSpec& spec,
                      std::span<const int> support, const Vector& x);

/// Dispatches on spec.variant.
double objective(const Instance& inst, const ProblemSpec& spec,
                 std::span<const int> support, const Vector& x);

struct RidgeFit {
  Vector x;      // length n, zero off the support
  double value;  // ||y - Ax||^2 + ||x||^2 / gamma
};

/// Minimizes ||y - A_S x_S||^2 + ||x_S||^2 / gamma over vectors supported on S
/// via the SPD system (A_S'A_S + I/gamma) x_S = A_S'y. An empty support
/// yields x = 0 and value ||y||^2.
RidgeFit ridge_restricted_solve(const Instance& inst, double gamma,
                                std::span<const int> support);

struct Residual {
  Vector epsilon;  // y - A x
  Vector delta;    // (A_i' epsilon)^2
};

Residual delta_vector(const Instance& inst, const Vector& x);

/// delta_i = (A_i' eps)^2 for a given residual.
Vector delta_from_residual(const Instance& inst, const Vector& epsilon);

}  // namespace l0screen
