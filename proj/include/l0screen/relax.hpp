#pragma once

#include <optional>
#include <span>
#include <vector>

#include "l0screen/berhu.hpp"
#include "l0screen/instance.hpp"

namespace l0screen {

struct SolverConfig {
  /// Target for (objective - lower_bound) / (1 + |objective|).
  double tol = 1e-8;
  int max_iter = 50000;
  /// 2 sigma_max(A)^2; estimated by power iteration when absent.
  std::optional<double> lipschitz;

  void validate() const;
};

/// Solution of the perspective relaxation. lower_bound is a dual value and
/// stays valid even when converged is false.
struct RelaxSolution {
  Vector x;
  Vector z;
  Vector epsilon;
  double objective = 0.0;
  double lower_bound = 0.0;
  /// Cardinality multiplier, cardinality variant only.
  std::optional<double> lambda;
  bool converged = false;
  int iterations = 0;

  double relative_gap() const;
};

/// Residual candidate plus the dual value it certifies.
struct DualCertificate {
  Vector epsilon_bar;
  double lower_bound = 0.0;
};

DualCertificate certificate_of(const RelaxSolution& sol);

/// 2 sigma_max(A)^2 via power iteration on A'A (100 iterations, 1e-10).
double lipschitz_constant(const Instance& inst);

/// p = 2 gamma A' eps.
Vector dual_from_primal(double gamma, const Instance& inst,
                        const Vector& epsilon_bar);

/// Dual value 2 eps'y - ||eps||^2 + sum_i min{0, mu - gamma (A_i'eps)^2};
/// a lower bound on the regularized relaxation for every eps.
double certified_lower_bound_reg(const Instance& inst, double gamma, double mu,
                                 const Vector& epsilon_bar);

/// Dual value 2 eps'y - ||eps||^2 - gamma * (sum of the k largest
/// (A_i'eps)^2); a lower bound on the cardinality relaxation for every eps.
double certified_lower_bound_card(const Instance& inst, double gamma, int k,
                                  const Vector& epsilon_bar);

/// Same bounds for the subproblem where some indicators are fixed. Zero
/// columns drop out, One columns pay their ridge term (and mu for Reg).
double certified_lower_bound(const Instance& inst, const ProblemSpec& spec,
                             std::span<const FixState> fixes,
                             const Vector& epsilon_bar);

/// Regularized relaxation, min_x ||y - Ax||^2 + sum_i berhu(x_i), by
/// accelerated proximal gradient with restart.
RelaxSolution solve_cr(const Instance& inst, double gamma, double mu,
                       const SolverConfig& cfg = {});

/// Cardinality relaxation by bisection on the budget multiplier.
RelaxSolution solve_cc(const Instance& inst, double gamma, int k,
                       const SolverConfig& cfg = {});

/// Relaxation of the subproblem under `fixes`, warm-started from `warm` when
/// given. Returns nullopt when the fixes are infeasible (more than k ones).
/// With no free variable left the result is the exact ridge fit on the ones.
std::optional<RelaxSolution> solve_relaxation(const Instance& inst,
                                              const ProblemSpec& spec,
                                              std::span<const FixState> fixes,
                                              const SolverConfig& cfg,
                                              const Vector* warm = nullptr);

/// Same as above with all variables free.
RelaxSolution solve_relaxation(const Instance& inst, const ProblemSpec& spec,
                               const SolverConfig& cfg = {});

}  // namespace l0screen
