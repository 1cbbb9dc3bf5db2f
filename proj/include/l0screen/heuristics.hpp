#pragma once

#include <span>

#include "l0screen/instance.hpp"
#include "l0screen/relax.hpp"

namespace l0screen {

struct HeuristicConfig {
  /// 0 keeps the rounded incumbent; > 0 enables single-swap local search.
  int swap_rounds = 0;
};

/// Support = k largest delta (ties to the lower index), refit by ridge.
Incumbent round_card(const Instance& inst, double gamma, int k,
                     const RelaxSolution& relax);

/// Support = {i : gamma delta_i >= mu}, refit by ridge.
Incumbent round_reg(const Instance& inst, double gamma, double mu,
                    const RelaxSolution& relax);

/// Rounding restricted to a subproblem: ones stay in, zeros stay out.
Incumbent round(const Instance& inst, const ProblemSpec& spec,
                std::span<const FixState> fixes, const Vector& epsilon);

/// Best-improvement local search: swaps (and adds while |S| < k) for the
/// cardinality variant, single adds/drops for the regularized one.
Incumbent local_search_swap(const Instance& inst, const ProblemSpec& spec,
                            Incumbent incumbent, int rounds);

/// Rounding followed by `cfg.swap_rounds` of local search.
Incumbent heuristic_incumbent(const Instance& inst, const ProblemSpec& spec,
                              const RelaxSolution& relax,
                              const HeuristicConfig& cfg = {});

/// Refits a support by ridge and evaluates the true objective.
Incumbent evaluate_support(const Instance& inst, const ProblemSpec& spec,
                           Support support);

}  // namespace l0screen
