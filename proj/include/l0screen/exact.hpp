#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "l0screen/instance.hpp"
#include "l0screen/relax.hpp"

namespace l0screen {

struct BruteForceResult {
  Incumbent best;
  /// Every support within 1e-9 (relative) of the optimum, sorted.
  std::vector<Support> optimal_supports;
  std::uint64_t supports_enumerated = 0;
};

/// Enumerates every feasible support (respecting `fixes` when given) and
/// refits each by ridge. Refuses with SizeCapExceeded beyond 25 free
/// variables (Reg) or 1e6 candidate supports (Card).
BruteForceResult brute_force(const Instance& inst, const ProblemSpec& spec,
                             std::span<const FixState> fixes = {});

/// Relaxation of a branch-and-bound node; nullopt when infeasible.
std::optional<RelaxSolution> node_relaxation(const Instance& inst,
                                             const ProblemSpec& spec,
                                             std::span<const FixState> fixes,
                                             const SolverConfig& cfg = {},
                                             const Vector* warm = nullptr);

enum class BranchRule { MostFractionalZ, LargestDelta };

struct BnBConfig {
  double time_limit_s = 3600.0;
  std::int64_t node_limit = 10'000'000;
  /// Screened states are inherited by the subtree; a branch that contradicts
  /// one is not created. Node relaxations are unchanged.
  bool screen_at_root = true;
  bool screen_per_node = false;
  BranchRule branch_rule = BranchRule::LargestDelta;
  /// Nodes with lower bound >= zeta_bar - max(1e-9, gap_tol |zeta_bar|) are pruned.
  double gap_tol = 1e-7;
  /// Switch to depth-first selection above this many open nodes.
  std::size_t open_node_cap = 1'000'000;
  SolverConfig relax{1e-9, 50000, std::nullopt};

  void validate() const;
};

struct BnBStats {
  std::int64_t nodes_explored = 0;
  double wall_time_s = 0.0;
  bool optimal = false;
  Incumbent best;
  int root_fixed = 0;
  double root_lower_bound = 0.0;
  /// Smallest bound over unexplored nodes (= best objective when optimal).
  double lower_bound = 0.0;
};

/// Best-first branch and bound over the indicator variables, bounding with
/// the perspective relaxation and optionally screening at the root and at
/// every node.
BnBStats branch_and_bound(const Instance& inst, const ProblemSpec& spec,
                          const BnBConfig& cfg,
                          const std::optional<Incumbent>& initial = std::nullopt,
                          std::span<const FixState> root_fixes = {});

}  // namespace l0screen
