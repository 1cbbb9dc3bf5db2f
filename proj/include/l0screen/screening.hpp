#pragma once

#include <optional>
#include <span>
#include <vector>

#include "l0screen/instance.hpp"
#include "l0screen/relax.hpp"
#include "l0screen/selection.hpp"

namespace l0screen {

/// Absolute slack subtracted from each rule's left side before the strict
/// comparison with the upper bound.
inline constexpr double kScreenSlack = 1e-9;

struct ScreenReport {
  std::vector<FixState> fixes;
  int n_zero = 0;
  int n_one = 0;
  int n_free = 0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  /// k-th and (k+1)-st largest delta, cardinality variant only.
  std::optional<double> delta_k;
  std::optional<double> delta_k1;

  int fixed() const { return n_zero + n_one; }
};

/// Fixes z_i = 0 when L + mu - gamma delta_i > zeta_bar and z_i = 1 when
/// L - mu + gamma delta_i > zeta_bar. Any dual certificate works: the rules
/// stay safe for inexact relaxation solves.
ScreenReport screen_reg(const Instance& inst, double gamma, double mu,
                        const DualCertificate& cert, double zeta_bar);

/// Cardinality rules built on delta_[k] and delta_[k+1].
ScreenReport screen_card(const Instance& inst, double gamma, int k,
                         const DualCertificate& cert, double zeta_bar);

/// Either rule set applied to the free variables of a subproblem; variables
/// already fixed keep their state. The certificate must belong to the
/// subproblem.
ScreenReport screen(const Instance& inst, const ProblemSpec& spec,
                    std::span<const FixState> fixes, const DualCertificate& cert,
                    double zeta_bar);

ScreenReport screen(const Instance& inst, const ProblemSpec& spec,
                    const DualCertificate& cert, double zeta_bar);

/// Rule application alone, for a delta vector computed elsewhere. Linear in
/// the length of `delta`.
ScreenReport screen_delta(const ProblemSpec& spec, const Vector& delta,
                          std::span<const FixState> fixes, double lower_bound,
                          double zeta_bar);

/// Problem left after screening: zero columns dropped, ones forced in.
struct ReducedProblem {
  std::vector<int> free_to_orig;
  std::vector<int> orig_to_free;  // -1 for fixed variables
  Support forced_in;
  int k_remaining = 0;          // cardinality budget left for free variables
  double constant_cost = 0.0;   // mu * |forced_in| for the regularized variant

  int n_free() const { return static_cast<int>(free_to_orig.size()); }
};

ReducedProblem apply_fixes(const ScreenReport& report, const Instance& inst,
                           const ProblemSpec& spec);

/// Columns that survive screening (free and forced-in), in original order,
/// together with the matching fix states. Used to write reduced instances.
struct KeptColumns {
  std::vector<int> columns;
  std::vector<FixState> fixes;
};
KeptColumns kept_columns(std::span<const FixState> fixes);

Instance select_columns(const Instance& inst, std::span<const int> columns);

}  // namespace l0screen
