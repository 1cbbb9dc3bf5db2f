#include "l0screen/screening.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "l0screen/problem.hpp"

namespace l0screen {

namespace {

void check_bounds(double lower, double upper) {
  if (upper < lower - 1e-9 * (1.0 + std::abs(upper)))
    throw InconsistentBounds("upper bound " + std::to_string(upper) +
                             " is below the certified lower bound " +
                             std::to_string(lower));
}

void tally(ScreenReport& r) {
  r.n_zero = r.n_one = r.n_free = 0;
  for (FixState f : r.fixes) {
    switch (f) {
      case FixState::Zero:
        ++r.n_zero;
        break;
      case FixState::One:
        ++r.n_one;
        break;
      case FixState::Free:
        ++r.n_free;
        break;
    }
  }
}

bool exceeds(double lhs, double zeta_bar) { return lhs - kScreenSlack > zeta_bar; }

void apply_reg_rules(const ProblemSpec& spec, const Vector& delta, double lower,
                     double zeta_bar, ScreenReport& r) {
  for (Eigen::Index i = 0; i < delta.size(); ++i) {
    auto& f = r.fixes[static_cast<std::size_t>(i)];
    if (f != FixState::Free) continue;
    const double gd = spec.gamma * delta[i];
    if (exceeds(lower + spec.mu - gd, zeta_bar)) {
      f = FixState::Zero;
    } else if (exceeds(lower - spec.mu + gd, zeta_bar)) {
      f = FixState::One;
    }
  }
}

void apply_card_rules(const ProblemSpec& spec, const Vector& delta, double lower,
                      double zeta_bar, ScreenReport& r) {
  std::vector<double> free_delta;
  std::vector<Eigen::Index> free_idx;
  free_delta.reserve(static_cast<std::size_t>(delta.size()));
  free_idx.reserve(static_cast<std::size_t>(delta.size()));
  int n_one = 0;
  for (Eigen::Index i = 0; i < delta.size(); ++i) {
    const FixState f = r.fixes[static_cast<std::size_t>(i)];
    if (f == FixState::Free) {
      free_delta.push_back(delta[i]);
      free_idx.push_back(i);
    } else if (f == FixState::One) {
      ++n_one;
    }
  }
  const int budget = spec.k - n_one;
  const int n_free = static_cast<int>(free_idx.size());
  if (n_free == 0) return;
  if (budget <= 0) {
    for (Eigen::Index i : free_idx) r.fixes[static_cast<std::size_t>(i)] = FixState::Zero;
    return;
  }

  // With the budget covering every free variable, treat the missing order
  // statistics as zeros (delta >= 0), which is what the bound derivation
  // yields; the zero rule is then vacuous.
  double dk = 0.0;
  double dk1 = -std::numeric_limits<double>::infinity();
  if (budget <= n_free) {
    const KthPair p = kth_largest_pair(free_delta, budget);
    dk = p.delta_k;
    dk1 = p.delta_k1;
  }
  r.delta_k = dk;
  r.delta_k1 = dk1;
  const double dk1_one_rule = budget < n_free ? dk1 : 0.0;

  for (std::size_t j = 0; j < free_idx.size(); ++j) {
    const double d = free_delta[j];
    auto& f = r.fixes[static_cast<std::size_t>(free_idx[j])];
    const bool zero =
        budget < n_free && d <= dk1 && exceeds(lower - spec.gamma * (d - dk), zeta_bar);
    const bool one =
        d >= dk && exceeds(lower + spec.gamma * (d - dk1_one_rule), zeta_bar);
    if (zero) {
      f = FixState::Zero;
    } else if (one) {
      f = FixState::One;
    }
  }
}

}  // namespace

ScreenReport screen_delta(const ProblemSpec& spec, const Vector& delta,
                          std::span<const FixState> fixes, double lower_bound,
                          double zeta_bar) {
  if (static_cast<Eigen::Index>(fixes.size()) != delta.size())
    throw InvalidInput("fix vector has wrong length");
  check_bounds(lower_bound, zeta_bar);

  ScreenReport r;
  r.fixes.assign(fixes.begin(), fixes.end());
  r.lower_bound = lower_bound;
  r.upper_bound = zeta_bar;
  if (std::isfinite(zeta_bar)) {
    if (spec.is_reg()) {
      apply_reg_rules(spec, delta, lower_bound, zeta_bar, r);
    } else {
      apply_card_rules(spec, delta, lower_bound, zeta_bar, r);
    }
  } else if (spec.is_card()) {
    const std::vector<double> d(delta.data(), delta.data() + delta.size());
    const KthPair p = kth_largest_pair(d, spec.k);
    r.delta_k = p.delta_k;
    r.delta_k1 = p.delta_k1;
  }
  tally(r);
  return r;
}

ScreenReport screen(const Instance& inst, const ProblemSpec& spec,
                    std::span<const FixState> fixes, const DualCertificate& cert,
                    double zeta_bar) {
  spec.validate(inst.cols());
  if (static_cast<int>(fixes.size()) != inst.cols())
    throw InvalidInput("fix vector has wrong length");
  if (cert.epsilon_bar.size() != inst.rows())
    throw InvalidInput("certificate residual has wrong length");
  return screen_delta(spec, delta_from_residual(inst, cert.epsilon_bar), fixes,
                      cert.lower_bound, zeta_bar);
}

ScreenReport screen(const Instance& inst, const ProblemSpec& spec,
                    const DualCertificate& cert, double zeta_bar) {
  const auto fixes = all_free(inst.cols());
  return screen(inst, spec, fixes, cert, zeta_bar);
}

ScreenReport screen_reg(const Instance& inst, double gamma, double mu,
                        const DualCertificate& cert, double zeta_bar) {
  return screen(inst, ProblemSpec::reg(gamma, mu), cert, zeta_bar);
}

ScreenReport screen_card(const Instance& inst, double gamma, int k,
                         const DualCertificate& cert, double zeta_bar) {
  return screen(inst, ProblemSpec::card(gamma, k), cert, zeta_bar);
}

ReducedProblem apply_fixes(const ScreenReport& report, const Instance& inst,
                           const ProblemSpec& spec) {
  const int n = inst.cols();
  if (static_cast<int>(report.fixes.size()) != n)
    throw InvalidInput("report does not match the instance");
  ReducedProblem red;
  red.orig_to_free.assign(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    switch (report.fixes[static_cast<std::size_t>(i)]) {
      case FixState::Free:
        red.orig_to_free[static_cast<std::size_t>(i)] =
            static_cast<int>(red.free_to_orig.size());
        red.free_to_orig.push_back(i);
        break;
      case FixState::One:
        red.forced_in.push_back(i);
        break;
      case FixState::Zero:
        break;
    }
  }
  const auto forced = static_cast<int>(red.forced_in.size());
  if (spec.is_card()) {
    if (forced > spec.k)
      throw ConstraintViolation("screening forced " + std::to_string(forced) +
                                " variables in with k=" + std::to_string(spec.k));
    red.k_remaining = spec.k - forced;
  } else {
    red.constant_cost = spec.mu * forced;
  }
  return red;
}

KeptColumns kept_columns(std::span<const FixState> fixes) {
  KeptColumns kept;
  for (std::size_t i = 0; i < fixes.size(); ++i) {
    if (fixes[i] == FixState::Zero) continue;
    kept.columns.push_back(static_cast<int>(i));
    kept.fixes.push_back(fixes[i]);
  }
  return kept;
}

Instance select_columns(const Instance& inst, std::span<const int> columns) {
  Matrix a(inst.rows(), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j)
    a.col(static_cast<Eigen::Index>(j)) = inst.a().col(columns[j]);
  return Instance(std::move(a), inst.y());
}

}  // namespace l0screen
