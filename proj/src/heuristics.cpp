#include "l0screen/heuristics.hpp"

#include <algorithm>
#include <cmath>

#include "l0screen/problem.hpp"

namespace l0screen {

Incumbent evaluate_support(const Instance& inst, const ProblemSpec& spec,
                           Support support) {
  std::sort(support.begin(), support.end());
  RidgeFit fit = ridge_restricted_solve(inst, spec.gamma, support);
  Incumbent inc;
  inc.objective = fit.value;
  if (spec.is_reg()) inc.objective += spec.mu * static_cast<double>(support.size());
  inc.x = std::move(fit.x);
  inc.support = std::move(support);
  return inc;
}

Incumbent round(const Instance& inst, const ProblemSpec& spec,
                std::span<const FixState> fixes, const Vector& epsilon) {
  const Vector delta = delta_from_residual(inst, epsilon);
  Support support;
  std::vector<int> candidates;
  for (int i = 0; i < inst.cols(); ++i) {
    const FixState f = fixes[static_cast<std::size_t>(i)];
    if (f == FixState::One) support.push_back(i);
    if (f == FixState::Free) candidates.push_back(i);
  }
  if (spec.is_reg()) {
    for (int i : candidates)
      if (spec.gamma * delta[i] >= spec.mu) support.push_back(i);
  } else {
    const int budget = std::max(0, spec.k - static_cast<int>(support.size()));
    const auto take = std::min<std::size_t>(static_cast<std::size_t>(budget),
                                            candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<long>(take),
                      candidates.end(), [&](int l, int r) {
                        return delta[l] > delta[r] || (delta[l] == delta[r] && l < r);
                      });
    support.insert(support.end(), candidates.begin(),
                   candidates.begin() + static_cast<long>(take));
  }
  return evaluate_support(inst, spec, std::move(support));
}

Incumbent round_card(const Instance& inst, double gamma, int k,
                     const RelaxSolution& relax) {
  const auto fixes = all_free(inst.cols());
  return round(inst, ProblemSpec::card(gamma, k), fixes, relax.epsilon);
}

Incumbent round_reg(const Instance& inst, double gamma, double mu,
                    const RelaxSolution& relax) {
  const auto fixes = all_free(inst.cols());
  return round(inst, ProblemSpec::reg(gamma, mu), fixes, relax.epsilon);
}

Incumbent local_search_swap(const Instance& inst, const ProblemSpec& spec,
                            Incumbent incumbent, int rounds) {
  const int n = inst.cols();
  for (int r = 0; r < rounds; ++r) {
    std::vector<bool> in(static_cast<std::size_t>(n), false);
    for (int i : incumbent.support) in[static_cast<std::size_t>(i)] = true;
    const double threshold =
        incumbent.objective - 1e-12 * (1.0 + std::abs(incumbent.objective));
    Incumbent best = incumbent;
    auto consider = [&](Support s) {
      Incumbent cand = evaluate_support(inst, spec, std::move(s));
      if (cand.objective < threshold && cand.objective < best.objective)
        best = std::move(cand);
    };
    const bool can_add = spec.is_reg() ||
                         static_cast<int>(incumbent.support.size()) < spec.k;
    for (int add = 0; add < n; ++add) {
      if (in[static_cast<std::size_t>(add)]) continue;
      if (can_add) {
        Support s = incumbent.support;
        s.push_back(add);
        consider(std::move(s));
      }
      if (spec.is_card()) {
        for (std::size_t j = 0; j < incumbent.support.size(); ++j) {
          Support s = incumbent.support;
          s[j] = add;
          consider(std::move(s));
        }
      }
    }
    if (spec.is_reg()) {
      for (std::size_t j = 0; j < incumbent.support.size(); ++j) {
        Support s = incumbent.support;
        s.erase(s.begin() + static_cast<long>(j));
        consider(std::move(s));
      }
    }
    if (best.objective >= incumbent.objective) break;
    incumbent = std::move(best);
  }
  return incumbent;
}

Incumbent heuristic_incumbent(const Instance& inst, const ProblemSpec& spec,
                              const RelaxSolution& relax,
                              const HeuristicConfig& cfg) {
  const auto fixes = all_free(inst.cols());
  Incumbent inc = round(inst, spec, fixes, relax.epsilon);
  return local_search_swap(inst, spec, std::move(inc), cfg.swap_rounds);
}

}  // namespace l0screen
