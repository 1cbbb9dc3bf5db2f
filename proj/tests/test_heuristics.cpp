#include <gtest/gtest.h>

#include <random>

#include "l0screen/exact.hpp"
#include "l0screen/heuristics.hpp"
#include "l0screen/problem.hpp"
#include "l0screen/relax.hpp"
#include "support.hpp"

using namespace l0screen;
using namespace l0screen::testing;

namespace {

RelaxSolution with_residual(Vector eps) {
  RelaxSolution s;
  s.epsilon = std::move(eps);
  return s;
}

}  // namespace

TEST(RoundCard, Examples) {
  const Instance inst = tiny_instance();
  Vector eps(2);
  eps << 1.5, 0.1;
  Incumbent inc = round_card(inst, 1.0, 1, with_residual(eps));
  EXPECT_EQ(inc.support, Support{0});
  EXPECT_NEAR(inc.objective, 4.51, 1e-12);

  inc = round_card(inst, 1.0, 2, with_residual(eps));
  EXPECT_EQ(inc.support, (Support{0, 1}));
  EXPECT_NEAR(inc.objective, 4.505, 1e-12);

  eps << 5.0, 5.0;
  inc = round_card(inst, 1.0, 1, with_residual(eps));
  EXPECT_EQ(inc.support, Support{0});
}

TEST(RoundReg, Examples) {
  const Instance inst = tiny_instance();
  Vector eps(2);
  eps << 1.5, 0.1;
  Incumbent inc = round_reg(inst, 1.0, 1.0, with_residual(eps));
  EXPECT_EQ(inc.support, Support{0});
  EXPECT_NEAR(inc.objective, 5.51, 1e-12);

  inc = round_reg(inst, 1.0, 1e6, with_residual(eps));
  EXPECT_TRUE(inc.support.empty());
  EXPECT_NEAR(inc.objective, 9.01, 1e-12);

  inc = round_reg(inst, 1.0, 1e-12, with_residual(eps));
  EXPECT_EQ(inc.support, (Support{0, 1}));
}

TEST(Heuristics, IncumbentsAreValidUpperBounds) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    const Instance inst = planted_instance(rng, 12, 8, 3, 0.5);
    const double gamma = log_uniform(rng, 0.05, 20.0);
    const ProblemSpec spec = trial % 2 ? ProblemSpec::reg(gamma, log_uniform(rng, 0.05, 3.0))
                                       : ProblemSpec::card(gamma, 1 + trial % 8);
    const RelaxSolution s = solve_relaxation(inst, spec);
    const Incumbent inc = heuristic_incumbent(inst, spec, s);
    const double opt = brute_force(inst, spec).best.objective;
    EXPECT_GE(inc.objective, opt - 1e-9 * (1 + opt));
    EXPECT_NEAR(objective(inst, spec, inc.support, inc.x), inc.objective,
                1e-9 * (1 + inc.objective));
    if (spec.is_card()) {
      EXPECT_EQ(static_cast<int>(inc.support.size()), spec.k);
    }

    const Incumbent polished = local_search_swap(inst, spec, inc, 5);
    EXPECT_LE(polished.objective, inc.objective);
    EXPECT_GE(polished.objective, opt - 1e-9 * (1 + opt));
  }
}

TEST(LocalSearch, ZeroRoundsUnchanged) {
  const Instance inst = tiny_instance();
  const auto spec = ProblemSpec::card(1.0, 1);
  const Incumbent start = evaluate_support(inst, spec, {1});
  const Incumbent out = local_search_swap(inst, spec, start, 0);
  EXPECT_EQ(out.support, start.support);
  EXPECT_EQ(out.objective, start.objective);
}

TEST(LocalSearch, ImprovesPlantedSwap) {
  std::mt19937_64 rng(29);
  const Instance inst = planted_instance(rng, 5, 8, 2, 0.1);
  const auto spec = ProblemSpec::card(1.0, 2);
  const BruteForceResult bf = brute_force(inst, spec);
  // Replace one optimal index by the worst single swap partner.
  const Support& best = bf.best.support;
  Incumbent start;
  for (int i = 0; i < 8; ++i) {
    if (std::find(best.begin(), best.end(), i) != best.end()) continue;
    Incumbent cand = evaluate_support(inst, spec, {best[0], i});
    if (cand.objective > start.objective || start.empty()) start = cand;
  }
  ASSERT_GT(start.objective, bf.best.objective);
  const Incumbent out = local_search_swap(inst, spec, start, 1);
  EXPECT_LT(out.objective, start.objective);
}

TEST(LocalSearch, OptimalUnchanged) {
  std::mt19937_64 rng(37);
  const Instance inst = planted_instance(rng, 10, 7, 2, 0.2);
  for (const ProblemSpec& spec : {ProblemSpec::card(2.0, 2), ProblemSpec::reg(2.0, 0.5)}) {
    const Incumbent opt = brute_force(inst, spec).best;
    const Incumbent out = local_search_swap(inst, spec, opt, 3);
    EXPECT_EQ(out.support, opt.support);
    EXPECT_NEAR(out.objective, opt.objective, 1e-12 * (1 + opt.objective));
  }
}

TEST(Round, RespectsFixes) {
  std::mt19937_64 rng(43);
  const Instance inst = planted_instance(rng, 10, 6, 2, 0.3);
  const auto spec = ProblemSpec::card(1.0, 2);
  const std::vector<FixState> fixes{FixState::Zero, FixState::One, FixState::Free,
                                    FixState::Free, FixState::Zero, FixState::Free};
  const Incumbent inc = round(inst, spec, fixes, inst.y());
  EXPECT_EQ(inc.support.size(), 2u);
  EXPECT_TRUE(std::find(inc.support.begin(), inc.support.end(), 1) != inc.support.end());
  for (int i : inc.support) EXPECT_NE(fixes[static_cast<std::size_t>(i)], FixState::Zero);
}
