#include <gtest/gtest.h>

#include <random>

#include "l0screen/exact.hpp"
#include "l0screen/problem.hpp"
#include "l0screen/relax.hpp"
#include "support.hpp"

using namespace l0screen;
using namespace l0screen::testing;

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST(CertifiedBound, RegExamples) {
  const Instance inst = tiny_instance();
  EXPECT_NEAR(certified_lower_bound_reg(inst, 1.0, 1.0, vec2(1.5, 0.1)), 5.51, 1e-12);
  EXPECT_EQ(certified_lower_bound_reg(inst, 1.0, 1.0, Vector::Zero(2)), 0.0);
  const double at_y = certified_lower_bound_reg(inst, 1.0, 1.0, inst.y());
  EXPECT_LE(at_y, 5.51 + 1e-12);
}

TEST(CertifiedBound, CardExamples) {
  const Instance inst = tiny_instance();
  EXPECT_NEAR(certified_lower_bound_card(inst, 1.0, 1, vec2(1.5, 0.1)), 4.51, 1e-12);
  EXPECT_EQ(certified_lower_bound_card(inst, 1.0, 1, Vector::Zero(2)), 0.0);
}

TEST(CertifiedBound, CardWithFullBudgetIsRegWithZeroMu) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> nd;
  const Instance inst = random_instance(rng, 6, 4);
  Vector eps(6);
  for (int i = 0; i < 6; ++i) eps[i] = nd(rng);
  // Reg with mu -> 0: every min{0, -gamma delta_i} term is active.
  EXPECT_NEAR(certified_lower_bound_card(inst, 1.7, 4, eps),
              certified_lower_bound_reg(inst, 1.7, 1e-300, eps), 1e-10);
}

TEST(DualFromPrimal, Examples) {
  const Instance inst = tiny_instance();
  EXPECT_EQ(dual_from_primal(1.0, inst, Vector::Zero(2)).norm(), 0.0);
  const Vector p = dual_from_primal(1.0, inst, vec2(1.5, 0.1));
  EXPECT_NEAR(p[0], 3.0, 1e-15);
  EXPECT_NEAR(p[1], 0.2, 1e-15);
}

TEST(DualFromPrimal, DeltaIdentity) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> nd;
  const Instance inst = random_instance(rng, 5, 7);
  Vector eps(5);
  for (int i = 0; i < 5; ++i) eps[i] = nd(rng);
  const double gamma = 0.37;
  const Vector p = dual_from_primal(gamma, inst, eps);
  const Vector delta = delta_from_residual(inst, eps);
  for (int i = 0; i < 7; ++i)
    EXPECT_NEAR(delta[i], p[i] * p[i] / (4 * gamma * gamma), 1e-12 * (1 + delta[i]));
}

TEST(SolveCr, TinyInstance) {
  const Instance inst = tiny_instance();
  const RelaxSolution s = solve_cr(inst, 1.0, 1.0);
  EXPECT_TRUE(s.converged);
  EXPECT_NEAR(s.objective, 5.51, 1e-9);
  EXPECT_NEAR(s.lower_bound, 5.51, 1e-9);
  EXPECT_NEAR(s.x[0], 1.5, 1e-6);
  EXPECT_NEAR(s.x[1], 0.0, 1e-9);
  EXPECT_NEAR(s.z[0], 1.0, 1e-9);
  EXPECT_NEAR(s.z[1], 0.0, 1e-9);
  EXPECT_LE(s.objective - s.lower_bound, 1e-10);
}

TEST(SolveCr, LargeMuGivesZero) {
  std::mt19937_64 rng(2);
  const Instance inst = random_instance(rng, 5, 4);
  const double gamma = 0.8;
  const double mu =
      gamma * (inst.a().transpose() * inst.y()).cwiseAbs2().maxCoeff() + 1.0;
  const RelaxSolution s = solve_cr(inst, gamma, mu);
  EXPECT_LE(s.x.cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_NEAR(s.objective, inst.y().squaredNorm(), 1e-8);
}

TEST(SolveCr, ZeroResponse) {
  std::mt19937_64 rng(2);
  const Instance base = random_instance(rng, 5, 4);
  const Instance inst(base.a(), Vector::Zero(5));
  const RelaxSolution s = solve_cr(inst, 1.0, 1.0);
  EXPECT_EQ(s.x.norm(), 0.0);
  EXPECT_EQ(s.objective, 0.0);
  EXPECT_EQ(solve_cc(inst, 1.0, 2).objective, 0.0);
}

TEST(SolveCr, MatchesConvexOracle) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 1 + trial % 3;
    const Instance inst = random_instance(rng, 4, n);
    const double gamma = log_uniform(rng, 0.1, 10.0);
    const double mu = log_uniform(rng, 0.05, 5.0);
    const RelaxSolution s = solve_cr(inst, gamma, mu);
    const double oracle = relaxation_oracle(inst, gamma, mu, n);
    EXPECT_NEAR(s.objective, oracle, 1e-6 * (1 + oracle));
    EXPECT_LE(s.lower_bound, oracle + 1e-9);
    for (int i = 0; i < n; ++i)
      EXPECT_NEAR(s.z[i], BerhuPenalty(mu, gamma).indicator(s.x[i]), 1e-12);
  }
}

TEST(SolveCc, TinyInstance) {
  const Instance inst = tiny_instance();
  const RelaxSolution s = solve_cc(inst, 1.0, 1);
  EXPECT_NEAR(s.objective, 4.51, 1e-8);
  EXPECT_NEAR(s.lower_bound, 4.51, 1e-8);
  EXPECT_NEAR(s.x[0], 1.5, 1e-5);
  EXPECT_NEAR(s.x[1], 0.0, 1e-5);
  const Vector delta = delta_from_residual(inst, s.epsilon);
  EXPECT_NEAR(delta[0], 2.25, 1e-5);
  EXPECT_NEAR(delta[1], 0.01, 1e-5);
}

TEST(SolveCc, FullBudgetIsRidge) {
  std::mt19937_64 rng(6);
  const Instance inst = random_instance(rng, 8, 5);
  const RelaxSolution s = solve_cc(inst, 2.0, 5);
  const int all[] = {0, 1, 2, 3, 4};
  const RidgeFit ridge = ridge_restricted_solve(inst, 2.0, all);
  EXPECT_NEAR(s.objective, ridge.value, 1e-9 * (1 + ridge.value));
  EXPECT_LE((s.x - ridge.x).cwiseAbs().maxCoeff(), 1e-6);
  for (int i = 0; i < 5; ++i)
    if (s.x[i] != 0.0) {
      EXPECT_EQ(s.z[i], 1.0);
    }
}

TEST(SolveCc, MatchesConvexOracle) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + trial % 2;
    const int k = 1 + trial % (n - 1);
    const Instance inst = random_instance(rng, 4, n);
    const double gamma = log_uniform(rng, 0.1, 10.0);
    const RelaxSolution s = solve_cc(inst, gamma, k);
    const double oracle = relaxation_oracle(inst, gamma, 0.0, k);
    EXPECT_NEAR(s.objective, oracle, 1e-6 * (1 + oracle)) << trial;
    EXPECT_LE(s.lower_bound, oracle + 1e-9);
    EXPECT_LE(s.z.sum(), k + 1e-6);
    ASSERT_TRUE(s.lambda.has_value());
    EXPECT_GE(*s.lambda, 0.0);
  }
}

TEST(CertifiedBound, ArbitraryResidualNeverExceedsRelaxation) {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + trial % 3;
    const Instance inst = random_instance(rng, 3, n);
    const double gamma = log_uniform(rng, 0.1, 10.0);
    const double mu = log_uniform(rng, 0.1, 5.0);
    const int k = 1 + trial % n;
    const double reg = relaxation_oracle(inst, gamma, mu, n);
    const double card = relaxation_oracle(inst, gamma, 0.0, k);
    for (int r = 0; r < 200; ++r) {
      Vector eps(3);
      for (int i = 0; i < 3; ++i) eps[i] = 2.0 * nd(rng);
      EXPECT_LE(certified_lower_bound_reg(inst, gamma, mu, eps), reg + 1e-7);
      EXPECT_LE(certified_lower_bound_card(inst, gamma, k, eps), card + 1e-7);
    }
  }
}

TEST(SolveCc, CountMonotoneInLambda) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    const Instance inst = random_instance(rng, 10, 8);
    const double gamma = log_uniform(rng, 0.2, 5.0);
    double prev = std::numeric_limits<double>::infinity();
    for (double lambda : {1e-3, 1e-2, 0.1, 0.5, 1.0, 3.0, 10.0, 50.0}) {
      SolverConfig cfg;
      cfg.tol = 1e-11;
      const RelaxSolution s = solve_cr(inst, gamma, lambda, cfg);
      const double count = s.z.sum();
      EXPECT_LE(count, prev + 1e-6);
      prev = count;
    }
  }
}

TEST(Relaxation, LowerBoundsBruteForce) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    const Instance inst = planted_instance(rng, 10, 7, 2, 0.5);
    const double gamma = log_uniform(rng, 0.05, 20.0);
    const ProblemSpec spec = trial % 2 ? ProblemSpec::reg(gamma, log_uniform(rng, 0.01, 3.0))
                                       : ProblemSpec::card(gamma, 1 + trial % 7);
    const RelaxSolution s = solve_relaxation(inst, spec);
    const double opt = brute_force(inst, spec).best.objective;
    EXPECT_LE(s.lower_bound, opt + 1e-9 * (1 + opt));
    EXPECT_LE(s.objective, opt + 1e-7 * (1 + opt));
  }
}

TEST(Relaxation, GapClosesOnRandomInstances) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const Instance inst = planted_instance(rng, 40, 60, 5, 0.3);
    const double gamma = log_uniform(rng, 0.01, 1.0);
    const RelaxSolution r = solve_cr(inst, gamma, log_uniform(rng, 0.1, 5.0));
    EXPECT_TRUE(r.converged);
    EXPECT_LE(r.relative_gap(), 1e-8);
    const RelaxSolution c = solve_cc(inst, gamma, 5);
    EXPECT_TRUE(c.converged);
    EXPECT_LE(c.relative_gap(), 1e-8);
    EXPECT_LE(c.z.sum(), 5 + 1e-6);
  }
}

TEST(NodeRelaxation, FixesBehave) {
  const Instance inst = tiny_instance();
  const auto reg = ProblemSpec::reg(1.0, 1.0);
  const FixState one_free[] = {FixState::One, FixState::Free};
  auto s = node_relaxation(inst, reg, one_free);
  ASSERT_TRUE(s);
  EXPECT_NEAR(s->objective, 5.51, 1e-9);
  EXPECT_NEAR(s->lower_bound, 5.51, 1e-9);

  const FixState all_fixed[] = {FixState::One, FixState::One};
  s = node_relaxation(inst, reg, all_fixed);
  ASSERT_TRUE(s);
  const int both[] = {0, 1};
  EXPECT_NEAR(s->objective, ridge_restricted_solve(inst, 1.0, both).value + 2.0, 1e-12);
  EXPECT_EQ(s->lower_bound, s->objective);

  const auto card = ProblemSpec::card(1.0, 1);
  EXPECT_FALSE(node_relaxation(inst, card, all_fixed).has_value());

  const auto free2 = all_free(2);
  s = node_relaxation(inst, reg, free2);
  ASSERT_TRUE(s);
  EXPECT_NEAR(s->objective, solve_cr(inst, 1.0, 1.0).objective, 1e-12);
}

TEST(NodeRelaxation, BoundsSubproblemOptimum) {
  std::mt19937_64 rng(71);
  std::uniform_int_distribution<int> st(0, 2);
  for (int trial = 0; trial < 30; ++trial) {
    const Instance inst = planted_instance(rng, 9, 6, 2, 0.5);
    const double gamma = log_uniform(rng, 0.05, 20.0);
    const ProblemSpec spec = trial % 2 ? ProblemSpec::reg(gamma, log_uniform(rng, 0.01, 3.0))
                                       : ProblemSpec::card(gamma, 3);
    std::vector<FixState> fixes(6);
    for (auto& f : fixes) f = static_cast<FixState>(st(rng));
    const auto s = node_relaxation(inst, spec, fixes);
    const int ones = static_cast<int>(std::count(fixes.begin(), fixes.end(), FixState::One));
    if (spec.is_card() && ones > spec.k) {
      EXPECT_FALSE(s);
      continue;
    }
    ASSERT_TRUE(s);
    const double opt = brute_force(inst, spec, fixes).best.objective;
    EXPECT_LE(s->lower_bound, opt + 1e-9 * (1 + opt));
    for (int i = 0; i < 6; ++i)
      if (fixes[static_cast<std::size_t>(i)] == FixState::Zero) {
        EXPECT_EQ(s->x[i], 0.0);
      }
  }
}
