#include "l0screen/relax.hpp"

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "l0screen/problem.hpp"
#include "l0screen/selection.hpp"

namespace l0screen {

namespace {

constexpr int kCheckEvery = 5;
constexpr Eigen::Index kPolishCap = 2000;
constexpr int kMaxJumps = 20;
constexpr double kCoarseTol = 1e-5;

double gap_of(double primal, double dual) {
  return (primal - dual) / (1.0 + std::abs(primal));
}

// Per-coordinate penalty of the relaxation restricted by fixes: Zero pins
// x_i = 0, One pays x_i^2/gamma + one_cost, Free pays the Berhu penalty.
struct Penalties {
  std::span<const FixState> fixes;
  BerhuPenalty berhu;
  double gamma;
  double one_cost;

  double value(Eigen::Index i, double x) const {
    switch (fixes[static_cast<std::size_t>(i)]) {
      case FixState::Zero:
        return 0.0;
      case FixState::One:
        return x * x / gamma + one_cost;
      case FixState::Free:
        break;
    }
    return berhu.value(x);
  }

  double prox(Eigen::Index i, double t, double v) const {
    switch (fixes[static_cast<std::size_t>(i)]) {
      case FixState::Zero:
        return 0.0;
      case FixState::One:
        return v / (1.0 + 2.0 * t / gamma);
      case FixState::Free:
        break;
    }
    return berhu.prox(t, v);
  }

  double total(const Vector& x) const {
    double s = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) s += value(i, x[i]);
    return s;
  }
};

// 2 eps'y - ||eps||^2: the x-part of every dual bound below.
double dual_base(const Instance& inst, const Vector& eps) {
  return 2.0 * eps.dot(inst.y()) - eps.squaredNorm();
}

double reg_bound(const Instance& inst, double gamma, double mu, double one_cost,
                 std::span<const FixState> fixes, const Vector& eps,
                 const Vector& delta) {
  double b = dual_base(inst, eps);
  for (Eigen::Index i = 0; i < delta.size(); ++i) {
    switch (fixes[static_cast<std::size_t>(i)]) {
      case FixState::Free:
        b += std::min(0.0, mu - gamma * delta[i]);
        break;
      case FixState::One:
        b += one_cost - gamma * delta[i];
        break;
      case FixState::Zero:
        break;
    }
  }
  return b;
}

double card_bound(const Instance& inst, double gamma, int budget,
                  std::span<const FixState> fixes, const Vector& eps,
                  const Vector& delta) {
  double b = dual_base(inst, eps);
  std::vector<double> free_delta;
  free_delta.reserve(static_cast<std::size_t>(delta.size()));
  for (Eigen::Index i = 0; i < delta.size(); ++i) {
    switch (fixes[static_cast<std::size_t>(i)]) {
      case FixState::Free:
        free_delta.push_back(delta[i]);
        break;
      case FixState::One:
        b -= gamma * delta[i];
        break;
      case FixState::Zero:
        break;
    }
  }
  return b - gamma * sum_k_largest(free_delta, budget);
}

// min sum a_i^2 / z_i over z in [0,1], sum z <= budget, for a_i = |x_i|.
// Optimal z_i = min(1, a_i / theta) with theta set by the budget.
double waterfill(std::span<const double> a, int budget, std::vector<double>& z) {
  const std::size_t n = a.size();
  z.assign(n, 0.0);
  std::vector<std::size_t> order;
  order.reserve(n);
  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] > 0.0) {
      order.push_back(i);
      sq += a[i] * a[i];
    }
  }
  if (static_cast<int>(order.size()) <= budget) {
    for (std::size_t i : order) z[i] = 1.0;
    return sq;
  }
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return a[l] > a[r] || (a[l] == a[r] && l < r);
  });
  double tail = 0.0;
  for (std::size_t i : order) tail += a[i];
  double head_sq = 0.0;
  for (int r = 0; r < budget; ++r) {
    const double theta = tail / static_cast<double>(budget - r);
    const double ar = a[order[static_cast<std::size_t>(r)]];
    if (ar <= theta || r == budget - 1) {
      for (int i = 0; i < r; ++i) z[order[static_cast<std::size_t>(i)]] = 1.0;
      for (std::size_t i = static_cast<std::size_t>(r); i < order.size(); ++i)
        z[order[i]] = std::min(1.0, a[order[i]] / theta);
      return head_sq + tail * theta;
    }
    head_sq += ar * ar;
    tail -= ar;
  }
  return head_sq;  // unreachable: r == budget - 1 always returns
}

struct FistaState {
  Vector x;
  Vector ax;
  Vector eps;
  Vector delta;
  double primal = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Signature of the piecewise-quadratic region of each coordinate:
// 0 at zero, +-1 on the linear Berhu piece, 2 on a quadratic piece.
std::vector<std::int8_t> pattern_of(const Penalties& pen, const Vector& x) {
  std::vector<std::int8_t> p(static_cast<std::size_t>(x.size()), 0);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const FixState f = pen.fixes[static_cast<std::size_t>(i)];
    if (f == FixState::Zero || x[i] == 0.0) continue;
    const bool quad = f == FixState::One || std::abs(x[i]) > pen.berhu.knot();
    p[static_cast<std::size_t>(i)] = quad ? 2 : (x[i] > 0.0 ? 1 : -1);
  }
  return p;
}

// Stationary point of the quadratic model selected by `pattern`:
// (A_S'A_S + D) x_S = A_S'y - c with D = I/gamma on quadratic coordinates and
// c = sign * slope / 2 on linear ones. Returns false if the system is singular
// or too large.
bool polish(const Instance& inst, const Penalties& pen,
            const std::vector<std::int8_t>& pattern, Vector& out) {
  std::vector<Eigen::Index> support;
  for (std::size_t i = 0; i < pattern.size(); ++i)
    if (pattern[i] != 0) support.push_back(static_cast<Eigen::Index>(i));
  const auto s = static_cast<Eigen::Index>(support.size());
  if (s == 0 || s > kPolishCap) return false;
  Matrix as(inst.rows(), s);
  for (Eigen::Index j = 0; j < s; ++j) as.col(j) = inst.a().col(support[static_cast<std::size_t>(j)]);
  Matrix h = as.transpose() * as;
  Vector rhs = as.transpose() * inst.y();
  for (Eigen::Index j = 0; j < s; ++j) {
    const std::int8_t p = pattern[static_cast<std::size_t>(support[static_cast<std::size_t>(j)])];
    if (p == 2) {
      h(j, j) += 1.0 / pen.gamma;
    } else {
      rhs[j] -= 0.5 * p * pen.berhu.slope();
    }
  }
  const Eigen::LDLT<Matrix> ldlt(h);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) return false;
  const Vector xs = ldlt.solve(rhs);
  if (!xs.allFinite()) return false;
  out = Vector::Zero(inst.cols());
  for (Eigen::Index j = 0; j < s; ++j) out[support[static_cast<std::size_t>(j)]] = xs[j];
  return true;
}

// Accelerated proximal gradient on ||y - Ax||^2 + sum_i pen_i(x_i) with
// function-value restart and a backtracking guard on the step 1/L.
// `done(state)` inspects eps/delta/primal of the current iterate.
template <typename Done>
FistaState fista(const Instance& inst, const Penalties& pen, Vector x0,
                 double& lip, int max_iter, Done&& done) {
  const Matrix& a = inst.a();
  const Vector& y = inst.y();
  const Eigen::Index n = a.cols();

  for (Eigen::Index i = 0; i < n; ++i)
    if (pen.fixes[static_cast<std::size_t>(i)] == FixState::Zero) x0[i] = 0.0;

  FistaState s;
  s.x = std::move(x0);
  s.ax = a * s.x;
  s.eps = y - s.ax;
  s.delta = (a.transpose() * s.eps).array().square().matrix();
  s.primal = s.eps.squaredNorm() + pen.total(s.x);
  if (done(s)) {
    s.converged = true;
    return s;
  }

  Vector yk = s.x;
  Vector ayk = s.ax;
  double theta = 1.0;
  Vector xn(n);
  Vector step(n);
  std::vector<std::int8_t> tried;
  for (int it = 1; it <= max_iter; ++it) {
    s.iterations = it;
    const Vector eps_y = y - ayk;
    const Vector grad = -2.0 * (a.transpose() * eps_y);
    const double gy = eps_y.squaredNorm();
    Vector axn;
    double gn = 0.0;
    for (;;) {
      const double t = 1.0 / lip;
      for (Eigen::Index i = 0; i < n; ++i)
        xn[i] = pen.prox(i, t, yk[i] - t * grad[i]);
      axn = a * xn;
      gn = (y - axn).squaredNorm();
      step = xn - yk;
      const double model = gy + grad.dot(step) + 0.5 * lip * step.squaredNorm();
      if (gn <= model + 1e-12 * (1.0 + std::abs(gy))) break;
      lip *= 2.0;
    }
    const double fn = gn + pen.total(xn);
    if (fn > s.primal && theta > 1.0) {
      // Momentum overshot; restart from the last accepted iterate.
      theta = 1.0;
      yk = s.x;
      ayk = s.ax;
      continue;
    }
    const double theta_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta));
    const double beta = (theta - 1.0) / theta_next;
    yk = xn + beta * (xn - s.x);
    ayk = axn + beta * (axn - s.ax);
    s.x = xn;
    s.ax = std::move(axn);
    s.primal = fn;
    theta = theta_next;
    if (it % kCheckEvery == 0) {
      s.eps = y - s.ax;
      s.delta = (a.transpose() * s.eps).array().square().matrix();
      if (done(s)) {
        s.converged = true;
        return s;
      }
      // Try the exact solve on the current region pattern once per pattern.
      std::vector<std::int8_t> pat = pattern_of(pen, s.x);
      if (pat != tried) {
        Vector xp;
        if (polish(inst, pen, pat, xp)) {
          Vector axp = a * xp;
          const double fp = (y - axp).squaredNorm() + pen.total(xp);
          if (fp <= s.primal) {
            s.x = std::move(xp);
            s.ax = std::move(axp);
            s.primal = fp;
            s.eps = y - s.ax;
            s.delta = (a.transpose() * s.eps).array().square().matrix();
            if (done(s)) {
              s.converged = true;
              return s;
            }
            yk = s.x;
            ayk = s.ax;
            theta = 1.0;
          }
        }
        tried = std::move(pat);
      }
    }
  }
  s.eps = y - s.ax;
  s.delta = (a.transpose() * s.eps).array().square().matrix();
  s.converged = done(s);
  return s;
}

int count_state(std::span<const FixState> fixes, FixState which) {
  return static_cast<int>(std::count(fixes.begin(), fixes.end(), which));
}

Support ones_of(std::span<const FixState> fixes) {
  Support s;
  for (std::size_t i = 0; i < fixes.size(); ++i)
    if (fixes[i] == FixState::One) s.push_back(static_cast<int>(i));
  return s;
}

// No free variable left: the subproblem is a plain ridge fit on the ones.
RelaxSolution exact_leaf(const Instance& inst, const ProblemSpec& spec,
                         std::span<const FixState> fixes) {
  const Support ones = ones_of(fixes);
  RidgeFit fit = ridge_restricted_solve(inst, spec.gamma, ones);
  RelaxSolution sol;
  sol.epsilon = inst.y() - inst.a() * fit.x;
  sol.x = std::move(fit.x);
  sol.z = Vector::Zero(inst.cols());
  for (int i : ones) sol.z[i] = 1.0;
  sol.objective = fit.value;
  if (spec.is_reg()) sol.objective += spec.mu * static_cast<double>(ones.size());
  sol.lower_bound = sol.objective;
  sol.converged = true;
  return sol;
}

RelaxSolution solve_reg_model(const Instance& inst, double gamma, double mu,
                              std::span<const FixState> fixes,
                              const SolverConfig& cfg, Vector x0, double& lip) {
  const Penalties pen{fixes, BerhuPenalty(mu, gamma), gamma, mu};
  double bound = -std::numeric_limits<double>::infinity();
  auto done = [&](const FistaState& s) {
    bound = reg_bound(inst, gamma, mu, mu, fixes, s.eps, s.delta);
    return gap_of(s.primal, bound) <= cfg.tol;
  };
  FistaState s = fista(inst, pen, std::move(x0), lip, cfg.max_iter, done);

  RelaxSolution sol;
  sol.z = Vector::Zero(s.x.size());
  for (Eigen::Index i = 0; i < s.x.size(); ++i) {
    const FixState f = fixes[static_cast<std::size_t>(i)];
    if (f == FixState::One) sol.z[i] = 1.0;
    if (f == FixState::Free) sol.z[i] = pen.berhu.indicator(s.x[i]);
  }
  sol.objective = s.primal;
  sol.lower_bound = std::min(bound, s.primal);
  sol.converged = s.converged;
  sol.iterations = s.iterations;
  sol.x = std::move(s.x);
  sol.epsilon = std::move(s.eps);
  return sol;
}

struct CardEval {
  Vector x;
  Vector z;
  Vector eps;
  double primal;
  double bound;
  double lambda;
};

// Primal value of the cardinality relaxation at x, with the best z.
double card_primal(double gamma, int budget, std::span<const FixState> fixes,
                   const Vector& x, const Vector& eps, Vector& z) {
  std::vector<double> free_abs;
  std::vector<Eigen::Index> free_idx;
  double ridge = 0.0;
  z = Vector::Zero(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const FixState f = fixes[static_cast<std::size_t>(i)];
    if (f == FixState::One) {
      ridge += x[i] * x[i];
      z[i] = 1.0;
    } else if (f == FixState::Free) {
      free_abs.push_back(std::abs(x[i]));
      free_idx.push_back(i);
    }
  }
  std::vector<double> zf;
  const double persp = waterfill(free_abs, budget, zf);
  for (std::size_t j = 0; j < free_idx.size(); ++j) z[free_idx[j]] = zf[j];
  return eps.squaredNorm() + (ridge + persp) / gamma;
}

double count_of(const BerhuPenalty& pen, std::span<const FixState> fixes,
                const Vector& x) {
  double c = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (fixes[static_cast<std::size_t>(i)] == FixState::Free)
      c += pen.indicator(x[i]);
  return c;
}

// Within a fixed region pattern the Lagrangian solution is affine in
// t = sqrt(lambda): x_S(t) = u - t v. Returns the lambda at which the free
// indicator count equals the budget, with x at that lambda.
std::optional<std::pair<double, Vector>> pattern_lambda(
    const Instance& inst, double gamma, int budget, std::span<const FixState> fixes,
    const std::vector<std::int8_t>& pattern) {
  std::vector<Eigen::Index> support;
  for (std::size_t i = 0; i < pattern.size(); ++i)
    if (pattern[i] != 0) support.push_back(static_cast<Eigen::Index>(i));
  const auto s = static_cast<Eigen::Index>(support.size());
  if (s == 0 || s > kPolishCap) return std::nullopt;
  Matrix as(inst.rows(), s);
  for (Eigen::Index j = 0; j < s; ++j) as.col(j) = inst.a().col(support[static_cast<std::size_t>(j)]);
  Matrix h = as.transpose() * as;
  Vector c = Vector::Zero(s);
  const double rg = std::sqrt(gamma);
  int quad_free = 0;
  for (Eigen::Index j = 0; j < s; ++j) {
    const auto i = static_cast<std::size_t>(support[static_cast<std::size_t>(j)]);
    if (pattern[i] == 2) {
      h(j, j) += 1.0 / gamma;
      if (fixes[i] == FixState::Free) ++quad_free;
    } else {
      c[j] = pattern[i] / rg;
    }
  }
  const Eigen::LDLT<Matrix> ldlt(h);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) return std::nullopt;
  const Vector u = ldlt.solve(as.transpose() * inst.y());
  const Vector v = ldlt.solve(c);
  double su = 0.0, sv = 0.0;
  for (Eigen::Index j = 0; j < s; ++j) {
    su += c[j] * u[j];
    sv += c[j] * v[j];
  }
  const double denom = budget - quad_free + sv / rg;
  if (!(su > 0.0) || !(denom > 0.0)) return std::nullopt;
  const double t = su / rg / denom;
  if (!std::isfinite(t) || !(t > 0.0)) return std::nullopt;
  Vector x = Vector::Zero(inst.cols());
  for (Eigen::Index j = 0; j < s; ++j) x[support[static_cast<std::size_t>(j)]] = u[j] - t * v[j];
  return std::make_pair(t * t, std::move(x));
}

RelaxSolution solve_card_model(const Instance& inst, double gamma, int budget,
                               std::span<const FixState> fixes,
                               const SolverConfig& cfg, Vector x0, double& lip) {
  const double inner_tol = 0.1 * cfg.tol;
  int total_iter = 0;
  bool have_best = false;
  CardEval best;
  std::vector<std::int8_t> last_pattern;

  // Solve the Lagrangian relaxation for multiplier lambda and score it
  // against the cardinality relaxation.
  auto evaluate = [&](double lambda, Vector start) -> double {
    const Penalties pen{fixes, BerhuPenalty(lambda, gamma), gamma, 0.0};
    double outer_bound = -std::numeric_limits<double>::infinity();
    double outer_primal = std::numeric_limits<double>::infinity();
    Vector z;
    auto done = [&](const FistaState& s) {
      outer_bound = card_bound(inst, gamma, budget, fixes, s.eps, s.delta);
      outer_primal = card_primal(gamma, budget, fixes, s.x, s.eps, z);
      if (gap_of(outer_primal, outer_bound) <= cfg.tol) return true;
      const double inner = reg_bound(inst, gamma, lambda, 0.0, fixes, s.eps, s.delta);
      const double inner_gap = gap_of(s.primal, inner);
      if (inner_gap <= inner_tol) return true;
      // Far from the budget only the side of the count matters.
      const double miss = std::abs(count_of(pen.berhu, fixes, s.x) - budget);
      const double scale = std::max(1, budget);
      return (inner_gap <= kCoarseTol && miss > 0.05 * scale) ||
             (inner_gap <= 100.0 * kCoarseTol && miss > 0.5 * scale);
    };
    FistaState s = fista(inst, pen, std::move(start), lip, cfg.max_iter, done);
    total_iter += s.iterations;
    last_pattern = pattern_of(pen, s.x);
    if (!have_best || outer_bound > best.bound) {
      have_best = true;
      best = CardEval{s.x, z, s.eps, outer_primal, outer_bound, lambda};
    }
    return count_of(pen.berhu, fixes, s.x);
  };
  auto closed = [&] { return gap_of(best.primal, best.bound) <= cfg.tol; };

  const double count0 = evaluate(0.0, x0);
  if (count0 > budget && !closed()) {
    const RidgeFit base = ridge_restricted_solve(inst, gamma, ones_of(fixes));
    const Vector eps0 = inst.y() - inst.a() * base.x;
    const Vector d0 = (inst.a().transpose() * eps0).array().square().matrix();
    double dmax = 0.0;
    for (Eigen::Index i = 0; i < d0.size(); ++i)
      if (fixes[static_cast<std::size_t>(i)] == FixState::Free)
        dmax = std::max(dmax, d0[i]);
    double lo = 0.0;
    double hi = gamma * dmax + 1.0;
    Vector warm = best.x;
    for (int step = 0; step < 200; ++step) {
      const double lambda = lo > 0.0 ? std::sqrt(lo * hi) : 0.5 * hi;
      const double count = evaluate(lambda, warm);
      warm = best.x;
      if (closed()) break;
      if (count > budget) {
        lo = lambda;
      } else {
        hi = lambda;
      }
      if (hi - lo <= 1e-10 * (1.0 + lambda)) break;
      // Newton-like jumps to the budget-matching multiplier of the current
      // pattern, kept inside the bracket.
      bool finished = false;
      for (int j = 0; j < kMaxJumps && !finished; ++j) {
        auto jump = pattern_lambda(inst, gamma, budget, fixes, last_pattern);
        if (!jump || !(jump->first > lo && jump->first < hi)) break;
        const double c2 = evaluate(jump->first, std::move(jump->second));
        warm = best.x;
        finished = closed();
        if (c2 > budget) {
          lo = jump->first;
        } else {
          hi = jump->first;
        }
      }
      if (finished) break;
    }
  }

  RelaxSolution sol;
  sol.x = std::move(best.x);
  sol.z = std::move(best.z);
  sol.epsilon = std::move(best.eps);
  sol.objective = best.primal;
  sol.lower_bound = std::min(best.bound, best.primal);
  sol.lambda = best.lambda;
  sol.converged = closed();
  sol.iterations = total_iter;
  return sol;
}

Vector start_point(const Instance& inst, const Vector* warm) {
  if (warm != nullptr && warm->size() == inst.cols()) return *warm;
  return Vector::Zero(inst.cols());
}

}  // namespace

void SolverConfig::validate() const {
  if (!(tol > 0.0 && tol < 1.0)) throw InvalidInput("tol must lie in (0, 1)");
  if (max_iter < 1) throw InvalidInput("max_iter must be positive");
  if (lipschitz && !(*lipschitz > 0.0))
    throw InvalidInput("lipschitz constant must be positive");
}

double RelaxSolution::relative_gap() const {
  return gap_of(objective, lower_bound);
}

DualCertificate certificate_of(const RelaxSolution& sol) {
  return DualCertificate{sol.epsilon, sol.lower_bound};
}

double lipschitz_constant(const Instance& inst) {
  const Matrix& a = inst.a();
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unif(0.5, 1.5);
  Vector v(a.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = unif(rng);
  v.normalize();
  double est = 0.0;
  for (int it = 0; it < 100; ++it) {
    Vector w = a.transpose() * (a * v);
    const double next = w.norm();
    if (next == 0.0) break;
    v = w / next;
    const bool settled = std::abs(next - est) <= 1e-10 * next;
    est = next;
    if (settled) break;
  }
  return std::max(2.0 * est, 1e-12);
}

Vector dual_from_primal(double gamma, const Instance& inst,
                        const Vector& epsilon_bar) {
  if (epsilon_bar.size() != inst.rows())
    throw InvalidInput("residual has wrong length");
  return 2.0 * gamma * (inst.a().transpose() * epsilon_bar);
}

double certified_lower_bound_reg(const Instance& inst, double gamma, double mu,
                                 const Vector& epsilon_bar) {
  const auto fixes = all_free(inst.cols());
  return certified_lower_bound(inst, ProblemSpec::reg(gamma, mu), fixes,
                               epsilon_bar);
}

double certified_lower_bound_card(const Instance& inst, double gamma, int k,
                                  const Vector& epsilon_bar) {
  const auto fixes = all_free(inst.cols());
  return certified_lower_bound(inst, ProblemSpec::card(gamma, k), fixes,
                               epsilon_bar);
}

double certified_lower_bound(const Instance& inst, const ProblemSpec& spec,
                             std::span<const FixState> fixes,
                             const Vector& epsilon_bar) {
  if (epsilon_bar.size() != inst.rows())
    throw InvalidInput("residual has wrong length");
  if (static_cast<int>(fixes.size()) != inst.cols())
    throw InvalidInput("fix vector has wrong length");
  const Vector delta = delta_from_residual(inst, epsilon_bar);
  if (spec.is_reg())
    return reg_bound(inst, spec.gamma, spec.mu, spec.mu, fixes, epsilon_bar, delta);
  const int budget = spec.k - count_state(fixes, FixState::One);
  return card_bound(inst, spec.gamma, std::max(budget, 0), fixes, epsilon_bar,
                    delta);
}

RelaxSolution solve_cr(const Instance& inst, double gamma, double mu,
                       const SolverConfig& cfg) {
  return solve_relaxation(inst, ProblemSpec::reg(gamma, mu), cfg);
}

RelaxSolution solve_cc(const Instance& inst, double gamma, int k,
                       const SolverConfig& cfg) {
  return solve_relaxation(inst, ProblemSpec::card(gamma, k), cfg);
}

RelaxSolution solve_relaxation(const Instance& inst, const ProblemSpec& spec,
                               const SolverConfig& cfg) {
  const auto fixes = all_free(inst.cols());
  return *solve_relaxation(inst, spec, fixes, cfg);
}

std::optional<RelaxSolution> solve_relaxation(const Instance& inst,
                                              const ProblemSpec& spec,
                                              std::span<const FixState> fixes,
                                              const SolverConfig& cfg,
                                              const Vector* warm) {
  spec.validate(inst.cols());
  cfg.validate();
  if (static_cast<int>(fixes.size()) != inst.cols())
    throw InvalidInput("fix vector has wrong length");

  const int n_one = count_state(fixes, FixState::One);
  const int n_free = count_state(fixes, FixState::Free);
  if (spec.is_card() && n_one > spec.k) return std::nullopt;

  std::vector<FixState> local(fixes.begin(), fixes.end());
  const int budget = spec.is_card() ? spec.k - n_one : 0;
  if (spec.is_card() && budget == 0)
    std::replace(local.begin(), local.end(), FixState::Free, FixState::Zero);
  if (n_free == 0 || (spec.is_card() && budget == 0))
    return exact_leaf(inst, spec, local);

  double lip = cfg.lipschitz ? *cfg.lipschitz : lipschitz_constant(inst);
  Vector x0 = start_point(inst, warm);
  if (spec.is_reg())
    return solve_reg_model(inst, spec.gamma, spec.mu, local, cfg, std::move(x0), lip);
  return solve_card_model(inst, spec.gamma, budget, local, cfg, std::move(x0), lip);
}

}  // namespace l0screen
