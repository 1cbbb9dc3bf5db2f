#include "l0screen/exact.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <queue>
#include <string>

#include "l0screen/heuristics.hpp"
#include "l0screen/problem.hpp"
#include "l0screen/screening.hpp"

namespace l0screen {

namespace {

constexpr std::uint64_t kBruteForceCap = 1'000'000;
constexpr int kRegFreeCap = 25;

std::vector<FixState> resolve_fixes(std::span<const FixState> fixes, int n) {
  if (fixes.empty()) return all_free(n);
  if (static_cast<int>(fixes.size()) != n)
    throw InvalidInput("fix vector has wrong length");
  return {fixes.begin(), fixes.end()};
}

std::uint64_t binomial_sum_capped(int n, int k, std::uint64_t cap) {
  std::uint64_t total = 0;
  std::uint64_t c = 1;  // C(n, j)
  for (int j = 0; j <= k && j <= n; ++j) {
    total += c;
    if (total > cap) return cap + 1;
    c = c * static_cast<std::uint64_t>(n - j) / static_cast<std::uint64_t>(j + 1);
  }
  return total;
}

class OptimaCollector {
 public:
  void offer(const Instance& inst, const ProblemSpec& spec, Support s) {
    ++count_;
    Incumbent inc = evaluate_support(inst, spec, std::move(s));
    if (inc.objective < best_.objective) {
      best_ = inc;
      const double cut = cutoff();
      std::erase_if(near_, [&](const auto& p) { return p.first > cut; });
    }
    if (inc.objective <= cutoff()) near_.emplace_back(inc.objective, inc.support);
  }

  BruteForceResult finish() && {
    BruteForceResult r;
    r.best = std::move(best_);
    r.supports_enumerated = count_;
    const double cut = std::isfinite(r.best.objective)
                           ? r.best.objective + 1e-9 * std::max(1.0, std::abs(r.best.objective))
                           : r.best.objective;
    for (auto& [obj, s] : near_)
      if (obj <= cut) r.optimal_supports.push_back(std::move(s));
    std::sort(r.optimal_supports.begin(), r.optimal_supports.end());
    return r;
  }

 private:
  double cutoff() const {
    return best_.objective + 1e-9 * std::max(1.0, std::abs(best_.objective));
  }

  Incumbent best_;
  std::vector<std::pair<double, Support>> near_;
  std::uint64_t count_ = 0;
};

// Calls visit(S) for every subset of `pool` of size <= max_size, prefixed
// by `base`.
template <typename Visit>
void for_each_subset(const Support& base, const std::vector<int>& pool,
                     int max_size, Visit&& visit) {
  Support current = base;
  auto rec = [&](auto&& self, std::size_t start, int left) -> void {
    visit(current);
    if (left == 0) return;
    for (std::size_t i = start; i < pool.size(); ++i) {
      current.push_back(pool[i]);
      self(self, i + 1, left - 1);
      current.pop_back();
    }
  };
  rec(rec, 0, max_size);
}

struct Node {
  std::vector<FixState> fixes;
  double bound;
  int depth;
  std::uint64_t id;
  std::shared_ptr<const Vector> warm;
  // States implied by screening at an ancestor (or here); children that
  // contradict them hold no improving solution and are never created.
  std::shared_ptr<const std::vector<FixState>> screened;
};

struct NodeOrder {
  bool operator()(const Node& l, const Node& r) const {
    if (l.bound != r.bound) return l.bound > r.bound;
    return l.id > r.id;
  }
};

bool has_free(std::span<const FixState> fixes) {
  return std::find(fixes.begin(), fixes.end(), FixState::Free) != fixes.end();
}

Support ones_of(std::span<const FixState> fixes) {
  Support s;
  for (std::size_t i = 0; i < fixes.size(); ++i)
    if (fixes[i] == FixState::One) s.push_back(static_cast<int>(i));
  return s;
}

bool is_fractional(double z) { return z > 1e-6 && z < 1.0 - 1e-6; }

int pick_branch(const Instance& inst, BranchRule rule,
                std::span<const FixState> fixes, const RelaxSolution& rel) {
  const int n = inst.cols();
  int pick = -1;
  if (rule == BranchRule::MostFractionalZ) {
    double best = 2.0;
    for (int i = 0; i < n; ++i) {
      if (fixes[static_cast<std::size_t>(i)] != FixState::Free) continue;
      const double score = std::abs(rel.z[i] - 0.5);
      if (score < best) {
        best = score;
        pick = i;
      }
    }
    return pick;
  }
  const Vector delta = delta_from_residual(inst, rel.epsilon);
  double best = -1.0;
  bool best_frac = false;
  for (int i = 0; i < n; ++i) {
    if (fixes[static_cast<std::size_t>(i)] != FixState::Free) continue;
    const bool frac = is_fractional(rel.z[i]);
    if ((frac && !best_frac) || (frac == best_frac && delta[i] > best)) {
      best = delta[i];
      best_frac = frac;
      pick = i;
    }
  }
  return pick;
}

class BranchAndBound {
 public:
  BranchAndBound(const Instance& inst, const ProblemSpec& spec, const BnBConfig& cfg)
      : inst_(inst), spec_(spec), cfg_(cfg), start_(Clock::now()) {
    relax_cfg_ = cfg.relax;
    if (!relax_cfg_.lipschitz) relax_cfg_.lipschitz = lipschitz_constant(inst);
  }

  BnBStats run(const std::optional<Incumbent>& initial,
               std::vector<FixState> root_fixes) {
    if (initial && !initial->empty()) offer(*initial);
    push(Node{std::move(root_fixes), -std::numeric_limits<double>::infinity(), 0, 0, nullptr, nullptr});

    bool stopped = false;
    while (!stopped && (!open_.empty() || !stack_.empty())) {
      Node node = pop();
      process(std::move(node));
      if (elapsed() > cfg_.time_limit_s || stats_.nodes_explored >= cfg_.node_limit)
        stopped = true;
    }

    stats_.wall_time_s = elapsed();
    const bool exhausted = open_.empty() && stack_.empty();
    stats_.optimal = exhausted && stats_.wall_time_s <= cfg_.time_limit_s;
    stats_.lower_bound = stats_.best.objective;
    auto lower = [&](const Node& nd) {
      stats_.lower_bound = std::min(stats_.lower_bound, nd.bound);
    };
    for (const Node& nd : stack_) lower(nd);
    while (!open_.empty()) {
      lower(open_.top());
      open_.pop();
    }
    return std::move(stats_);
  }

 private:
  using Clock = std::chrono::steady_clock;

  double elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

  double cutoff() const {
    const double z = stats_.best.objective;
    if (!std::isfinite(z)) return z;
    return z - std::max(1e-9, cfg_.gap_tol * std::abs(z));
  }

  void offer(Incumbent inc) {
    if (inc.objective < stats_.best.objective) stats_.best = std::move(inc);
  }

  void push(Node node) {
    node.id = next_id_++;
    if (open_.size() + stack_.size() >= cfg_.open_node_cap) {
      stack_.push_back(std::move(node));
    } else {
      open_.push(std::move(node));
    }
  }

  Node pop() {
    if (!stack_.empty()) {
      Node n = std::move(stack_.back());
      stack_.pop_back();
      return n;
    }
    Node n = open_.top();
    open_.pop();
    return n;
  }

  std::optional<RelaxSolution> relax(std::span<const FixState> fixes,
                                     const Vector* warm) const {
    return solve_relaxation(inst_, spec_, fixes, relax_cfg_, warm);
  }

  // Returns false when the node is done (pruned, infeasible or solved).
  bool bound_and_improve(std::span<const FixState> fixes, const RelaxSolution& rel) {
    if (!has_free(fixes)) {
      if (rel.lower_bound < cutoff()) offer(evaluate_support(inst_, spec_, ones_of(fixes)));
      return false;
    }
    if (rel.lower_bound < cutoff()) offer(round(inst_, spec_, fixes, rel.epsilon));
    return rel.lower_bound < cutoff();
  }

  void process(Node node) {
    ++stats_.nodes_explored;
    const bool is_root = stats_.nodes_explored == 1;
    std::optional<RelaxSolution> rel = relax(node.fixes, node.warm.get());
    if (!rel) return;
    if (is_root) stats_.root_lower_bound = rel->lower_bound;
    const bool live = bound_and_improve(node.fixes, *rel);

    // The root is screened even when it is already pruned so that the
    // fixed count is reported.
    if ((is_root && cfg_.screen_at_root) || (live && cfg_.screen_per_node)) {
      const ScreenReport rep =
          screen(inst_, spec_, node.fixes, certificate_of(*rel), stats_.best.objective);
      if (is_root) stats_.root_fixed = rep.fixed();
      if (!live) return;
      if (!merge_screened(node, rep.fixes)) return;
    }
    if (!live) return;

    // Integral relaxation: its support is a candidate incumbent.
    bool integral = true;
    Support support;
    for (std::size_t i = 0; i < node.fixes.size(); ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      if (node.fixes[i] == FixState::One) support.push_back(static_cast<int>(i));
      if (node.fixes[i] != FixState::Free) continue;
      if (is_fractional(rel->z[ii])) integral = false;
      if (rel->z[ii] >= 1.0 - 1e-6) support.push_back(static_cast<int>(i));
    }
    if (integral && (spec_.is_reg() || static_cast<int>(support.size()) <= spec_.k)) {
      offer(evaluate_support(inst_, spec_, std::move(support)));
      if (rel->lower_bound >= cutoff()) return;
    }

    const int var = pick_branch(inst_, cfg_.branch_rule, node.fixes, *rel);
    if (var < 0) return;
    auto warm = std::make_shared<const Vector>(rel->x);
    const int n_one = static_cast<int>(
        std::count(node.fixes.begin(), node.fixes.end(), FixState::One));
    const FixState implied =
        node.screened ? (*node.screened)[static_cast<std::size_t>(var)] : FixState::Free;
    for (FixState child : {FixState::Zero, FixState::One}) {
      if (child == FixState::One && spec_.is_card() && n_one + 1 > spec_.k) continue;
      if (implied != FixState::Free && implied != child) continue;
      Node c{node.fixes, rel->lower_bound, node.depth + 1, 0, warm, node.screened};
      c.fixes[static_cast<std::size_t>(var)] = child;
      push(std::move(c));
    }
  }

  // Folds new screening states into the node. Returns false when they clash
  // with inherited ones, which means the subtree holds no improving solution.
  bool merge_screened(Node& node, const std::vector<FixState>& found) {
    std::vector<FixState> merged =
        node.screened ? *node.screened : std::vector<FixState>(found.size(), FixState::Free);
    bool changed = !node.screened;
    for (std::size_t i = 0; i < found.size(); ++i) {
      if (found[i] == FixState::Free || node.fixes[i] != FixState::Free) continue;
      if (merged[i] == FixState::Free) {
        merged[i] = found[i];
        changed = true;
      } else if (merged[i] != found[i]) {
        return false;
      }
    }
    if (changed)
      node.screened = std::make_shared<const std::vector<FixState>>(std::move(merged));
    return true;
  }

  const Instance& inst_;
  const ProblemSpec& spec_;
  const BnBConfig& cfg_;
  SolverConfig relax_cfg_;
  Clock::time_point start_;
  std::priority_queue<Node, std::vector<Node>, NodeOrder> open_;
  std::vector<Node> stack_;
  std::uint64_t next_id_ = 0;
  BnBStats stats_;
};

}  // namespace

BruteForceResult brute_force(const Instance& inst, const ProblemSpec& spec,
                             std::span<const FixState> fixes) {
  spec.validate(inst.cols());
  const std::vector<FixState> fx = resolve_fixes(fixes, inst.cols());
  const Support base = ones_of(fx);
  std::vector<int> pool;
  for (int i = 0; i < inst.cols(); ++i)
    if (fx[static_cast<std::size_t>(i)] == FixState::Free) pool.push_back(i);
  const int n_free = static_cast<int>(pool.size());

  int max_size = n_free;
  if (spec.is_reg()) {
    if (n_free > kRegFreeCap)
      throw SizeCapExceeded("brute force supports at most " +
                            std::to_string(kRegFreeCap) + " free variables, got " +
                            std::to_string(n_free));
  } else {
    max_size = spec.k - static_cast<int>(base.size());
    if (max_size < 0) throw ConstraintViolation("more forced ones than k");
    if (binomial_sum_capped(n_free, max_size, kBruteForceCap) > kBruteForceCap)
      throw SizeCapExceeded("brute force would enumerate more than 1e6 supports");
  }

  OptimaCollector collector;
  for_each_subset(base, pool, max_size,
                  [&](const Support& s) { collector.offer(inst, spec, s); });
  return std::move(collector).finish();
}

std::optional<RelaxSolution> node_relaxation(const Instance& inst,
                                             const ProblemSpec& spec,
                                             std::span<const FixState> fixes,
                                             const SolverConfig& cfg,
                                             const Vector* warm) {
  return solve_relaxation(inst, spec, fixes, cfg, warm);
}

void BnBConfig::validate() const {
  if (!(time_limit_s > 0.0)) throw InvalidInput("time limit must be positive");
  if (node_limit < 1) throw InvalidInput("node limit must be positive");
  if (!(gap_tol >= 0.0 && gap_tol < 1.0)) throw InvalidInput("gap_tol must lie in [0, 1)");
  relax.validate();
}

BnBStats branch_and_bound(const Instance& inst, const ProblemSpec& spec,
                          const BnBConfig& cfg,
                          const std::optional<Incumbent>& initial,
                          std::span<const FixState> root_fixes) {
  spec.validate(inst.cols());
  cfg.validate();
  BranchAndBound bnb(inst, spec, cfg);
  return bnb.run(initial, resolve_fixes(root_fixes, inst.cols()));
}

}  // namespace l0screen
