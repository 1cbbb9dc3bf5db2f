#include "l0screen/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "l0screen/datagen.hpp"
#include "l0screen/exact.hpp"
#include "l0screen/heuristics.hpp"
#include "l0screen/problem.hpp"
#include "l0screen/relax.hpp"
#include "l0screen/report.hpp"
#include "l0screen/screening.hpp"

namespace l0screen::cli {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

class UsageError : public Error {
 public:
  using Error::Error;
};

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct ProblemFlags {
  std::string variant;
  double gamma = 0.0;
  std::optional<double> mu;
  std::optional<int> k;
  std::string a_path;
  std::string y_path;
  double tol = 1e-8;

  void add_to(CLI::App& app) {
    app.add_option("--variant", variant, "reg or card")
        ->required()
        ->check(CLI::IsMember({"reg", "card"}));
    app.add_option("--gamma", gamma, "ridge weight (1/gamma multiplies ||x||^2)")->required();
    app.add_option("--mu", mu, "l0 penalty (reg)");
    app.add_option("--k", k, "cardinality bound (card)");
    app.add_option("--a", a_path, "model matrix CSV")->required();
    app.add_option("--y", y_path, "response CSV")->required();
    app.add_option("--tol", tol, "relative primal-dual gap target");
  }

  ProblemSpec spec(int n) const {
    ProblemSpec s;
    if (variant == "reg") {
      if (!mu) throw UsageError("--mu is required for --variant reg");
      if (k) throw UsageError("--k is not valid for --variant reg");
      s = ProblemSpec::reg(gamma, *mu);
    } else {
      if (!k) throw UsageError("--k is required for --variant card");
      if (mu) throw UsageError("--mu is not valid for --variant card");
      s = ProblemSpec::card(gamma, *k);
    }
    try {
      s.validate(n);
    } catch (const InvalidInput& e) {
      throw UsageError(e.what());
    }
    return s;
  }

  SolverConfig solver() const {
    SolverConfig cfg;
    cfg.tol = tol;
    try {
      cfg.validate();
    } catch (const InvalidInput& e) {
      throw UsageError(e.what());
    }
    return cfg;
  }
};

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

std::vector<FixState> read_fixes(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(path + ": " + e.what());
  }
  const json& arr = j.is_object() ? j.at("fixes") : j;
  if (!arr.is_array() || static_cast<int>(arr.size()) != n)
    throw Error(path + ": expected " + std::to_string(n) + " fix states");
  std::vector<FixState> fixes;
  for (const auto& v : arr) {
    const std::string s = v.get<std::string>();
    if (s == "free") {
      fixes.push_back(FixState::Free);
    } else if (s == "zero") {
      fixes.push_back(FixState::Zero);
    } else if (s == "one") {
      fixes.push_back(FixState::One);
    } else {
      throw Error(path + ": unknown fix state '" + s + "'");
    }
  }
  return fixes;
}

// ---------------------------------------------------------------- gen

struct GenFlags {
  SyntheticSpec spec;
  std::string out;
};

int cmd_gen(const GenFlags& f, std::ostream& out) {
  try {
    f.spec.validate();
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }
  const SyntheticInstance data = generate(f.spec);
  write_synthetic(f.out, f.spec, data);
  json j;
  j["command"] = "gen";
  j["out"] = f.out;
  j["files"] = {"A.csv", "y.csv", "meta.json"};
  j["true_support"] = data.true_support;
  out << j.dump(2) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- screen

struct ScreenFlags {
  ProblemFlags problem;
  std::optional<double> zeta_bar;
  int swap_rounds = 0;
  std::string reduced_out;
};

struct Pipeline {
  RelaxSolution relax;
  Incumbent incumbent;
  ScreenReport screen;
  StageTimings timings;
};

Pipeline run_pipeline(const Instance& inst, const ProblemSpec& spec,
                      const SolverConfig& cfg, std::optional<double> zeta_bar,
                      int swap_rounds) {
  Pipeline p;
  auto t0 = Clock::now();
  p.relax = solve_relaxation(inst, spec, cfg);
  p.timings.relax_ms = ms_since(t0);
  t0 = Clock::now();
  p.incumbent = heuristic_incumbent(inst, spec, p.relax, HeuristicConfig{swap_rounds});
  p.timings.heuristic_ms = ms_since(t0);
  t0 = Clock::now();
  const double ub = zeta_bar ? *zeta_bar : p.incumbent.objective;
  p.screen = screen(inst, spec, certificate_of(p.relax), ub);
  p.timings.screen_ms = ms_since(t0);
  return p;
}

int cmd_screen(const ScreenFlags& f, const std::vector<std::string>& args,
               std::ostream& out) {
  const SolverConfig cfg = f.problem.solver();
  if (f.swap_rounds < 0) throw UsageError("--swap-rounds must be nonnegative");
  const Instance inst = load_csv(f.problem.a_path, f.problem.y_path);
  const ProblemSpec spec = f.problem.spec(inst.cols());

  Pipeline p = run_pipeline(inst, spec, cfg, f.zeta_bar, f.swap_rounds);

  if (!f.reduced_out.empty()) {
    KeptColumns kept = kept_columns(p.screen.fixes);
    if (kept.columns.empty()) {
      kept.columns.push_back(0);
      kept.fixes.push_back(FixState::Zero);
    }
    write_instance(f.reduced_out, select_columns(inst, kept.columns));
    json fx;
    fx["columns"] = kept.columns;
    std::vector<std::string> states;
    for (FixState s : kept.fixes) states.emplace_back(to_string(s));
    fx["fixes"] = states;
    write_json_file(std::filesystem::path(f.reduced_out) / "fixes.json", fx);
  }

  RunReport rep;
  rep.command = "screen";
  rep.args = args;
  rep.m = inst.rows();
  rep.n = inst.cols();
  rep.spec = spec;
  rep.timings = p.timings;
  rep.relax = std::move(p.relax);
  rep.incumbent = std::move(p.incumbent);
  rep.screen = std::move(p.screen);
  out << rep.to_json().dump(2) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- solve

struct SolveFlags {
  ProblemFlags problem;
  std::string method = "bnb";
  std::string screen = "on";
  std::string screen_per_node = "off";
  std::string branch_rule = "largest-delta";
  double time_limit = 3600.0;
  std::int64_t node_limit = 10'000'000;
  std::string fixes_path;
};

BranchRule parse_rule(const std::string& s) {
  return s == "most-fractional" ? BranchRule::MostFractionalZ : BranchRule::LargestDelta;
}

int cmd_solve(const SolveFlags& f, const std::vector<std::string>& args,
              std::ostream& out) {
  const SolverConfig relax_cfg = f.problem.solver();
  const Instance inst = load_csv(f.problem.a_path, f.problem.y_path);
  const ProblemSpec spec = f.problem.spec(inst.cols());
  std::vector<FixState> fixes = all_free(inst.cols());
  if (!f.fixes_path.empty()) fixes = read_fixes(f.fixes_path, inst.cols());

  RunReport rep;
  rep.command = "solve";
  rep.args = args;
  rep.m = inst.rows();
  rep.n = inst.cols();
  rep.spec = spec;
  rep.method = f.method;
  rep.screening_enabled = f.screen == "on";

  const auto t0 = Clock::now();
  if (f.method == "brute") {
    rep.brute = brute_force(inst, spec, fixes);
  } else {
    BnBConfig cfg;
    cfg.time_limit_s = f.time_limit;
    cfg.node_limit = f.node_limit;
    cfg.screen_at_root = f.screen == "on";
    cfg.screen_per_node = f.screen_per_node == "on";
    cfg.branch_rule = parse_rule(f.branch_rule);
    cfg.relax.tol = std::min(relax_cfg.tol, cfg.relax.tol);
    try {
      cfg.validate();
    } catch (const InvalidInput& e) {
      throw UsageError(e.what());
    }
    rep.bnb = branch_and_bound(inst, spec, cfg, std::nullopt, fixes);
  }
  rep.timings.solve_ms = ms_since(t0);
  out << rep.to_json().dump(2) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- bench

struct BenchFlags {
  std::string suite = "synthetic";
  std::string grid;
  int seeds = 1;
  std::uint64_t base_seed = 1;
  double time_limit = 60.0;
  std::int64_t node_limit = 10'000'000;
  std::vector<std::string> methods{"bnb", "bnb+screen"};
  std::string a_path;
  std::string y_path;
  int threads = 1;
  double tol = 1e-8;
};

struct BenchCase {
  int id = 0;
  int n = 0;
  int m = 0;
  int k = 0;
  double gamma_exp = 0.0;
  std::optional<double> rho;
  std::optional<double> snr;
  std::uint64_t seed = 0;
};

struct BenchRow {
  std::string method;
  int fixed_count = 0;
  double fixed_pct = 0.0;
  std::int64_t nodes = 0;
  double time_s = 0.0;
  bool optimal = false;
  double objective = std::nan("");
  std::string status = "ok";
};

std::map<std::string, std::vector<double>> parse_grid(const std::string& text) {
  std::map<std::string, std::vector<double>> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("grid entry '" + item + "' lacks '='");
    const std::string key = item.substr(0, eq);
    static const std::vector<std::string> known{"n", "m", "k", "gamma_exp", "rho", "snr"};
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw UsageError("unknown grid key '" + key + "'");
    std::stringstream vs(item.substr(eq + 1));
    std::string v;
    std::vector<double> values;
    while (std::getline(vs, v, ',')) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(v, &used));
        if (used != v.size()) throw std::invalid_argument(v);
      } catch (const std::exception&) {
        throw UsageError("bad grid value '" + v + "' for " + key);
      }
    }
    if (values.empty()) throw UsageError("grid key '" + key + "' has no values");
    grid[key] = values;
  }
  return grid;
}

std::vector<BenchCase> expand_cases(const BenchFlags& f) {
  auto grid = parse_grid(f.grid);
  auto get = [&](const std::string& key, std::vector<double> fallback) {
    auto it = grid.find(key);
    return it == grid.end() ? fallback : it->second;
  };
  std::vector<BenchCase> cases;
  int id = 0;
  if (f.suite == "synthetic") {
    for (double n : get("n", {1000}))
      for (double m : get("m", {500}))
        for (double k : get("k", {10}))
          for (double ge : get("gamma_exp", {0}))
            for (double rho : get("rho", {0.5}))
              for (double snr : get("snr", {6}))
                for (int s = 0; s < f.seeds; ++s) {
                  BenchCase c;
                  c.id = id++;
                  c.n = static_cast<int>(n);
                  c.m = static_cast<int>(m);
                  c.k = static_cast<int>(k);
                  c.gamma_exp = ge;
                  c.rho = rho;
                  c.snr = snr;
                  c.seed = f.base_seed + static_cast<std::uint64_t>(s);
                  cases.push_back(c);
                }
  } else {
    for (double k : get("k", {10}))
      for (double ge : get("gamma_exp", {0})) {
        BenchCase c;
        c.id = id++;
        c.k = static_cast<int>(k);
        c.gamma_exp = ge;
        cases.push_back(c);
      }
  }
  return cases;
}

std::vector<BenchRow> run_case(const BenchCase& c, const BenchFlags& f,
                               const Instance* shared) {
  std::vector<BenchRow> rows;
  std::optional<Instance> local;
  if (shared == nullptr) {
    SyntheticSpec s{c.n, c.m, std::min(c.k, c.n), *c.rho, *c.snr, c.seed};
    local = generate(s).instance;
  }
  const Instance& inst = shared ? *shared : *local;
  const double gamma = std::exp2(c.gamma_exp) * gamma_zero(inst, c.k);
  const ProblemSpec spec = ProblemSpec::card(gamma, c.k);
  spec.validate(inst.cols());
  const double n = inst.cols();

  for (const std::string& method : f.methods) {
    BenchRow row;
    row.method = method;
    try {
      const auto t0 = Clock::now();
      if (method == "screen") {
        SolverConfig cfg;
        cfg.tol = f.tol;
        Pipeline p = run_pipeline(inst, spec, cfg, std::nullopt, 0);
        row.fixed_count = p.screen.fixed();
        row.optimal = p.screen.n_free == 0;
        row.objective = p.incumbent.objective;
      } else {
        BnBConfig cfg;
        cfg.time_limit_s = f.time_limit;
        cfg.node_limit = f.node_limit;
        cfg.screen_at_root = method == "bnb+screen";
        const BnBStats st = branch_and_bound(inst, spec, cfg);
        row.fixed_count = st.root_fixed;
        row.nodes = st.nodes_explored;
        row.optimal = st.optimal;
        row.objective = st.best.objective;
      }
      row.time_s = ms_since(t0) / 1000.0;
      row.fixed_pct = 100.0 * row.fixed_count / n;
    } catch (const std::exception& e) {
      row.status = std::string("error: ") + e.what();
      std::replace(row.status.begin(), row.status.end(), ',', ';');
      std::replace(row.status.begin(), row.status.end(), '\n', ' ');
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string fmt_opt(const std::optional<double>& v) {
  if (!v) return "";
  std::ostringstream os;
  os << *v;
  return os.str();
}

int cmd_bench(const BenchFlags& f, std::ostream& out, std::ostream& err) {
  static const std::vector<std::string> known{"screen", "bnb", "bnb+screen"};
  for (const auto& m : f.methods)
    if (std::find(known.begin(), known.end(), m) == known.end())
      throw UsageError("unknown method '" + m + "'");
  if (f.seeds < 1) throw UsageError("--seeds must be positive");
  if (f.threads < 1) throw UsageError("--threads must be positive");
  if (!(f.time_limit > 0.0)) throw UsageError("--time-limit must be positive");

  std::optional<Instance> shared;
  if (f.suite == "files") {
    if (f.a_path.empty() || f.y_path.empty())
      throw UsageError("--suite files needs --a and --y");
    shared = load_csv(f.a_path, f.y_path);
  }
  const std::vector<BenchCase> cases = expand_cases(f);
  for (const auto& c : cases) {
    if (c.k < 1) throw UsageError("grid k must be positive");
    if (shared && c.k > shared->cols()) throw UsageError("grid k exceeds n");
    if (!shared) {
      try {
        SyntheticSpec{c.n, c.m, c.k, *c.rho, *c.snr, c.seed}.validate();
      } catch (const InvalidInput& e) {
        throw UsageError(e.what());
      }
    }
  }

  std::vector<std::vector<BenchRow>> results(cases.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cases.size(); i = next++)
      results[i] = run_case(cases[i], f, shared ? &*shared : nullptr);
  };
  std::vector<std::thread> pool;
  const int extra = std::min<int>(f.threads, static_cast<int>(cases.size())) - 1;
  for (int t = 0; t < extra; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  out << "instance_id,method,k,gamma_exp,rho,snr,fixed_count,fixed_pct,nodes,time_s,"
         "optimal,status,seed,n,objective\n";
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const BenchCase& c = cases[i];
    for (const BenchRow& r : results[i]) {
      out << c.id << ',' << r.method << ',' << c.k << ',' << c.gamma_exp << ','
          << fmt_opt(c.rho) << ',' << fmt_opt(c.snr) << ',' << r.fixed_count << ','
          << r.fixed_pct << ',' << r.nodes << ',' << r.time_s << ','
          << (r.optimal ? "true" : "false") << ',' << r.status << ','
          << (shared ? std::string() : std::to_string(c.seed)) << ','
          << (shared ? shared->cols() : c.n) << ',';
      if (std::isfinite(r.objective)) out << std::setprecision(17) << r.objective
                                          << std::setprecision(6);
      out << '\n';
      if (r.status != "ok") err << "instance " << c.id << " (" << r.method << "): "
                                << r.status << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Safe screening and exact solvers for l0-regularized least squares"};
  app.name("l0screen");
  app.require_subcommand(1);

  GenFlags gen;
  auto* g = app.add_subcommand("gen", "generate a synthetic instance");
  g->add_option("--n", gen.spec.n, "number of features")->required();
  g->add_option("--m", gen.spec.m, "number of rows")->required();
  g->add_option("--k-true", gen.spec.k_true, "true sparsity")->required();
  g->add_option("--rho", gen.spec.rho, "autocorrelation in [0, 1)")->required();
  g->add_option("--snr", gen.spec.snr, "signal-to-noise ratio")->required();
  g->add_option("--seed", gen.spec.seed, "64-bit seed")->required();
  g->add_option("--out", gen.out, "output directory")->required();

  ScreenFlags scr;
  auto* s = app.add_subcommand("screen", "relax, round and screen");
  scr.problem.add_to(*s);
  s->add_option("--zeta-bar", scr.zeta_bar, "upper bound override");
  s->add_option("--swap-rounds", scr.swap_rounds, "local search rounds on the incumbent");
  s->add_option("--reduced-out", scr.reduced_out, "write the screened instance here");

  SolveFlags sol;
  auto* v = app.add_subcommand("solve", "solve exactly");
  sol.problem.add_to(*v);
  v->add_option("--method", sol.method)->check(CLI::IsMember({"bnb", "brute"}));
  v->add_option("--screen", sol.screen)->check(CLI::IsMember({"on", "off"}));
  v->add_option("--screen-per-node", sol.screen_per_node)->check(CLI::IsMember({"on", "off"}));
  v->add_option("--branch-rule", sol.branch_rule)
      ->check(CLI::IsMember({"largest-delta", "most-fractional"}));
  v->add_option("--time-limit", sol.time_limit, "seconds");
  v->add_option("--node-limit", sol.node_limit);
  v->add_option("--fixes", sol.fixes_path, "JSON fix states (as written by screen)");

  BenchFlags bench;
  auto* b = app.add_subcommand("bench", "benchmark screening and branch and bound");
  b->add_option("--suite", bench.suite)->check(CLI::IsMember({"synthetic", "files"}));
  b->add_option("--grid", bench.grid, "e.g. 'n=1000;m=500;k=10,30;gamma_exp=0,4;rho=0.5;snr=1,6'");
  b->add_option("--seeds", bench.seeds, "instances per grid cell");
  b->add_option("--seed", bench.base_seed, "first seed");
  b->add_option("--time-limit", bench.time_limit, "seconds per solve");
  b->add_option("--node-limit", bench.node_limit);
  b->add_option("--methods", bench.methods, "screen, bnb, bnb+screen")->delimiter(',');
  b->add_option("--a", bench.a_path);
  b->add_option("--y", bench.y_path);
  b->add_option("--threads", bench.threads);
  b->add_option("--tol", bench.tol);

  std::vector<const char*> argv{"l0screen"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (g->parsed()) return cmd_gen(gen, out);
    if (s->parsed()) return cmd_screen(scr, args, out);
    if (v->parsed()) return cmd_solve(sol, args, out);
    if (b->parsed()) return cmd_bench(bench, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace l0screen::cli
