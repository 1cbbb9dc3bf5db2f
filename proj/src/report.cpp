#include "l0screen/report.hpp"

#include <cmath>

namespace l0screen {

namespace {

using json = nlohmann::ordered_json;

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json optional_number(const std::optional<double>& v) {
  return v ? finite_or_null(*v) : json(nullptr);
}

json incumbent_json(const Incumbent& inc) {
  json j;
  j["objective"] = finite_or_null(inc.objective);
  j["support"] = inc.support;
  std::vector<double> coef;
  for (int i : inc.support) coef.push_back(inc.x[i]);
  j["coefficients"] = coef;
  return j;
}

}  // namespace

json problem_json(const ProblemSpec& spec) {
  json j;
  j["variant"] = spec.is_reg() ? "reg" : "card";
  j["gamma"] = spec.gamma;
  if (spec.is_reg()) {
    j["mu"] = spec.mu;
  } else {
    j["k"] = spec.k;
  }
  return j;
}

json screen_json(const ScreenReport& rep) {
  json j;
  j["n_zero"] = rep.n_zero;
  j["n_one"] = rep.n_one;
  j["n_free"] = rep.n_free;
  j["lower_bound"] = finite_or_null(rep.lower_bound);
  j["upper_bound"] = finite_or_null(rep.upper_bound);
  j["delta_k"] = optional_number(rep.delta_k);
  j["delta_k1"] = optional_number(rep.delta_k1);
  std::vector<std::string> fixes;
  fixes.reserve(rep.fixes.size());
  for (FixState f : rep.fixes) fixes.emplace_back(to_string(f));
  j["fixes"] = fixes;
  return j;
}

json RunReport::to_json() const {
  json j;
  j["command"] = command;
  j["args"] = args;
  j["version"] = kVersion;
  j["instance"] = json{{"m", m}, {"n", n}};
  j["problem"] = problem_json(spec);
  json t;
  t["relax"] = timings.relax_ms;
  t["heuristic"] = timings.heuristic_ms;
  t["screen"] = timings.screen_ms;
  t["solve"] = timings.solve_ms;
  j["timings_ms"] = t;
  if (relax) {
    json r;
    r["objective"] = relax->objective;
    r["lower_bound"] = relax->lower_bound;
    r["relative_gap"] = relax->relative_gap();
    r["converged"] = relax->converged;
    r["iterations"] = relax->iterations;
    r["lambda"] = optional_number(relax->lambda);
    j["relaxation"] = r;
  }
  if (incumbent) j["incumbent"] = incumbent_json(*incumbent);
  if (screen) j["screen"] = screen_json(*screen);
  if (bnb || brute) {
    json s;
    s["method"] = method;
    s["screen"] = screening_enabled;
    if (bnb) {
      s["objective"] = finite_or_null(bnb->best.objective);
      s["support"] = bnb->best.support;
      s["solution"] = bnb->best.empty() ? json(nullptr) : incumbent_json(bnb->best);
      s["nodes"] = bnb->nodes_explored;
      s["wall_time_s"] = bnb->wall_time_s;
      s["optimal"] = bnb->optimal;
      s["root_fixed"] = bnb->root_fixed;
      s["root_lower_bound"] = finite_or_null(bnb->root_lower_bound);
      s["lower_bound"] = finite_or_null(bnb->lower_bound);
    } else {
      s["objective"] = finite_or_null(brute->best.objective);
      s["support"] = brute->best.support;
      s["solution"] = incumbent_json(brute->best);
      s["nodes"] = nullptr;
      s["wall_time_s"] = timings.solve_ms / 1000.0;
      s["optimal"] = true;
      s["supports_enumerated"] = brute->supports_enumerated;
      s["optimal_supports"] = brute->optimal_supports;
    }
    j["solve"] = s;
  }
  return j;
}

}  // namespace l0screen
