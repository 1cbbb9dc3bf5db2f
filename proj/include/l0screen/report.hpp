#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "l0screen/exact.hpp"
#include "l0screen/instance.hpp"
#include "l0screen/relax.hpp"
#include "l0screen/screening.hpp"

namespace l0screen {

inline constexpr const char* kVersion = "0.1.0";

struct StageTimings {
  double relax_ms = 0.0;
  double heuristic_ms = 0.0;
  double screen_ms = 0.0;
  double solve_ms = 0.0;
};

/// Machine-readable result of one CLI invocation. Key order is fixed.
struct RunReport {
  std::string command;
  std::vector<std::string> args;
  int m = 0;
  int n = 0;
  ProblemSpec spec;
  StageTimings timings;
  std::optional<RelaxSolution> relax;
  std::optional<Incumbent> incumbent;
  std::optional<ScreenReport> screen;
  std::optional<BnBStats> bnb;
  std::optional<BruteForceResult> brute;
  std::string method;
  bool screening_enabled = false;

  nlohmann::ordered_json to_json() const;
};

nlohmann::ordered_json problem_json(const ProblemSpec& spec);
nlohmann::ordered_json screen_json(const ScreenReport& rep);

}  // namespace l0screen
