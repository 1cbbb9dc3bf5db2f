#include "l0screen/instance.hpp"

#include <cmath>
#include <utility>

namespace l0screen {

Instance::Instance(Matrix a, Vector y) : a_(std::move(a)), y_(std::move(y)) {
  if (a_.rows() < 1 || a_.cols() < 1)
    throw InvalidInput("instance needs at least one row and one column");
  if (y_.size() != a_.rows())
    throw InvalidInput("response length " + std::to_string(y_.size()) +
                       " does not match " + std::to_string(a_.rows()) + " rows");
  if (!a_.allFinite() || !y_.allFinite())
    throw InvalidInput("instance contains non-finite entries");
}

ProblemSpec ProblemSpec::reg(double gamma, double mu) {
  ProblemSpec s;
  s.variant = Variant::Reg;
  s.gamma = gamma;
  s.mu = mu;
  return s;
}

ProblemSpec ProblemSpec::card(double gamma, int k) {
  ProblemSpec s;
  s.variant = Variant::Card;
  s.gamma = gamma;
  s.k = k;
  return s;
}

void ProblemSpec::validate(int n) const {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw InvalidInput("gamma must be positive and finite");
  if (is_reg() && (!(mu > 0.0) || !std::isfinite(mu)))
    throw InvalidInput("mu must be positive and finite");
  if (is_card() && (k < 1 || k > n))
    throw InvalidInput("k must lie in [1, " + std::to_string(n) + "]");
}

const char* to_string(FixState s) {
  switch (s) {
    case FixState::Free:
      return "free";
    case FixState::Zero:
      return "zero";
    case FixState::One:
      return "one";
  }
  return "?";
}

std::vector<FixState> all_free(int n) {
  return std::vector<FixState>(static_cast<std::size_t>(n), FixState::Free);
}

}  // namespace l0screen
