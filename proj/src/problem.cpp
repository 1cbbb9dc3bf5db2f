#include "l0screen/problem.hpp"

#include <string>

namespace l0screen {

namespace {

void check_point(const Instance& inst, std::span<const int> support,
                 const Vector& x) {
  const int n = inst.cols();
  if (x.size() != n)
    throw InvalidInput("coefficient vector has length " +
                       std::to_string(x.size()) + ", expected " +
                       std::to_string(n));
  std::vector<bool> on(static_cast<std::size_t>(n), false);
  for (int i : support) {
    if (i < 0 || i >= n)
      throw InvalidInput("support index " + std::to_string(i) + " out of range");
    on[static_cast<std::size_t>(i)] = true;
  }
  for (int i = 0; i < n; ++i)
    if (!on[static_cast<std::size_t>(i)] && x[i] != 0.0)
      throw InvalidInput("x is nonzero off the support at index " +
                         std::to_string(i));
}

double fit_value(const Instance& inst, double gamma, const Vector& x) {
  return (inst.y() - inst.a() * x).squaredNorm() + x.squaredNorm() / gamma;
}

}  // namespace

double objective_reg(const Instance& inst, const ProblemSpec& spec,
                     std::span<const int> support, const Vector& x) {
  check_point(inst, support, x);
  return fit_value(inst, spec.gamma, x) +
         spec.mu * static_cast<double>(support.size());
}

double objective_card(const Instance& inst, const ProblemSpec& spec,
                      std::span<const int> support, const Vector& x) {
  if (static_cast<int>(support.size()) > spec.k)
    throw ConstraintViolation("support of size " +
                              std::to_string(support.size()) + " exceeds k=" +
                              std::to_string(spec.k));
  check_point(inst, support, x);
  return fit_value(inst, spec.gamma, x);
}

double objective(const Instance& inst, const ProblemSpec& spec,
                 std::span<const int> support, const Vector& x) {
  return spec.is_reg() ? objective_reg(inst, spec, support, x)
                       : objective_card(inst, spec, support, x);
}

RidgeFit ridge_restricted_solve(const Instance& inst, double gamma,
                                std::span<const int> support) {
  const int n = inst.cols();
  RidgeFit fit{Vector::Zero(n), 0.0};
  const auto s = static_cast<Eigen::Index>(support.size());
  if (s == 0) {
    fit.value = inst.y().squaredNorm();
    return fit;
  }
  Matrix as(inst.rows(), s);
  for (Eigen::Index j = 0; j < s; ++j) as.col(j) = inst.a().col(support[j]);
  Matrix gram = as.transpose() * as;
  gram.diagonal().array() += 1.0 / gamma;
  const Vector xs = gram.llt().solve(as.transpose() * inst.y());
  for (Eigen::Index j = 0; j < s; ++j) fit.x[support[j]] = xs[j];
  fit.value = (inst.y() - as * xs).squaredNorm() + xs.squaredNorm() / gamma;
  return fit;
}

Vector delta_from_residual(const Instance& inst, const Vector& epsilon) {
  return (inst.a().transpose() * epsilon).array().square().matrix();
}

Residual delta_vector(const Instance& inst, const Vector& x) {
  if (x.size() != inst.cols())
    throw InvalidInput("x has wrong length");
  Residual r;
  r.epsilon = inst.y() - inst.a() * x;
  r.delta = delta_from_residual(inst, r.epsilon);
  return r;
}

}  // namespace l0screen
