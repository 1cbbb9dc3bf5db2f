#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace l0screen {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Support = std::vector<int>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

/// Raised when an upper bound falls below a certified lower bound.
class InconsistentBounds : public Error {
 public:
  using Error::Error;
};

class SizeCapExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& file, std::size_t line, const std::string& what)
      : Error(file + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Model matrix A (m x n, column-major) and response y (length m).
///
/// Immutable once built; the constructor rejects empty or non-finite data.
class Instance {
 public:
  Instance(Matrix a, Vector y);

  const Matrix& a() const { return a_; }
  const Vector& y() const { return y_; }
  int rows() const { return static_cast<int>(a_.rows()); }
  int cols() const { return static_cast<int>(a_.cols()); }

 private:
  Matrix a_;
  Vector y_;
};

enum class Variant { Reg, Card };

/// Either the l0-regularized problem {gamma, mu} or the cardinality
/// constrained one {gamma, k}. The 1/gamma weight multiplies ||x||^2.
struct ProblemSpec {
  Variant variant = Variant::Reg;
  double gamma = 1.0;
  double mu = 0.0;
  int k = 0;

  static ProblemSpec reg(double gamma, double mu);
  static ProblemSpec card(double gamma, int k);

  bool is_reg() const { return variant == Variant::Reg; }
  bool is_card() const { return variant == Variant::Card; }

  /// Throws InvalidInput if the parameters are out of range for n columns.
  void validate(int n) const;
};

enum class FixState : std::uint8_t { Free, Zero, One };

const char* to_string(FixState s);
std::vector<FixState> all_free(int n);

/// A feasible point of the mixed-integer problem; its objective is an
/// upper bound on the optimum.
struct Incumbent {
  Support support;
  Vector x;
  double objective = std::numeric_limits<double>::infinity();

  bool empty() const { return x.size() == 0; }
};

}  // namespace l0screen
