#pragma once

namespace l0screen {

/// Reverse Huber penalty obtained by minimizing x^2/(gamma z) + mu z over
/// z in [0, 1]: linear 2|x|sqrt(mu/gamma) up to |x| = sqrt(gamma mu),
/// quadratic x^2/gamma + mu beyond. mu = 0 degenerates to the ridge term.
class BerhuPenalty {
 public:
  BerhuPenalty(double mu, double gamma);

  double mu() const { return mu_; }
  double gamma() const { return gamma_; }
  /// Breakpoint sqrt(gamma mu) between the linear and quadratic pieces.
  double knot() const { return knot_; }
  /// Slope 2 sqrt(mu/gamma) of the linear piece.
  double slope() const { return slope_; }

  double value(double x) const;

  /// argmin_x t * value(x) + (x - v)^2 / 2, for t > 0.
  double prox(double t, double v) const;

  /// Optimal indicator min(1, |x|/sqrt(gamma mu)); 1 on x != 0 when mu = 0.
  double indicator(double x) const;

 private:
  double mu_;
  double gamma_;
  double knot_;
  double slope_;
};

}  // namespace l0screen
