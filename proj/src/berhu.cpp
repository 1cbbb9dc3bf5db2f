#include "l0screen/berhu.hpp"

#include <algorithm>
#include <cmath>

#include "l0screen/instance.hpp"

namespace l0screen {

BerhuPenalty::BerhuPenalty(double mu, double gamma)
    : mu_(mu),
      gamma_(gamma),
      knot_(std::sqrt(gamma * mu)),
      slope_(2.0 * std::sqrt(mu / gamma)) {
  if (!(gamma > 0.0) || !(mu >= 0.0))
    throw InvalidInput("berhu penalty needs gamma > 0 and mu >= 0");
}

double BerhuPenalty::value(double x) const {
  const double ax = std::abs(x);
  if (ax <= knot_) return slope_ * ax;
  return x * x / gamma_ + mu_;
}

double BerhuPenalty::prox(double t, double v) const {
  // Both pieces hand over at |v| = knot + t * slope, where soft-thresholding
  // and the quadratic shrink both return the knot.
  const double av = std::abs(v);
  const double mag = av <= knot_ + t * slope_
                         ? std::max(av - t * slope_, 0.0)
                         : av / (1.0 + 2.0 * t / gamma_);
  return std::copysign(mag, v);
}

double BerhuPenalty::indicator(double x) const {
  if (x == 0.0) return 0.0;
  if (knot_ == 0.0) return 1.0;
  return std::min(1.0, std::abs(x) / knot_);
}

}  // namespace l0screen
