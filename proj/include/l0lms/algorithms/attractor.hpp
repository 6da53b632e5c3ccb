#pragma once

#include "l0lms/algorithms/params.hpp"

namespace l0lms::algorithms {

/// sgn with sgn(0) = 0.
constexpr double sign(double t) noexcept {
  return t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0);
}

/// l0 attractor: 2 a^2 t - 2 a sgn(t) inside |t| <= 1/a, zero outside.
inline double l0_attractor(double t, double alpha) noexcept {
  const double mag = t < 0.0 ? -t : t;
  if (mag * alpha > 1.0) return 0.0;
  return 2.0 * alpha * alpha * t - 2.0 * alpha * sign(t);
}

inline double za_attractor(double t) noexcept { return -sign(t); }

inline double rza_attractor(double t, double epsilon) noexcept {
  const double mag = t < 0.0 ? -t : t;
  return -sign(t) / (1.0 + epsilon * mag);
}

/// Zero-point attractor of `variant` evaluated at t (unweighted: kappa/rho
/// are applied by the update, not here).  Throws PreconditionError for
/// plain LMS, which has no attractor.
double attractor(Variant variant, double t, const AlgoParams& params);

}  // namespace l0lms::algorithms
