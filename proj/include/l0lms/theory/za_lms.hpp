#pragma once

#include <cstddef>

namespace l0lms::theory {

struct ZASteadyReport {
  double d_inf_za = 0.0;     // explicit closed form
  double d_inf_root = 0.0;   // same quantity through the positive root y
  double gamma = 0.0;        // discriminant
  double y = 0.0;
  double rho_opt = 0.0;
};

/// Steady-state MSD of ZA-LMS with weight rho.  Throws StabilityError for mu
/// outside (0, mu_max) and PreconditionError for rho < 0 or gamma < 0.
ZASteadyReport za_steady_msd(std::size_t L, std::size_t Q, double mu, double rho, double px,
                             double pv);

/// Optimal ZA weight as the small-alpha limit of 2 alpha kappa_opt(alpha),
/// evaluated at `alpha` with G = 4 alpha^2 Q.
double za_optimal_rho(std::size_t L, std::size_t Q, double mu, double px, double pv,
                      double alpha = 1e-5);

}  // namespace l0lms::theory
