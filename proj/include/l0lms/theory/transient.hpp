#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "l0lms/algorithms/params.hpp"
#include "l0lms/theory/constants.hpp"
#include "l0lms/theory/signal_model.hpp"

namespace l0lms::theory {

/// Learning-curve model of l0-LMS: the pair (D_n, Omega_n), where Omega_n
/// sums the mean square of the zero-coefficient taps, obeys
///   [D; Omega]_{n+1} = A [D; Omega]_n + b_n,   b_n = [b00 + b01 l3^n; b1],
/// and D_n = c1 l1^n + c2 l2^n + c3 l3^n + d_inf.
struct ConvergenceModel {
  double a00, a01, a10, a11;
  double b00_hat, b01_hat, b1_hat;
  double lambda1, lambda2;  // eigenvalues of A, lambda1 <= lambda2
  double lambda3;           // 1 - mu Px
  double c1, c2, c3;
  double d_inf;
  double d0;     // initial MSD, ||s||^2
  double omega;  // zero-tap steady RMS deviation
  double condition_number;  // of the system fixing c1, c2

  /// Closed-form MSD at iteration n.
  double msd(std::size_t n) const;
  /// b_n of the recursion.
  std::pair<double, double> forcing(std::size_t n) const;
};

/// Builds the model.  Throws StabilityError for mu outside (0, mu_max) and
/// DegenerateError when two modes coincide within 1e-12 or the system fixing
/// c1, c2 has condition number above 1e12; the recursion stays usable then.
ConvergenceModel convergence_model(const SystemProfile& profile,
                                   const algorithms::AlgoParams& params,
                                   const SignalModel& signal);

struct RecursionPoint {
  double d;
  double omega_sum;
};

/// Iterates the (D, Omega) recursion from (||s||^2, 0) for n = 0..n_max,
/// building A and b_n directly from their definitions.
std::vector<RecursionPoint> lemma_recursion(const SystemProfile& profile,
                                            const algorithms::AlgoParams& params,
                                            const SignalModel& signal, std::size_t n_max);

/// Mean misalignment of a small-coefficient tap at iteration n.
double sc_mean_curve(double s_k, std::size_t n, double mu, double kappa, double alpha,
                     double px);

struct AccelerationReport {
  bool sufficient_mu = false;        // mu_max/2 < mu < mu_max
  bool sufficient_cs_empty = false;  // no small coefficients
  bool actual_faster = false;
  double l0_rate = 0.0;   // slowest excited mode of l0-LMS
  double lms_rate = 0.0;  // 1 - mu Px Delta_L
};

AccelerationReport acceleration_check(const ConvergenceModel& model,
                                      const algorithms::AlgoParams& params, double px,
                                      std::size_t L, const TapClassification& classification);

}  // namespace l0lms::theory
