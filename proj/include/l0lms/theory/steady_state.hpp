#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "l0lms/algorithms/params.hpp"
#include "l0lms/theory/constants.hpp"
#include "l0lms/theory/signal_model.hpp"

namespace l0lms::theory {

/// Throws StabilityError unless 0 < mu < mu_max(L, px).
void require_stable(std::size_t L, double mu, double px);

/// Steady-state MSD of LMS, mu Pv L / Delta_L.
double lms_steady_msd(std::size_t L, double mu, double px, double pv);

/// LMS learning curve at iteration n from w_0 = 0 (energy = ||s||^2).
double lms_msd_at(std::size_t n, std::size_t L, double mu, double px, double pv, double energy);

/// Assumption guardrails: 2 alpha^2 kappa >= 0.1 mu Px, and SNR below 30 dB.
std::vector<std::string> assumption_warnings(const algorithms::AlgoParams& params,
                                             const SignalModel& signal);

/// Steady mean misalignment per tap: kappa g(s_k) / (mu Px) on small
/// coefficients, zero elsewhere.
std::vector<double> steady_bias(std::span<const double> s, const algorithms::AlgoParams& params,
                                double px);

/// Positive root of the zero-coefficient deviation quadratic
///   2 mu Px D0 DL w^2 + 8 a k D0 DQ / sqrt(2 pi) w
///     - 2 mu^2 Px Pv D0 - 4 a^2 k^2 DQ - k^2 D0' G = 0.
/// Throws ConsistencyError if no non-negative root exists.
double solve_omega(const DeltaSet& d, const AttractionStrengths& st, std::size_t L,
                   std::size_t Q, double mu, double kappa, double alpha, double px, double pv);

/// Steady-state MSD written through omega (the oracle form).
double steady_msd_omega_form(const DeltaSet& d, const AttractionStrengths& st, std::size_t L,
                             std::size_t Q, double mu, double kappa, double px, double pv,
                             double omega);

/// Steady-state MSD written through the beta constants.
double steady_msd_beta_form(const BetaSet& b, std::size_t L, double mu, double kappa, double px,
                            double pv);

struct OptimalKappa {
  double kappa_opt = 0.0;
  double d_min = 0.0;
  /// Largest kappa for which l0-LMS beats LMS in steady state.
  double kappa_outperform_bound = 0.0;
  /// True when beta1 == beta2 or beta2 == 0 (no gain possible).
  bool degenerate = false;
};

OptimalKappa optimal_kappa(const BetaSet& b, const DeltaSet& d, std::size_t L, double mu,
                           double px, double pv);

struct SteadyStateReport {
  double omega = 0.0;
  double d_inf = 0.0;
  std::vector<double> bias;  // empty for an expected-strength profile
  double kappa_opt = 0.0;
  double d_min = 0.0;
  double kappa_outperform_bound = 0.0;
  double d_lms = 0.0;
  BetaSet betas{};
  std::vector<std::string> warnings;
};

/// Steady state of l0-LMS (params.variant must be l0lms; params.alpha must
/// match profile.alpha).  Evaluates D_inf through the beta form and checks it
/// against the omega form to relative 1e-9 (ConsistencyError otherwise).
SteadyStateReport l0_steady_msd(const SystemProfile& profile,
                                const algorithms::AlgoParams& params,
                                const SignalModel& signal);

/// kappa_opt for a profile, with the remaining report fields.
OptimalKappa optimal_kappa_for(const SystemProfile& profile, double mu,
                               const SignalModel& signal);

enum class ApproxMode { sparse, q0 };

struct ApproxResult {
  double d_min = 0.0;
  std::vector<std::string> warnings;
};

/// Closed-form approximations of the minimum steady-state MSD:
///   sparse: valid for Q << L and (Q+2) mu Px << 2 (warns past ratio 0.1)
///   q0:     exact for an all-zero system (PreconditionError if Q != 0)
ApproxResult approx_min_msd(ApproxMode mode, const SystemProfile& profile, double mu,
                            const SignalModel& signal);

}  // namespace l0lms::theory
