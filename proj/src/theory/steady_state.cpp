#include "l0lms/theory/steady_state.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "l0lms/algorithms/attractor.hpp"
#include "l0lms/error.hpp"

namespace l0lms::theory {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFormTolerance = 1e-9;

double kappa_of(const algorithms::AlgoParams& p) {
  switch (p.variant) {
    case algorithms::Variant::l0lms: return p.kappa;
    case algorithms::Variant::lms: return 0.0;
    default: break;
  }
  throw PreconditionError("l0-LMS theory requires variant l0lms or lms");
}

void require_profile_alpha(const SystemProfile& profile, const algorithms::AlgoParams& p) {
  if (p.variant == algorithms::Variant::l0lms &&
      std::abs(profile.alpha - p.alpha) > 1e-12 * std::abs(p.alpha)) {
    throw PreconditionError("system profile strengths were computed for a different alpha");
  }
}

}  // namespace

void require_stable(std::size_t L, double mu, double px) {
  const double limit = mu_max(L, px);
  if (!(mu > 0.0 && mu < limit)) {
    std::ostringstream os;
    os << "step size " << mu << " outside the stable interval (0, " << limit << ")";
    throw StabilityError(os.str());
  }
}

double lms_steady_msd(std::size_t L, double mu, double px, double pv) {
  require_stable(L, mu, px);
  const DeltaSet d = deltas(L, 0, mu, px);
  return mu * pv * static_cast<double>(L) / d.delta_L;
}

double lms_msd_at(std::size_t n, std::size_t L, double mu, double px, double pv, double energy) {
  const double d_inf = lms_steady_msd(L, mu, px, pv);
  const DeltaSet d = deltas(L, 0, mu, px);
  return d_inf + (energy - d_inf) * std::pow(1.0 - mu * px * d.delta_L, static_cast<double>(n));
}

std::vector<std::string> assumption_warnings(const algorithms::AlgoParams& params,
                                             const SignalModel& signal) {
  std::vector<std::string> out;
  if (params.variant == algorithms::Variant::l0lms) {
    const double lhs = 2.0 * params.alpha * params.alpha * params.kappa;
    const double rhs = params.mu * signal.px;
    if (lhs >= 0.1 * rhs) {
      std::ostringstream os;
      os << "small-kappa assumption is weak: 2 alpha^2 kappa = " << lhs << " vs mu Px = " << rhs;
      out.push_back(os.str());
    }
  }
  if (signal.snr_db && *signal.snr_db < 30.0) {
    std::ostringstream os;
    os << "SNR " << *signal.snr_db << " dB is below 30 dB; steady-state theory loses accuracy";
    out.push_back(os.str());
  }
  return out;
}

std::vector<double> steady_bias(std::span<const double> s, const algorithms::AlgoParams& params,
                                double px) {
  std::vector<double> bias(s.size(), 0.0);
  if (params.variant != algorithms::Variant::l0lms || params.kappa == 0.0) return bias;
  const double scale = params.kappa / (params.mu * px);
  for (std::size_t k : classify(s, params.alpha).small) {
    bias[k] = scale * algorithms::l0_attractor(s[k], params.alpha);
  }
  return bias;
}

double solve_omega(const DeltaSet& d, const AttractionStrengths& st, std::size_t L,
                   [[maybe_unused]] std::size_t Q, double mu, double kappa, double alpha, double px, double pv) {
  require_stable(L, mu, px);
  const double a = 2.0 * mu * px * d.delta_0 * d.delta_L;
  const double b = 8.0 * alpha * kappa * d.delta_0 * d.delta_Q / std::sqrt(2.0 * kPi);
  const double c = -(2.0 * mu * mu * px * pv * d.delta_0 + 4.0 * alpha * alpha * kappa * kappa * d.delta_Q +
                     kappa * kappa * d.delta_0_prime * st.G);
  const double disc = b * b - 4.0 * a * c;
  if (!(a > 0.0) || c > 0.0 || disc < 0.0) {
    throw ConsistencyError("omega quadratic has no non-negative root");
  }
  // (-b + sqrt(disc)) / (2a), rewritten to avoid cancellation when b dominates.
  const double root = std::sqrt(disc);
  const double omega = (b + root) > 0.0 ? -2.0 * c / (b + root) : 0.0;
  return omega;
}

double steady_msd_omega_form(const DeltaSet& d, const AttractionStrengths& st, std::size_t L,
                             std::size_t Q, double mu, double kappa, double px, double pv,
                             double omega) {
  const double mp = mu * px;
  return 2.0 * static_cast<double>(L - Q) * d.delta_0 * omega * omega / d.delta_Q +
         static_cast<double>(Q) * mu * pv / d.delta_Q +
         kappa * kappa * d.delta_0_prime * st.G / (mp * mp * d.delta_Q);
}

double steady_msd_beta_form(const BetaSet& b, std::size_t L, double mu, double kappa, double px,
                            double pv) {
  const double d_lms = lms_steady_msd(L, mu, px, pv);
  if (kappa == 0.0) return d_lms;
  // beta1 k^2 - beta2 k sqrt(k^2 + beta3)
  //   = k [ (beta1 - beta2) k - beta2 beta3 / (k + sqrt(k^2 + beta3)) ]
  const double root = std::sqrt(kappa * kappa + b.beta3);
  return d_lms + kappa * ((b.beta1 - b.beta2) * kappa - b.beta2 * b.beta3 / (kappa + root));
}

OptimalKappa optimal_kappa(const BetaSet& b, [[maybe_unused]] const DeltaSet& d, std::size_t L, double mu,
                           double px, double pv) {
  OptimalKappa out;
  const double d_lms = lms_steady_msd(L, mu, px, pv);
  if (b.beta2 <= 0.0 || b.beta1 <= b.beta2) {
    out.d_min = d_lms;
    out.degenerate = true;
    return out;
  }
  const double ratio = (b.beta1 + b.beta2) / (b.beta1 - b.beta2);
  out.kappa_opt = 0.5 * std::sqrt(b.beta3) * (std::pow(ratio, 0.25) - std::pow(ratio, -0.25));
  const double gap = std::sqrt((b.beta1 - b.beta2) * (b.beta1 + b.beta2));
  out.d_min = d_lms + 0.5 * b.beta3 * (gap - b.beta1);
  // The excess over LMS is negative iff kappa^2 < beta2^2 beta3 / (beta1^2 - beta2^2).
  out.kappa_outperform_bound = b.beta2 * std::sqrt(b.beta3) / gap;
  return out;
}

OptimalKappa optimal_kappa_for(const SystemProfile& profile, double mu, const SignalModel& signal) {
  require_stable(profile.length, mu, signal.px);
  const DeltaSet d = deltas(profile.length, profile.support, mu, signal.px);
  const BetaSet b = betas(d, profile.strengths, profile.length, profile.support, mu,
                          profile.alpha, signal.px, signal.pv);
  return optimal_kappa(b, d, profile.length, mu, signal.px, signal.pv);
}

SteadyStateReport l0_steady_msd(const SystemProfile& profile,
                                const algorithms::AlgoParams& params,
                                const SignalModel& signal) {
  params.validate();
  const double kappa = kappa_of(params);
  require_profile_alpha(profile, params);
  const std::size_t L = profile.length;
  const std::size_t Q = profile.support;
  const double mu = params.mu;
  require_stable(L, mu, signal.px);

  const DeltaSet d = deltas(L, Q, mu, signal.px);
  SteadyStateReport r;
  r.betas = betas(d, profile.strengths, L, Q, mu, profile.alpha, signal.px, signal.pv);
  r.omega = solve_omega(d, profile.strengths, L, Q, mu, kappa, profile.alpha, signal.px, signal.pv);
  r.d_inf = steady_msd_beta_form(r.betas, L, mu, kappa, signal.px, signal.pv);
  const double via_omega =
      steady_msd_omega_form(d, profile.strengths, L, Q, mu, kappa, signal.px, signal.pv, r.omega);
  if (std::abs(r.d_inf - via_omega) > kFormTolerance * std::abs(via_omega)) {
    std::ostringstream os;
    os.precision(17);
    os << "steady-state MSD forms disagree: beta form " << r.d_inf << " vs omega form "
       << via_omega;
    throw ConsistencyError(os.str());
  }
  if (!profile.coefficients.empty()) {
    auto p = params;
    p.variant = algorithms::Variant::l0lms;
    p.kappa = kappa;
    r.bias = steady_bias(profile.coefficients, p, signal.px);
  }
  const OptimalKappa opt = optimal_kappa(r.betas, d, L, mu, signal.px, signal.pv);
  r.kappa_opt = opt.kappa_opt;
  r.d_min = opt.d_min;
  r.kappa_outperform_bound = opt.kappa_outperform_bound;
  r.d_lms = lms_steady_msd(L, mu, signal.px, signal.pv);
  r.warnings = assumption_warnings(params, signal);
  return r;
}

ApproxResult approx_min_msd(ApproxMode mode, const SystemProfile& profile, double mu,
                            const SignalModel& signal) {
  const std::size_t L = profile.length;
  const std::size_t Q = profile.support;
  const double px = signal.px;
  const double pv = signal.pv;
  require_stable(L, mu, px);
  const DeltaSet d = deltas(L, Q, mu, px);
  const double d_lms = mu * pv * static_cast<double>(L) / d.delta_L;
  ApproxResult out;

  if (mode == ApproxMode::q0) {
    if (Q != 0) throw PreconditionError("q0 approximation requires an all-zero system (Q = 0)");
    const double d02 = d.delta_0 * d.delta_0;
    out.d_min = d_lms - 2.0 * mu * pv * static_cast<double>(L) * d02 /
                            (2.0 * d.delta_L * d02 + kPi * mu * px * d.delta_L * d.delta_L);
    return out;
  }

  const double sparsity = static_cast<double>(Q) / static_cast<double>(L);
  const double step_ratio = (static_cast<double>(Q) + 2.0) * mu * px / 2.0;
  if (sparsity > 0.1) {
    out.warnings.push_back("Q/L = " + std::to_string(sparsity) + " is not << 1");
  }
  if (step_ratio > 0.1) {
    out.warnings.push_back("(Q+2) mu Px / 2 = " + std::to_string(step_ratio) + " is not << 1");
  }
  const EtaSet e = etas(d, profile.strengths, L, Q, mu, profile.alpha, px, pv);
  const double a2 = profile.alpha * profile.alpha;
  const double root =
      std::sqrt(e.eta5 * e.eta5 + 32.0 * a2 * static_cast<double>(L) / kPi * profile.strengths.G);
  out.d_min = d_lms * (1.0 - e.eta6 / (e.eta5 + e.eta6 + root));
  return out;
}

}  // namespace l0lms::theory
