#include "l0lms/theory/transient.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "l0lms/algorithms/attractor.hpp"
#include "l0lms/error.hpp"
#include "l0lms/theory/steady_state.hpp"

namespace l0lms::theory {

namespace {

const double kSqrt8OverPi = std::sqrt(8.0 / std::numbers::pi);
constexpr double kModeSeparation = 1e-12;
constexpr double kMaxCondition = 1e12;

double kappa_of(const algorithms::AlgoParams& p) {
  if (p.variant == algorithms::Variant::l0lms) return p.kappa;
  if (p.variant == algorithms::Variant::lms) return 0.0;
  throw PreconditionError("l0-LMS learning-curve model requires variant l0lms or lms");
}

double condition_2x2(double l1, double l2) {
  // Singular values of [[1, 1], [l1, l2]].
  const double fro2 = 2.0 + l1 * l1 + l2 * l2;
  const double det = std::abs(l2 - l1);
  const double spread = std::sqrt(std::max(0.0, fro2 * fro2 - 4.0 * det * det));
  const double smax2 = 0.5 * (fro2 + spread);
  const double smin2 = det * det / smax2;
  return smin2 > 0.0 ? std::sqrt(smax2 / smin2) : INFINITY;
}

}  // namespace

double ConvergenceModel::msd(std::size_t n) const {
  const double k = static_cast<double>(n);
  return c1 * std::pow(lambda1, k) + c2 * std::pow(lambda2, k) + c3 * std::pow(lambda3, k) + d_inf;
}

std::pair<double, double> ConvergenceModel::forcing(std::size_t n) const {
  return {b00_hat + b01_hat * std::pow(lambda3, static_cast<double>(n)), b1_hat};
}

ConvergenceModel convergence_model(const SystemProfile& profile,
                                   const algorithms::AlgoParams& params,
                                   const SignalModel& signal) {
  params.validate();
  const double kappa = kappa_of(params);
  const std::size_t L = profile.length;
  const std::size_t Q = profile.support;
  const double mu = params.mu;
  const double px = signal.px;
  const double pv = signal.pv;
  const double alpha = profile.alpha;
  const double G = profile.strengths.G;
  const double Gp = profile.strengths.G_prime;
  require_stable(L, mu, px);

  const DeltaSet d = deltas(L, Q, mu, px);
  const double mp = mu * px;
  const double m2 = mp * mp;
  const double free_taps = static_cast<double>(L - Q);

  ConvergenceModel m{};
  m.omega = solve_omega(d, profile.strengths, L, Q, mu, kappa, alpha, px, pv);
  m.d0 = profile.energy;
  m.d_inf = steady_msd_omega_form(d, profile.strengths, L, Q, mu, kappa, px, pv, m.omega);

  const double shrink = kappa == 0.0 ? 0.0 : kSqrt8OverPi * alpha * kappa / m.omega * d.delta_0;
  m.a00 = 1.0 - mp * d.delta_L;
  m.a01 = -shrink;
  m.a10 = free_taps * m2;
  m.a11 = 1.0 - 2.0 * mp * d.delta_0 - shrink;

  const double zero_tap_drive =
      4.0 * alpha * alpha * kappa * kappa - kSqrt8OverPi * alpha * kappa * m.omega * d.delta_0;
  m.b00_hat = static_cast<double>(L) * mu * mp * pv + free_taps * zero_tap_drive +
              kappa * kappa * d.delta_0_prime * G / mp;
  m.b01_hat = -2.0 * kappa * d.delta_0 * (kappa * G + mp * Gp) / mp;
  m.b1_hat = free_taps * (mu * mp * pv + zero_tap_drive);

  // (a00 - a11)^2 + 4 a01 a10 = (L m2 - shrink)^2 + 4 shrink Q m2 >= 0
  const double lm = static_cast<double>(L) * m2;
  const double disc = (lm - shrink) * (lm - shrink) + 4.0 * shrink * static_cast<double>(Q) * m2;
  const double mid = 0.5 * (m.a00 + m.a11);
  const double half = 0.5 * std::sqrt(disc);
  m.lambda1 = mid - half;
  m.lambda2 = mid + half;
  m.lambda3 = d.delta_0;

  if (std::abs(m.lambda2 - m.lambda1) < kModeSeparation ||
      std::abs(m.lambda1 - m.lambda3) < kModeSeparation ||
      std::abs(m.lambda2 - m.lambda3) < kModeSeparation) {
    std::ostringstream os;
    os.precision(17);
    os << "coincident modes (" << m.lambda1 << ", " << m.lambda2 << ", " << m.lambda3
       << "); use lemma_recursion instead";
    throw DegenerateError(os.str());
  }

  const double det3 = (m.lambda3 - m.a00) * (m.lambda3 - m.a11) - m.a01 * m.a10;
  m.c3 = -2.0 * kappa * d.delta_0 * (mp - 2.0 * m2 + shrink) * (kappa * G + mp * Gp) / (mp * det3);

  const double d1 = m.a00 * m.d0 + m.b00_hat + m.b01_hat;
  const double r0 = m.d0 - m.d_inf - m.c3;
  const double r1 = d1 - m.d_inf - m.c3 * m.lambda3;
  m.condition_number = condition_2x2(m.lambda1, m.lambda2);
  if (m.condition_number > kMaxCondition) {
    throw DegenerateError("mode coefficients are ill-conditioned (condition number " +
                          std::to_string(m.condition_number) + "); use lemma_recursion instead");
  }
  m.c2 = (r1 - m.lambda1 * r0) / (m.lambda2 - m.lambda1);
  m.c1 = r0 - m.c2;
  return m;
}

std::vector<RecursionPoint> lemma_recursion(const SystemProfile& profile,
                                            const algorithms::AlgoParams& params,
                                            const SignalModel& signal, std::size_t n_max) {
  params.validate();
  const double kappa = kappa_of(params);
  const std::size_t L = profile.length;
  const std::size_t Q = profile.support;
  const double mu = params.mu;
  const double px = signal.px;
  const double pv = signal.pv;
  const double alpha = profile.alpha;
  const double G = profile.strengths.G;
  const double Gp = profile.strengths.G_prime;
  const DeltaSet d = deltas(L, Q, mu, px);
  const double omega = solve_omega(d, profile.strengths, L, Q, mu, kappa, alpha, px, pv);

  const double mp = mu * px;
  const double ratio = kappa == 0.0 ? 0.0 : alpha * kappa / omega;
  const double a00 = 1.0 - mp * d.delta_L;
  const double a01 = -kSqrt8OverPi * ratio * d.delta_0;
  const double a10 = static_cast<double>(L - Q) * mu * mu * px * px;
  const double a11 = 1.0 - 2.0 * mp * d.delta_0 - kSqrt8OverPi * ratio * d.delta_0;

  std::vector<RecursionPoint> out;
  out.reserve(n_max + 1);
  double dn = profile.energy;
  double on = 0.0;
  double decay = d.delta_0;  // delta_0^(n+1)
  for (std::size_t n = 0;; ++n) {
    out.push_back({dn, on});
    if (n == n_max) break;
    const double b0 = static_cast<double>(L) * mu * mu * px * pv +
                      static_cast<double>(L - Q) *
                          (4.0 * alpha * alpha * kappa * kappa -
                           kSqrt8OverPi * alpha * kappa * omega * d.delta_0) +
                      kappa * kappa * (d.delta_0_prime - 2.0 * decay) * G / mp -
                      2.0 * kappa * decay * Gp;
    const double b1 = static_cast<double>(L - Q) *
                      (mu * mu * px * pv + 4.0 * alpha * alpha * kappa * kappa -
                       kSqrt8OverPi * alpha * kappa * omega * d.delta_0);
    const double next_d = a00 * dn + a01 * on + b0;
    const double next_o = a10 * dn + a11 * on + b1;
    dn = next_d;
    on = next_o;
    decay *= d.delta_0;
  }
  return out;
}

double sc_mean_curve(double s_k, std::size_t n, double mu, double kappa, double alpha,
                     double px) {
  const double mp = mu * px;
  const double pull = kappa * algorithms::l0_attractor(s_k, alpha);
  return pull / mp - (mp * s_k + pull) / mp * std::pow(1.0 - mp, static_cast<double>(n));
}

AccelerationReport acceleration_check(const ConvergenceModel& model,
                                      const algorithms::AlgoParams& params, double px,
                                      std::size_t L, const TapClassification& classification) {
  AccelerationReport r;
  const double limit = mu_max(L, px);
  r.sufficient_mu = params.mu > 0.5 * limit && params.mu < limit;
  r.sufficient_cs_empty = classification.small.empty();
  r.lms_rate = model.a00;

  const double scale = std::abs(model.c1) + std::abs(model.c2) + std::abs(model.c3);
  const double cutoff = 1e-12 * scale;
  const std::pair<double, double> modes[] = {
      {model.c1, model.lambda1}, {model.c2, model.lambda2}, {model.c3, model.lambda3}};
  for (const auto& [c, lambda] : modes) {
    if (std::abs(c) > cutoff) r.l0_rate = std::max(r.l0_rate, std::abs(lambda));
  }
  // Rounding in the eigenvalues must not count as acceleration.
  r.actual_faster = r.l0_rate < r.lms_rate * (1.0 - 1e-12);
  return r;
}

}  // namespace l0lms::theory
