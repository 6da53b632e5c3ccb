#include "l0lms/theory/constants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "l0lms/algorithms/attractor.hpp"
#include "l0lms/error.hpp"
#include "l0lms/theory/quadrature.hpp"

namespace l0lms::theory {

namespace {

constexpr double kPi = std::numbers::pi;

void require_alpha(double alpha) {
  if (!(std::isfinite(alpha) && alpha > 0.0)) throw PreconditionError("alpha must be > 0");
}

const GaussLegendre& rule64() {
  static const GaussLegendre rule(64);
  return rule;
}

}  // namespace

DeltaSet deltas(std::size_t L, std::size_t Q, double mu, double px) {
  if (L < 1 || Q > L) throw PreconditionError("deltas: need L >= 1 and 0 <= Q <= L");
  if (!(mu > 0.0 && px > 0.0)) throw PreconditionError("deltas: need mu > 0 and Px > 0");
  const double mp = mu * px;
  return {2.0 - (static_cast<double>(L) + 2.0) * mp, 2.0 - (static_cast<double>(Q) + 2.0) * mp,
          1.0 - mp, 2.0 - mp};
}

double mu_max(std::size_t L, double px) {
  if (L < 1 || !(px > 0.0)) throw PreconditionError("mu_max: need L >= 1 and Px > 0");
  return 2.0 / ((static_cast<double>(L) + 2.0) * px);
}

TapClassification classify(std::span<const double> s, double alpha) {
  require_alpha(alpha);
  const double range = 1.0 / alpha;
  TapClassification out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double mag = std::abs(s[k]);
    if (mag == 0.0) {
      out.zero.push_back(k);
    } else if (mag >= range) {
      out.large.push_back(k);
    } else {
      out.small.push_back(k);
    }
  }
  return out;
}

AttractionStrengths strengths(std::span<const double> s, double alpha) {
  require_alpha(alpha);
  AttractionStrengths st;
  for (std::size_t k : classify(s, alpha).small) {
    const double g = algorithms::l0_attractor(s[k], alpha);
    st.G += g * g;
    st.G_prime += s[k] * g;
  }
  return st;
}

AttractionStrengths expected_strengths(std::size_t Q, double alpha, double sigma_s) {
  require_alpha(alpha);
  if (!(sigma_s > 0.0)) throw PreconditionError("sigma_s must be > 0");
  if (Q == 0) return {};

  // Both integrands are even in t, so integrate the positive half, where
  // g(t) = 2 a^2 t - 2 a is smooth.  Gaussian mass past 40 sigma is below
  // double precision.
  const double upper = std::min(1.0 / alpha, 40.0 * sigma_s);
  const auto panels = static_cast<std::size_t>(std::ceil(upper / (0.5 * sigma_s)));
  const double norm = 1.0 / (sigma_s * std::sqrt(2.0 * kPi));
  auto pdf = [&](double t) { return norm * std::exp(-0.5 * (t / sigma_s) * (t / sigma_s)); };
  auto g = [&](double t) { return 2.0 * alpha * alpha * t - 2.0 * alpha; };

  const auto& rule = rule64();
  const double e_g2 = 2.0 * rule.integrate([&](double t) { return g(t) * g(t) * pdf(t); }, 0.0,
                                           upper, panels);
  const double e_sg = 2.0 * rule.integrate([&](double t) { return t * g(t) * pdf(t); }, 0.0,
                                           upper, panels);
  const auto q = static_cast<double>(Q);
  return {q * e_g2, q * e_sg};
}

SystemProfile SystemProfile::exact(const algorithms::SparseSystem& system, double alpha) {
  SystemProfile p;
  p.length = system.length();
  p.support = system.support;
  p.alpha = alpha;
  p.strengths = theory::strengths(system.coefficients, alpha);
  p.energy = system.energy();
  p.coefficients = system.coefficients;
  return p;
}

SystemProfile SystemProfile::expected(std::size_t L, std::size_t Q, double alpha,
                                      double sigma_s) {
  if (Q > L) throw PreconditionError("support Q exceeds length L");
  SystemProfile p;
  p.length = L;
  p.support = Q;
  p.alpha = alpha;
  p.strengths = expected_strengths(Q, alpha, sigma_s);
  p.energy = static_cast<double>(Q) * sigma_s * sigma_s;
  return p;
}

SystemProfile SystemProfile::with_alpha(double a, double sigma_s) const {
  if (coefficients.empty()) {
    SystemProfile p = expected(length, support, a, sigma_s);
    p.energy = energy;
    return p;
  }
  return exact(algorithms::SparseSystem{coefficients, support}, a);
}

BetaSet betas(const DeltaSet& d, const AttractionStrengths& st, std::size_t L, std::size_t Q,
              double mu, double alpha, double px, double pv) {
  const double mp = mu * px;
  const double free_taps = static_cast<double>(L - Q);
  const double a2 = alpha * alpha;

  const double beta0 = mp * d.delta_0_prime * d.delta_L * st.G +
                       4.0 * a2 * d.delta_Q * (mp * d.delta_L + d.delta_0 * d.delta_Q / kPi);
  if (!(beta0 > 0.0)) throw DegenerateError("beta0 vanishes; beta3 is undefined");
  const double beta1 = (d.delta_0_prime * st.G +
                        4.0 * free_taps * a2 * (mp + 2.0 * d.delta_0 * d.delta_Q / (kPi * d.delta_L))) /
                       (mp * mp * d.delta_L);
  const double beta2 = 4.0 * alpha * free_taps / (mp * mp * d.delta_L * d.delta_L) *
                       std::sqrt(d.delta_0 * beta0 / kPi);
  const double beta3 = 2.0 * mu * mu * mu * px * px * pv * d.delta_0 * d.delta_L / beta0;
  return {beta0, beta1, beta2, beta3};
}

EtaSet etas(const DeltaSet& d, const AttractionStrengths& st, std::size_t L, std::size_t Q,
            double mu, double alpha, double px, double pv) {
  const double mp = mu * px;
  const double a2 = alpha * alpha;
  const double free_taps = static_cast<double>(L - Q);
  const double len = static_cast<double>(L);
  const BetaSet b = betas(d, st, L, Q, mu, alpha, px, pv);
  EtaSet e{};
  e.eta0 = 16.0 * pv * a2 * d.delta_0 * d.delta_0 / (kPi * mu * px * px * std::pow(d.delta_L, 3));
  e.eta1 = 1.0 / (mp * mp * d.delta_L);
  e.eta2 = free_taps * b.beta0 / (d.delta_L * d.delta_Q);
  e.eta3 = 4.0 * a2 * free_taps * d.delta_0 * d.delta_Q / (kPi * d.delta_L);
  e.eta4 = st.G * d.delta_0_prime * d.delta_L / d.delta_Q;
  // The factor L belongs to the alpha^2 term: this is the form to which
  // eta2 - eta3 + eta4 reduces when Q << L.
  e.eta5 = 4.0 * a2 * mp * len + 2.0 * st.G;
  e.eta6 = 16.0 * a2 * len / (kPi * d.delta_L);
  return e;
}

}  // namespace l0lms::theory
