#include "l0lms/theory/za_lms.hpp"

#include <cmath>
#include <numbers>

#include "l0lms/error.hpp"
#include "l0lms/theory/constants.hpp"
#include "l0lms/theory/steady_state.hpp"

namespace l0lms::theory {

namespace {
constexpr double kPi = std::numbers::pi;
}

ZASteadyReport za_steady_msd(std::size_t L, std::size_t Q, double mu, double rho, double px,
                             double pv) {
  require_stable(L, mu, px);
  if (!(rho >= 0.0)) throw PreconditionError("rho must be >= 0");
  const DeltaSet d = deltas(L, Q, mu, px);
  const double mp = mu * px;
  const double free_taps = static_cast<double>(L - Q);
  const double q = static_cast<double>(Q);
  const double len = static_cast<double>(L);
  const double d0 = d.delta_0;

  ZASteadyReport r;
  r.gamma = 8.0 * rho * rho * d.delta_Q * d.delta_Q * d0 * d0 / kPi +
            16.0 * mp * d.delta_L * d0 * d0 * (rho * rho * (q + 1.0) + mu * mp * pv);
  if (r.gamma < 0.0) throw PreconditionError("rho outside the range where gamma >= 0");

  const double scale = mp * mp * d.delta_L * d.delta_L;
  r.d_inf_za = -free_taps * rho * std::sqrt(r.gamma) / (std::sqrt(2.0 * kPi) * scale) +
               2.0 * rho * rho * free_taps * d0 * d.delta_Q / (kPi * scale) +
               (rho * rho * (mu * len * px + 2.0 * q * d0) + len * mu * mu * mu * px * px * pv) /
                   (mp * mp * d.delta_L);

  // Independent route: positive root y of
  //   DL y^2 + (L-Q) rho sqrt(2 D0 / pi) y - ((L-2Q)/(2 pi) + Q + 1) D0 rho^2 / (mu Px)
  //     - D0^2 rho^2 / (pi mu^2 Px^2) - mu Pv D0 = 0
  const double qa = d.delta_L;
  const double qb = free_taps * rho * std::sqrt(2.0 * d0 / kPi);
  const double qc = -((len - 2.0 * q) / (2.0 * kPi) + q + 1.0) * d0 * rho * rho / mp -
                    d0 * d0 * rho * rho / (kPi * mp * mp) - mu * pv * d0;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0) throw PreconditionError("ZA quadratic has no real root");
  r.y = (-qb + std::sqrt(disc)) / (2.0 * qa);
  r.d_inf_root = 2.0 / mp * (r.y * r.y - (kPi * mp + d0) / (2.0 * kPi * mp * mp) * rho * rho) -
                 pv / px;

  r.rho_opt = za_optimal_rho(L, Q, mu, px, pv);
  return r;
}

double za_optimal_rho(std::size_t L, std::size_t Q, double mu, double px, double pv,
                      double alpha) {
  const DeltaSet d = deltas(L, Q, mu, px);
  const AttractionStrengths st{4.0 * alpha * alpha * static_cast<double>(Q), 0.0};
  const BetaSet b = betas(d, st, L, Q, mu, alpha, px, pv);
  const OptimalKappa opt = optimal_kappa(b, d, L, mu, px, pv);
  return 2.0 * alpha * opt.kappa_opt;
}

}  // namespace l0lms::theory
