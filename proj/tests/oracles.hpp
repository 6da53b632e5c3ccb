#pragma once

// Independent reference evaluations used by the tests.  Everything here is
// written directly from the defining formulas in long double and shares no
// code with the library.

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

using ld = long double;

constexpr ld kPi = 3.141592653589793238462643383279502884L;

struct Deltas {
  ld L, Q, d0, d0p;
};

inline Deltas deltas(std::size_t L, std::size_t Q, ld mu, ld px) {
  return {2 - (ld(L) + 2) * mu * px, 2 - (ld(Q) + 2) * mu * px, 1 - mu * px, 2 - mu * px};
}

struct Betas {
  ld b0, b1, b2, b3;
};

inline Betas betas(std::size_t L, std::size_t Q, ld mu, ld alpha, ld px, ld pv, ld G) {
  const Deltas d = deltas(L, Q, mu, px);
  const ld LQ = ld(L) - ld(Q);
  Betas b;
  b.b0 = mu * px * d.d0p * d.L * G + 4 * alpha * alpha * d.Q * (mu * px * d.L + d.d0 * d.Q / kPi);
  b.b1 = (d.d0p * G + 4 * LQ * alpha * alpha * (mu * px + 2 * d.d0 * d.Q / (kPi * d.L))) /
         (mu * mu * px * px * d.L);
  b.b2 = 4 * alpha * LQ / (mu * mu * px * px * d.L * d.L) * std::sqrt(d.d0 * b.b0 / kPi);
  b.b3 = 2 * mu * mu * mu * px * px * pv * d.d0 * d.L / b.b0;
  return b;
}

/// D_inf through omega: solve the zero-tap quadratic, then substitute.
inline ld steady_msd_via_omega(std::size_t L, std::size_t Q, ld mu, ld kappa, ld alpha, ld px,
                               ld pv, ld G) {
  const Deltas d = deltas(L, Q, mu, px);
  const ld a = 2 * mu * px * d.d0 * d.L;
  const ld b = 8 * alpha * kappa * d.d0 * d.Q / std::sqrt(2 * kPi);
  const ld c = -(2 * mu * mu * px * pv * d.d0 + 4 * alpha * alpha * kappa * kappa * d.Q +
                 kappa * kappa * d.d0p * G);
  const ld omega = (-b + std::sqrt(b * b - 4 * a * c)) / (2 * a);
  return 2 * (ld(L) - ld(Q)) * d.d0 * omega * omega / d.Q + ld(Q) * mu * pv / d.Q +
         kappa * kappa * d.d0p * G / (mu * mu * px * px * d.Q);
}

/// ZA-LMS steady state through the positive root y of its quadratic.
inline ld za_via_y(std::size_t L, std::size_t Q, ld mu, ld rho, ld px, ld pv) {
  const Deltas d = deltas(L, Q, mu, px);
  const ld mp = mu * px;
  const ld qa = d.L;
  const ld qb = (ld(L) - ld(Q)) * rho * std::sqrt(2 * d.d0 / kPi);
  const ld qc = -((ld(L) - 2 * ld(Q)) / (2 * kPi) + ld(Q) + 1) * d.d0 * rho * rho / mp -
                d.d0 * d.d0 * rho * rho / (kPi * mp * mp) - mu * pv * d.d0;
  const ld y = (-qb + std::sqrt(qb * qb - 4 * qa * qc)) / (2 * qa);
  return 2 / mp * (y * y - (kPi * mp + d.d0) / (2 * kPi * mp * mp) * rho * rho) - pv / px;
}

/// Iterates the coupled (D_n, Omega_n) recursion from (energy, 0) and
/// returns D_0..D_nmax.
inline std::vector<ld> recursion(std::size_t L, std::size_t Q, ld mu, ld kappa, ld alpha, ld px,
                                 ld pv, ld G, ld Gp, ld energy, std::size_t n_max) {
  const Deltas d = deltas(L, Q, mu, px);
  const ld a = 2 * mu * px * d.d0 * d.L;
  const ld b = 8 * alpha * kappa * d.d0 * d.Q / std::sqrt(2 * kPi);
  const ld c = -(2 * mu * mu * px * pv * d.d0 + 4 * alpha * alpha * kappa * kappa * d.Q +
                 kappa * kappa * d.d0p * G);
  const ld omega = (-b + std::sqrt(b * b - 4 * a * c)) / (2 * a);
  const ld mp = mu * px, r8 = std::sqrt(8 / kPi), free = ld(L) - ld(Q);
  const ld shrink = kappa == 0 ? 0 : r8 * alpha * kappa / omega * d.d0;
  std::vector<ld> out{energy};
  ld D = energy, W = 0, decay = d.d0;
  for (std::size_t n = 0; n < n_max; ++n) {
    const ld zero_drive = 4 * alpha * alpha * kappa * kappa - r8 * alpha * kappa * omega * d.d0;
    const ld b0 = ld(L) * mu * mp * pv + free * zero_drive +
                  kappa * kappa * (d.d0p - 2 * decay) * G / mp - 2 * kappa * decay * Gp;
    const ld b1 = free * (mu * mp * pv + zero_drive);
    const ld nd = (1 - mp * d.L) * D - shrink * W + b0;
    const ld nw = free * mp * mp * D + (1 - 2 * mp * d.d0 - shrink) * W + b1;
    D = nd;
    W = nw;
    decay *= d.d0;
    out.push_back(D);
  }
  return out;
}

inline ld lms_steady(std::size_t L, ld mu, ld px, ld pv) {
  return mu * pv * ld(L) / deltas(L, 0, mu, px).L;
}

}  // namespace oracle
