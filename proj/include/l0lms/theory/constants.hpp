#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "l0lms/algorithms/params.hpp"

namespace l0lms::theory {

struct DeltaSet {
  double delta_L;        // 2 - (L+2) mu Px
  double delta_Q;        // 2 - (Q+2) mu Px
  double delta_0;        // 1 - mu Px
  double delta_0_prime;  // 2 - mu Px
};

DeltaSet deltas(std::size_t L, std::size_t Q, double mu, double px);

/// Upper end of the stable step-size interval, 2 / ((L+2) Px).
double mu_max(std::size_t L, double px);

/// Partition of tap indices by |s_k| against the attraction range 1/alpha.
struct TapClassification {
  std::vector<std::size_t> large;  // |s_k| >= 1/alpha
  std::vector<std::size_t> small;  // 0 < |s_k| < 1/alpha
  std::vector<std::size_t> zero;   // s_k == 0
};

TapClassification classify(std::span<const double> s, double alpha);

/// G = sum g^2(s_k) and G' = sum s_k g(s_k) over the small coefficients.
struct AttractionStrengths {
  double G = 0.0;
  double G_prime = 0.0;
};

AttractionStrengths strengths(std::span<const double> s, double alpha);

/// Strengths averaged over a system whose Q non-zero taps are i.i.d.
/// N(0, sigma_s^2): Q E[g^2(S) 1{|S|<1/alpha}] and Q E[S g(S) 1{|S|<1/alpha}],
/// by composite Gauss-Legendre quadrature.
AttractionStrengths expected_strengths(std::size_t Q, double alpha, double sigma_s = 1.0);

/// What the theory needs to know about the unknown system: its size, the
/// attraction strengths at a given alpha, and ||s||^2.  `coefficients` is
/// empty when the profile describes a random system by expectation.
struct SystemProfile {
  std::size_t length = 0;
  std::size_t support = 0;
  double alpha = 1.0;
  AttractionStrengths strengths;
  double energy = 0.0;
  std::vector<double> coefficients;

  static SystemProfile exact(const algorithms::SparseSystem& system, double alpha);
  static SystemProfile expected(std::size_t L, std::size_t Q, double alpha,
                                double sigma_s = 1.0);
  /// Same system seen with another attraction range.
  SystemProfile with_alpha(double alpha, double sigma_s = 1.0) const;
};

struct BetaSet {
  double beta0, beta1, beta2, beta3;
};

/// Throws DegenerateError when beta0 <= 0 (beta3 undefined).
BetaSet betas(const DeltaSet& d, const AttractionStrengths& st, std::size_t L, std::size_t Q,
              double mu, double alpha, double px, double pv);

struct EtaSet {
  double eta0, eta1, eta2, eta3, eta4, eta5, eta6;
};

EtaSet etas(const DeltaSet& d, const AttractionStrengths& st, std::size_t L, std::size_t Q,
            double mu, double alpha, double px, double pv);

}  // namespace l0lms::theory
