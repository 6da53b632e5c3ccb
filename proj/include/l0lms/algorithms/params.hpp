#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace l0lms::algorithms {

enum class Variant { lms, l0lms, zalms, rzalms };

std::string_view to_string(Variant v) noexcept;
/// Accepts "lms", "l0lms", "zalms", "rzalms" (case-insensitive, '-' ignored).
Variant parse_variant(std::string_view name);

/// Step size plus the attraction controls of each variant.  Fields that do
/// not belong to the selected variant are ignored.
struct AlgoParams {
  Variant variant = Variant::lms;
  double mu = 0.0;
  double kappa = 0.0;    // l0lms
  double alpha = 1.0;    // l0lms, reciprocal of the attraction range
  double rho = 0.0;      // zalms, rzalms
  double epsilon = 1.0;  // rzalms

  /// Throws PreconditionError when a field used by `variant` is out of range.
  void validate() const;

  static AlgoParams lms(double mu) { return {Variant::lms, mu}; }
  static AlgoParams l0(double mu, double kappa, double alpha) {
    AlgoParams p{Variant::l0lms, mu};
    p.kappa = kappa;
    p.alpha = alpha;
    return p;
  }
  static AlgoParams za(double mu, double rho) {
    AlgoParams p{Variant::zalms, mu};
    p.rho = rho;
    return p;
  }
  static AlgoParams rza(double mu, double rho, double epsilon) {
    AlgoParams p{Variant::rzalms, mu};
    p.rho = rho;
    p.epsilon = epsilon;
    return p;
  }
};

/// Unknown FIR response with `support` non-zero taps.
struct SparseSystem {
  std::vector<double> coefficients;
  std::size_t support = 0;

  std::size_t length() const noexcept { return coefficients.size(); }
  double energy() const noexcept;

  /// Builds a system from coefficients, counting the non-zeros.
  static SparseSystem from_coefficients(std::vector<double> s);
};

}  // namespace l0lms::algorithms
