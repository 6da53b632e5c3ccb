#include "l0lms/theory/signal_model.hpp"

#include <cmath>
#include <string>

#include "l0lms/error.hpp"

namespace l0lms::theory {

std::string_view to_string(SnrConvention c) noexcept {
  return c == SnrConvention::output_referred ? "output" : "input";
}

SnrConvention parse_snr_convention(std::string_view name) {
  if (name == "output" || name == "output_referred" || name == "OUTPUT_REFERRED") {
    return SnrConvention::output_referred;
  }
  if (name == "input" || name == "input_referred" || name == "INPUT_REFERRED") {
    return SnrConvention::input_referred;
  }
  throw PreconditionError("unknown SNR convention '" + std::string(name) +
                          "' (expected 'output' or 'input')");
}

double noise_power(double px, double snr_db, SnrConvention convention, double system_energy) {
  const double scale = std::pow(10.0, -snr_db / 10.0);
  if (convention == SnrConvention::input_referred) return px * scale;
  return px * system_energy * scale;
}

SignalModel SignalModel::from_snr(double px, double snr_db, SnrConvention convention,
                                  double system_energy) {
  return {px, noise_power(px, snr_db, convention, system_energy), snr_db, convention};
}

void SignalModel::validate(double system_energy) const {
  if (!(std::isfinite(px) && px > 0.0)) throw PreconditionError("Px must be finite and > 0");
  if (!(std::isfinite(pv) && pv > 0.0)) throw PreconditionError("Pv must be finite and > 0");
  if (snr_db) {
    const double expect = noise_power(px, *snr_db, convention, system_energy);
    if (std::abs(expect - pv) > 1e-12 * expect) {
      throw PreconditionError("Pv does not match the stored SNR under the " +
                              std::string(to_string(convention)) + "-referred convention");
    }
  }
}

}  // namespace l0lms::theory
