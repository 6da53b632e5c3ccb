#pragma once

#include <optional>
#include <string_view>

namespace l0lms::theory {

/// How an SNR in dB maps to the additive-noise power.
///   output_referred: Pv = Px * ||s||^2 * 10^(-snr/10)
///   input_referred:  Pv = Px * 10^(-snr/10)
enum class SnrConvention { output_referred, input_referred };

std::string_view to_string(SnrConvention c) noexcept;
SnrConvention parse_snr_convention(std::string_view name);

double noise_power(double px, double snr_db, SnrConvention convention, double system_energy);

struct SignalModel {
  double px = 1.0;
  double pv = 0.0;
  std::optional<double> snr_db;
  SnrConvention convention = SnrConvention::output_referred;

  /// `system_energy` is ||s||^2, or its expectation Q * sigma_s^2 for a
  /// randomly drawn system.
  static SignalModel from_snr(double px, double snr_db, SnrConvention convention,
                              double system_energy);
  static SignalModel from_powers(double px, double pv) { return {px, pv, std::nullopt}; }

  /// Checks positivity, and that pv agrees with snr_db when one is stored.
  /// `system_energy` is only consulted for the output-referred convention.
  void validate(double system_energy) const;
};

}  // namespace l0lms::theory
