#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "l0lms/algorithms/params.hpp"
#include "l0lms/simulation/monte_carlo.hpp"
#include "l0lms/theory/signal_model.hpp"

namespace l0lms::simulation {

enum class Quantity { steady, curve };

std::string_view to_string(Quantity q) noexcept;
Quantity parse_quantity(std::string_view name);

/// A grid of parameter points.  Every list is a sweep axis; single-element
/// lists are fixed values.
struct ExperimentSpec {
  std::string name = "custom";
  std::size_t L = 1000;
  std::vector<std::size_t> Q{100};
  std::vector<double> mu{8e-4};
  std::vector<double> alpha{10.0};
  /// Absolute kappa values, or multipliers of kappa_opt when kappa_optimal.
  std::vector<double> kappa{1.0};
  bool kappa_optimal = true;
  std::vector<double> snr_db{40.0};
  std::size_t trials = 100;
  /// 0 picks 30 time constants of the slower of LMS and the small-tap mode.
  std::size_t iterations = 0;
  std::uint64_t seed = 1;
  std::vector<algorithms::Variant> variants{algorithms::Variant::l0lms};
  double px = 1.0;
  double sigma_s = 1.0;
  theory::SnrConvention convention = theory::SnrConvention::output_referred;
  /// ZA/RZA weight; unset uses the ZA optimum.
  std::optional<double> rho;
  /// RZA shape parameter; unset follows alpha.
  std::optional<double> epsilon;
  Quantity quantity = Quantity::steady;
  unsigned threads = 0;

  /// Throws PreconditionError naming the offending field.
  void validate() const;

  friend bool operator==(const ExperimentSpec&, const ExperimentSpec&) = default;
};

/// One fully resolved point of an experiment.
struct ResolvedPoint {
  algorithms::Variant variant;
  std::size_t L = 0;
  std::size_t Q = 0;
  double snr_db = 0.0;
  theory::SignalModel signal;
  algorithms::AlgoParams params;
  /// kappa_opt at (Q, mu, alpha); NaN for variants other than l0lms.
  double kappa_opt = 0.0;
  /// Multiplier of kappa_opt; NaN when kappa was given as an absolute value.
  double kappa_multiplier = 0.0;
  SimulationPoint sim;
};

/// Iterations used when the spec leaves them open.
std::size_t preset_iterations(std::size_t L, double mu, double px);

/// Expands the grid in the order snr, Q, mu, variant, alpha, kappa.  LMS and
/// ZA-LMS ignore alpha and kappa and appear once per (snr, Q, mu).  OPTIMAL
/// kappa resolves with expected attracting strengths.  All points share the
/// spec seed, so sweeps use common random numbers.
std::vector<ResolvedPoint> expand(const ExperimentSpec& spec);

}  // namespace l0lms::simulation
