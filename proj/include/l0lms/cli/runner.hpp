#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "l0lms/cli/manifest.hpp"
#include "l0lms/simulation/experiment.hpp"

namespace l0lms::cli {

enum class Mode { theory, simulate, experiment };

std::string_view to_string(Mode m) noexcept;

struct RunOptions {
  std::filesystem::path out_dir = ".";
  Mode mode = Mode::experiment;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> iterations;
  /// Multiplies L, Q and trials.
  double scale = 1.0;
  std::optional<theory::SnrConvention> convention;
  /// Learning curves are written at about this many iterations.
  std::size_t curve_points = 2000;
  /// Progress messages; silent when null.
  std::ostream* log = nullptr;
};

std::vector<std::string> preset_names();

/// Parameter grids of the five reference experiments.  Throws ConfigError
/// "unknown preset" for any other name.
std::vector<simulation::ExperimentSpec> preset(std::string_view name);

/// Applies scale, then the explicit seed, trials, iterations and convention.
simulation::ExperimentSpec apply_options(simulation::ExperimentSpec spec, const RunOptions& opt);

/// Evaluates every spec (theory, simulation or both), writes one CSV per
/// sweep or learning curve plus `<label>_manifest.json` into opt.out_dir,
/// and returns the manifest.
RunManifest run(const std::vector<simulation::ExperimentSpec>& specs, const std::string& label,
                const RunOptions& opt);

/// `<name>_<snr>dB_<quantity>.csv`
std::string output_name(std::string_view name, double snr_db, std::string_view quantity);

}  // namespace l0lms::cli
