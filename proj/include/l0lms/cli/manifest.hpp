#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "l0lms/algorithms/params.hpp"
#include "l0lms/simulation/experiment.hpp"
#include "l0lms/theory/signal_model.hpp"

namespace l0lms::cli {

/// Parameters of one evaluated point, as actually used.
struct ResolvedEntry {
  std::string file;
  algorithms::Variant variant = algorithms::Variant::lms;
  double snr_db = 0.0;
  double pv = 0.0;
  theory::SnrConvention convention = theory::SnrConvention::output_referred;
  std::size_t L = 0;
  std::size_t Q = 0;
  double mu = 0.0;
  double alpha = 0.0;    // NaN when unused
  double kappa = 0.0;    // NaN when unused
  double kappa_opt = 0.0;
  double rho = 0.0;
  double epsilon = 0.0;
  std::size_t iterations = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t diverged_trials = 0;
  /// Slope test on the steady window; false when not simulated.
  bool converged = false;
  std::string note;

  bool operator==(const ResolvedEntry& o) const;
};

struct RunManifest {
  std::string tool = "l0lms";
  std::string version;
  std::string timestamp;
  std::string label;
  std::string mode;
  double scale = 1.0;
  std::vector<simulation::ExperimentSpec> specs;
  std::vector<ResolvedEntry> resolved;
  /// Emitted CSV files, relative to the output directory.
  std::vector<std::string> outputs;
  bool diverged = false;

  bool operator==(const RunManifest& o) const;
};

nlohmann::json to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);

void write_manifest(const std::filesystem::path& path, const RunManifest& m);
RunManifest read_manifest(const std::filesystem::path& path);

}  // namespace l0lms::cli
