#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "l0lms/error.hpp"
#include "l0lms/simulation/experiment.hpp"

namespace l0lms::cli {

/// Invalid configuration; the message carries the line when it is known.
class ConfigError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

nlohmann::json spec_to_json(const simulation::ExperimentSpec& spec);

/// Keys mirror the ExperimentSpec fields.  Sweepable fields accept a number
/// or a list; "kappa" also accepts "OPTIMAL" or {"optimal": [multipliers]}.
/// Unknown keys and ill-typed values are errors.  `source` is the raw text
/// the object was parsed from and is only used to locate lines.
simulation::ExperimentSpec spec_from_json(const nlohmann::json& j, std::string_view source = {});

/// Parses a config document: either one spec object or an object with a
/// "specs" list (which is how run manifests store them).
std::vector<simulation::ExperimentSpec> parse_config(std::string_view text);
std::vector<simulation::ExperimentSpec> load_config(const std::filesystem::path& path);

}  // namespace l0lms::cli
