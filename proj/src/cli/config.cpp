#include "l0lms/cli/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace l0lms::cli {

using nlohmann::json;
using simulation::ExperimentSpec;

namespace {

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n'));
}

std::string where(std::string_view source, const std::string& key) {
  if (source.empty()) return {};
  const auto pos = source.find("\"" + key + "\"");
  if (pos == std::string_view::npos) return {};
  return "line " + std::to_string(line_of_offset(source, pos)) + ": ";
}

[[noreturn]] void fail(std::string_view source, const std::string& key, const std::string& msg) {
  throw ConfigError(where(source, key) + "'" + key + "': " + msg);
}

double as_real(const json& v, std::string_view src, const std::string& key) {
  if (!v.is_number()) fail(src, key, "expected a number");
  return v.get<double>();
}

std::uint64_t as_count(const json& v, std::string_view src, const std::string& key) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
  fail(src, key, "expected a non-negative integer");
}

std::vector<double> as_reals(const json& v, std::string_view src, const std::string& key) {
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) fail(src, key, "expected a number or a list of numbers");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(as_real(e, src, key));
  return out;
}

std::vector<std::size_t> as_counts(const json& v, std::string_view src, const std::string& key) {
  if (!v.is_array()) return {static_cast<std::size_t>(as_count(v, src, key))};
  std::vector<std::size_t> out;
  for (const auto& e : v) out.push_back(static_cast<std::size_t>(as_count(e, src, key)));
  return out;
}

std::string as_string(const json& v, std::string_view src, const std::string& key) {
  if (!v.is_string()) fail(src, key, "expected a string");
  return v.get<std::string>();
}

}  // namespace

json spec_to_json(const ExperimentSpec& s) {
  json j;
  j["name"] = s.name;
  j["L"] = s.L;
  j["Q"] = s.Q;
  j["mu"] = s.mu;
  j["alpha"] = s.alpha;
  if (s.kappa_optimal) {
    j["kappa"] = json{{"optimal", s.kappa}};
  } else {
    j["kappa"] = s.kappa;
  }
  j["snr_db"] = s.snr_db;
  j["trials"] = s.trials;
  j["iterations"] = s.iterations;
  j["seed"] = s.seed;
  json variants = json::array();
  for (auto v : s.variants) variants.push_back(std::string(algorithms::to_string(v)));
  j["variants"] = variants;
  j["px"] = s.px;
  j["sigma_s"] = s.sigma_s;
  j["convention"] = std::string(theory::to_string(s.convention));
  if (s.rho) j["rho"] = *s.rho;
  if (s.epsilon) j["epsilon"] = *s.epsilon;
  j["quantity"] = std::string(simulation::to_string(s.quantity));
  j["threads"] = s.threads;
  return j;
}

ExperimentSpec spec_from_json(const json& j, std::string_view src) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  static const std::set<std::string> known = {
      "name",   "L",       "Q",          "mu",  "alpha",   "kappa",    "snr_db",
      "trials", "iterations", "seed",    "variants", "px", "sigma_s", "convention",
      "rho",    "epsilon", "quantity",   "threads"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) fail(src, key, "unknown key");
  }

  ExperimentSpec s;
  if (j.contains("name")) s.name = as_string(j["name"], src, "name");
  if (j.contains("L")) s.L = static_cast<std::size_t>(as_count(j["L"], src, "L"));
  if (j.contains("Q")) s.Q = as_counts(j["Q"], src, "Q");
  if (j.contains("mu")) s.mu = as_reals(j["mu"], src, "mu");
  if (j.contains("alpha")) s.alpha = as_reals(j["alpha"], src, "alpha");
  if (j.contains("kappa")) {
    const json& k = j["kappa"];
    if (k.is_string()) {
      if (k.get<std::string>() != "OPTIMAL") fail(src, "kappa", "the only string value is \"OPTIMAL\"");
      s.kappa_optimal = true;
      s.kappa = {1.0};
    } else if (k.is_object()) {
      if (k.size() != 1 || !k.contains("optimal")) {
        fail(src, "kappa", "object form is {\"optimal\": [multipliers]}");
      }
      s.kappa_optimal = true;
      s.kappa = as_reals(k["optimal"], src, "kappa");
    } else {
      s.kappa_optimal = false;
      s.kappa = as_reals(k, src, "kappa");
    }
  }
  if (j.contains("snr_db")) s.snr_db = as_reals(j["snr_db"], src, "snr_db");
  if (j.contains("trials")) s.trials = static_cast<std::size_t>(as_count(j["trials"], src, "trials"));
  if (j.contains("iterations")) {
    s.iterations = static_cast<std::size_t>(as_count(j["iterations"], src, "iterations"));
  }
  if (j.contains("seed")) s.seed = as_count(j["seed"], src, "seed");
  if (j.contains("variants")) {
    const json& v = j["variants"];
    s.variants.clear();
    try {
      if (v.is_string()) {
        s.variants.push_back(algorithms::parse_variant(v.get<std::string>()));
      } else if (v.is_array()) {
        for (const auto& e : v) s.variants.push_back(algorithms::parse_variant(as_string(e, src, "variants")));
      } else {
        fail(src, "variants", "expected a name or a list of names");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      fail(src, "variants", e.what());
    }
  }
  if (j.contains("px")) s.px = as_real(j["px"], src, "px");
  if (j.contains("sigma_s")) s.sigma_s = as_real(j["sigma_s"], src, "sigma_s");
  if (j.contains("convention")) {
    try {
      s.convention = theory::parse_snr_convention(as_string(j["convention"], src, "convention"));
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      fail(src, "convention", e.what());
    }
  }
  if (j.contains("rho")) s.rho = as_real(j["rho"], src, "rho");
  if (j.contains("epsilon")) s.epsilon = as_real(j["epsilon"], src, "epsilon");
  if (j.contains("quantity")) {
    try {
      s.quantity = simulation::parse_quantity(as_string(j["quantity"], src, "quantity"));
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      fail(src, "quantity", e.what());
    }
  }
  if (j.contains("threads")) s.threads = static_cast<unsigned>(as_count(j["threads"], src, "threads"));

  try {
    s.validate();
  } catch (const Error& e) {
    // Messages start with the field name.
    const std::string msg = e.what();
    const std::string key = msg.substr(0, msg.find(':'));
    throw ConfigError(where(src, key) + msg);
  }
  return s;
}

std::vector<ExperimentSpec> parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError("line " + std::to_string(line_of_offset(text, e.byte ? e.byte - 1 : 0)) +
                      ": malformed JSON (" + e.what() + ")");
  }
  if (j.is_object() && j.contains("specs")) {
    if (!j["specs"].is_array()) fail(text, "specs", "expected a list of specs");
    std::vector<ExperimentSpec> out;
    for (const auto& e : j["specs"]) out.push_back(spec_from_json(e, text));
    if (out.empty()) fail(text, "specs", "list is empty");
    return out;
  }
  return {spec_from_json(j, text)};
}

std::vector<ExperimentSpec> load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace l0lms::cli
