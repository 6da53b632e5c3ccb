#include "l0lms/cli/manifest.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "l0lms/cli/config.hpp"
#include "l0lms/error.hpp"

namespace l0lms::cli {

using nlohmann::json;

namespace {

// JSON has no NaN; unused parameters are stored as null.
json real(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

double real_from(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

bool same(double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); }

}  // namespace

bool ResolvedEntry::operator==(const ResolvedEntry& o) const {
  return file == o.file && variant == o.variant && same(snr_db, o.snr_db) && same(pv, o.pv) &&
         convention == o.convention && L == o.L && Q == o.Q && same(mu, o.mu) &&
         same(alpha, o.alpha) && same(kappa, o.kappa) && same(kappa_opt, o.kappa_opt) &&
         same(rho, o.rho) && same(epsilon, o.epsilon) && iterations == o.iterations &&
         trials == o.trials && seed == o.seed && diverged_trials == o.diverged_trials &&
         converged == o.converged && note == o.note;
}

bool RunManifest::operator==(const RunManifest& o) const {
  return tool == o.tool && version == o.version && timestamp == o.timestamp &&
         label == o.label && mode == o.mode && scale == o.scale && specs == o.specs &&
         resolved == o.resolved && outputs == o.outputs && diverged == o.diverged;
}

json to_json(const RunManifest& m) {
  json j;
  j["tool"] = m.tool;
  j["version"] = m.version;
  j["timestamp"] = m.timestamp;
  j["label"] = m.label;
  j["mode"] = m.mode;
  j["scale"] = m.scale;
  j["specs"] = json::array();
  for (const auto& s : m.specs) j["specs"].push_back(spec_to_json(s));
  j["resolved"] = json::array();
  for (const auto& r : m.resolved) {
    j["resolved"].push_back({
        {"file", r.file},
        {"variant", std::string(algorithms::to_string(r.variant))},
        {"snr_db", r.snr_db},
        {"pv", r.pv},
        {"convention", std::string(theory::to_string(r.convention))},
        {"L", r.L},
        {"Q", r.Q},
        {"mu", r.mu},
        {"alpha", real(r.alpha)},
        {"kappa", real(r.kappa)},
        {"kappa_opt", real(r.kappa_opt)},
        {"rho", real(r.rho)},
        {"epsilon", real(r.epsilon)},
        {"iterations", r.iterations},
        {"trials", r.trials},
        {"seed", r.seed},
        {"diverged_trials", r.diverged_trials},
        {"converged", r.converged},
        {"note", r.note},
    });
  }
  j["outputs"] = m.outputs;
  j["diverged"] = m.diverged;
  return j;
}

RunManifest manifest_from_json(const json& j) {
  try {
    RunManifest m;
    m.tool = j.at("tool").get<std::string>();
    m.version = j.at("version").get<std::string>();
    m.timestamp = j.at("timestamp").get<std::string>();
    m.label = j.at("label").get<std::string>();
    m.mode = j.at("mode").get<std::string>();
    m.scale = j.at("scale").get<double>();
    for (const auto& s : j.at("specs")) m.specs.push_back(spec_from_json(s));
    for (const auto& e : j.at("resolved")) {
      ResolvedEntry r;
      r.file = e.at("file").get<std::string>();
      r.variant = algorithms::parse_variant(e.at("variant").get<std::string>());
      r.snr_db = e.at("snr_db").get<double>();
      r.pv = e.at("pv").get<double>();
      r.convention = theory::parse_snr_convention(e.at("convention").get<std::string>());
      r.L = e.at("L").get<std::size_t>();
      r.Q = e.at("Q").get<std::size_t>();
      r.mu = e.at("mu").get<double>();
      r.alpha = real_from(e.at("alpha"));
      r.kappa = real_from(e.at("kappa"));
      r.kappa_opt = real_from(e.at("kappa_opt"));
      r.rho = real_from(e.at("rho"));
      r.epsilon = real_from(e.at("epsilon"));
      r.iterations = e.at("iterations").get<std::size_t>();
      r.trials = e.at("trials").get<std::size_t>();
      r.seed = e.at("seed").get<std::uint64_t>();
      r.diverged_trials = e.at("diverged_trials").get<std::size_t>();
      r.converged = e.at("converged").get<bool>();
      r.note = e.at("note").get<std::string>();
      m.resolved.push_back(std::move(r));
    }
    m.outputs = j.at("outputs").get<std::vector<std::string>>();
    m.diverged = j.at("diverged").get<bool>();
    return m;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed manifest: ") + e.what());
  }
}

void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path.string());
  os << to_json(m).dump(2) << '\n';
  if (!os) throw Error("error while writing " + path.string());
}

RunManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot read " + path.string());
  json j;
  try {
    j = json::parse(is);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": malformed JSON (" + e.what() + ")");
  }
  return manifest_from_json(j);
}

}  // namespace l0lms::cli
