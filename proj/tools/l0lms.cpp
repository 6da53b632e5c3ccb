// Command-line front end: closed-form theory, Monte Carlo runs, the five
// reference experiments and theory-vs-simulation comparison.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "l0lms/cli/compare.hpp"
#include "l0lms/cli/config.hpp"
#include "l0lms/cli/runner.hpp"
#include "l0lms/error.hpp"
#include "l0lms/theory/steady_state.hpp"
#include "l0lms/theory/za_lms.hpp"
#include "l0lms/version.hpp"

namespace {

using namespace l0lms;

enum Exit { kOk = 0, kValidation = 1, kDiverged = 2, kTolerance = 3 };

struct Common {
  std::string preset;
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> iterations;
  double scale = 1.0;
  std::string convention;
  bool quiet = false;
};

void add_common(CLI::App* cmd, Common& c) {
  auto* p = cmd->add_option("--preset", c.preset, "Reference experiment exp1..exp5");
  auto* f = cmd->add_option("--config", c.config, "JSON experiment spec (or a run manifest)");
  p->excludes(f);
  cmd->add_option("--out", c.out, "Output directory (default $L0LMS_OUT_DIR or ./results)");
  cmd->add_option("--seed", c.seed, "Override the seed");
  cmd->add_option("--trials", c.trials, "Override the trial count");
  cmd->add_option("--iterations", c.iterations, "Override the iterations per trial");
  cmd->add_option("--scale", c.scale, "Multiply L, Q and trials");
  cmd->add_option("--snr-convention", c.convention, "output or input");
  cmd->add_flag("--quiet", c.quiet, "No progress messages");
}

int run_grid(const Common& c, cli::Mode mode) {
  std::vector<simulation::ExperimentSpec> specs;
  std::string label;
  if (!c.preset.empty()) {
    specs = cli::preset(c.preset);
    label = c.preset;
  } else if (!c.config.empty()) {
    specs = cli::load_config(c.config);
    label = std::filesystem::path(c.config).stem().string();
  } else {
    throw cli::ConfigError("one of --preset or --config is required");
  }

  cli::RunOptions opt;
  if (!c.out.empty()) {
    opt.out_dir = c.out;
  } else if (const char* env = std::getenv("L0LMS_OUT_DIR"); env && *env) {
    opt.out_dir = env;
  } else {
    opt.out_dir = "results";
  }
  opt.mode = mode;
  opt.seed = c.seed;
  opt.trials = c.trials;
  opt.iterations = c.iterations;
  opt.scale = c.scale;
  if (!c.convention.empty()) opt.convention = theory::parse_snr_convention(c.convention);
  opt.log = c.quiet ? nullptr : &std::cerr;

  const cli::RunManifest m = cli::run(specs, label, opt);
  for (const auto& f : m.outputs) std::cout << (opt.out_dir / f).string() << '\n';
  std::cout << (opt.out_dir / (label + "_manifest.json")).string() << '\n';
  if (m.diverged) {
    std::cerr << "divergence detected; see diverged_trials in the manifest\n";
    return kDiverged;
  }
  return kOk;
}

struct Point {
  std::size_t L = 1000;
  std::size_t Q = 100;
  double mu = 8e-4;
  double alpha = 10.0;
  std::optional<double> kappa;
  double snr_db = 40.0;
  double px = 1.0;
  double sigma_s = 1.0;
};

int theory_point(const Point& p, const std::string& convention_name) {
  const auto convention = convention_name.empty()
                              ? theory::SnrConvention::output_referred
                              : theory::parse_snr_convention(convention_name);
  const double energy = static_cast<double>(p.Q) * p.sigma_s * p.sigma_s;
  const auto signal = theory::SignalModel::from_snr(p.px, p.snr_db, convention, energy);
  const auto profile = theory::SystemProfile::expected(p.L, p.Q, p.alpha, p.sigma_s);
  const auto opt = theory::optimal_kappa_for(profile, p.mu, signal);
  const double kappa = p.kappa ? *p.kappa : opt.kappa_opt;
  const auto params = algorithms::AlgoParams::l0(p.mu, kappa, p.alpha);
  const auto rep = theory::l0_steady_msd(profile, params, signal);

  nlohmann::json j;
  j["L"] = p.L;
  j["Q"] = p.Q;
  j["mu"] = p.mu;
  j["mu_max"] = theory::mu_max(p.L, p.px);
  j["alpha"] = p.alpha;
  j["px"] = p.px;
  j["pv"] = signal.pv;
  j["snr_db"] = p.snr_db;
  j["convention"] = std::string(theory::to_string(convention));
  j["G"] = profile.strengths.G;
  j["G_prime"] = profile.strengths.G_prime;
  j["betas"] = {rep.betas.beta0, rep.betas.beta1, rep.betas.beta2, rep.betas.beta3};
  j["kappa"] = kappa;
  j["omega"] = rep.omega;
  j["msd_l0lms"] = rep.d_inf;
  j["msd_lms"] = rep.d_lms;
  j["kappa_opt"] = opt.kappa_opt;
  j["msd_min"] = opt.d_min;
  j["kappa_outperform_bound"] = opt.kappa_outperform_bound;
  const auto sparse = theory::approx_min_msd(theory::ApproxMode::sparse, profile, p.mu, signal);
  j["msd_min_sparse_approx"] = sparse.d_min;
  if (p.Q < p.L) {
    const double rho = theory::za_optimal_rho(p.L, p.Q, p.mu, p.px, signal.pv);
    j["za_rho_opt"] = rho;
    j["msd_za_at_rho_opt"] = theory::za_steady_msd(p.L, p.Q, p.mu, rho, p.px, signal.pv).d_inf_za;
  }
  auto warnings = rep.warnings;
  warnings.insert(warnings.end(), sparse.warnings.begin(), sparse.warnings.end());
  j["warnings"] = warnings;
  std::cout << j.dump(2) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"l0-LMS sparse adaptive filtering: theory, simulation and experiments"};
  app.set_version_flag("--version", std::string(l0lms::kVersion));
  app.require_subcommand(1);

  Common theory_opts, sim_opts, exp_opts;
  Point point;
  auto* theory = app.add_subcommand("theory", "Closed-form theory for a point or a grid");
  add_common(theory, theory_opts);
  theory->add_option("--L", point.L, "Filter length");
  theory->add_option("--Q", point.Q, "Non-zero taps");
  theory->add_option("--mu", point.mu, "Step size");
  theory->add_option("--alpha", point.alpha, "Attraction range reciprocal");
  theory->add_option("--kappa", point.kappa, "Attraction weight (default kappa_opt)");
  theory->add_option("--snr-db", point.snr_db, "SNR in dB");
  theory->add_option("--px", point.px, "Input power");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo runs for a grid");
  add_common(simulate, sim_opts);
  auto* experiment = app.add_subcommand("experiment", "Theory and simulation for a grid");
  add_common(experiment, exp_opts);

  std::string theory_csv, sim_csv;
  double tolerance_db = 1.0;
  auto* cmp = app.add_subcommand("compare", "Gap between a theory and a simulation CSV");
  cmp->add_option("theory_csv", theory_csv, "CSV providing msd_theory")->required();
  cmp->add_option("sim_csv", sim_csv, "CSV providing msd_sim")->required();
  cmp->add_option("--tolerance-db", tolerance_db, "Largest accepted |gap| in dB");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (theory->parsed()) {
      if (theory_opts.preset.empty() && theory_opts.config.empty()) {
        return theory_point(point, theory_opts.convention);
      }
      return run_grid(theory_opts, l0lms::cli::Mode::theory);
    }
    if (simulate->parsed()) return run_grid(sim_opts, l0lms::cli::Mode::simulate);
    if (experiment->parsed()) return run_grid(exp_opts, l0lms::cli::Mode::experiment);
    if (cmp->parsed()) {
      const auto report = l0lms::cli::compare(l0lms::cli::read_csv(theory_csv),
                                              l0lms::cli::read_csv(sim_csv), tolerance_db);
      l0lms::cli::print_report(std::cout, report);
      return report.pass ? kOk : kTolerance;
    }
  } catch (const l0lms::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kOk;
}
