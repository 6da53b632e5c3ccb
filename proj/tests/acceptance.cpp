// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "l0lms/error.hpp"
#include "l0lms/simulation/monte_carlo.hpp"
#include "l0lms/theory/steady_state.hpp"
#include "l0lms/theory/transient.hpp"
#include "l0lms/theory/za_lms.hpp"
#include "oracles.hpp"

using namespace l0lms;
using namespace l0lms::theory;
using algorithms::AlgoParams;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double db_gap(double sim, double theory) { return 10.0 * std::log10(sim / theory); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const SignalModel kExp1Signal =
    SignalModel::from_snr(1.0, 40.0, SnrConvention::output_referred, 100.0);

Outcome kappa_opt_reproduction() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto profile = SystemProfile::expected(1000, 100, 10.0);
  const double k = optimal_kappa_for(profile, 8e-4, kExp1Signal).kappa_opt;
  const double t = seconds_since(t0);
  const auto input = SignalModel::from_snr(1.0, 40.0, SnrConvention::input_referred, 100.0);
  const double k_in = optimal_kappa_for(profile, 8e-4, input).kappa_opt;
  return {rel(k, 3.75e-7) <= 0.1 && t < 1.0,
          fmt("kappa_opt %.4e (input-referred %.4e), %.3f s", k, k_in, t)};
}

Outcome dual_form() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 g(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t L = 10 + g() % 5000, Q = g() % L;
    const double px = 0.2 + 3 * u(g), alpha = std::pow(10.0, -2 + 4 * u(g));
    const double mu = (0.01 + 0.98 * u(g)) * mu_max(L, px);
    const double pv = std::pow(10.0, -5 + 4 * u(g));
    const auto profile = SystemProfile::expected(L, Q, alpha, 0.1 + 3 * u(g));
    const auto signal = SignalModel::from_powers(px, pv);
    const double kopt = optimal_kappa_for(profile, mu, signal).kappa_opt;
    const double kappa = (kopt > 0 ? kopt : 1e-6 * mu) * std::pow(10.0, -3 + 6 * u(g));
    const double beta_form = l0_steady_msd(profile, AlgoParams::l0(mu, kappa, alpha), signal).d_inf;
    const double omega_form = double(
        oracle::steady_msd_via_omega(L, Q, mu, kappa, alpha, px, pv, profile.strengths.G));
    worst = std::max(worst, rel(beta_form, omega_form));
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-9 && t < 5.0, fmt("max relative gap %.2e over 1000 sets, %.2f s", worst, t)};
}

Outcome za_equivalence() {
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const std::size_t L = 10 + g() % 3000, Q = g() % L;
    const double px = 0.5 + u(g), pv = std::pow(10.0, -4 + 3 * u(g));
    const double mu = (0.02 + 0.9 * u(g)) * mu_max(L, px);
    const double rho = std::pow(10.0, -9 + 5 * u(g));
    const double closed = za_steady_msd(L, Q, mu, rho, px, pv).d_inf_za;
    worst = std::max(worst, rel(closed, double(oracle::za_via_y(L, Q, mu, rho, px, pv))));
  }
  // l0-LMS with 2 alpha kappa = rho held fixed as alpha shrinks.
  const double rho = za_optimal_rho(1000, 100, 8e-4, 1.0, 0.01);
  const double za = za_steady_msd(1000, 100, 8e-4, rho, 1.0, 0.01).d_inf_za;
  std::vector<double> gaps;
  for (double alpha : {1e-3, 1e-4, 1e-5}) {
    const auto profile = SystemProfile::expected(1000, 100, alpha);
    const double l0 =
        l0_steady_msd(profile, AlgoParams::l0(8e-4, rho / (2 * alpha), alpha), kExp1Signal).d_inf;
    gaps.push_back(rel(l0, za));
  }
  const bool monotone = gaps[0] >= gaps[1] && gaps[1] >= gaps[2];
  return {worst <= 1e-9 && gaps[2] <= 1e-3 && monotone,
          fmt("closed vs root %.2e; l0 vs ZA gaps %.2e, %.2e, %.2e", worst, gaps[0], gaps[1],
              gaps[2])};
}

Outcome lms_reduction() {
  const auto profile = SystemProfile::expected(1000, 100, 10.0);
  const auto m = convergence_model(profile, AlgoParams::l0(8e-4, 0.0, 10.0), kExp1Signal);
  // The LMS mode is a00; the other eigenvalue of A must carry no weight.
  const bool first_is_lms = std::abs(m.lambda1 - m.a00) < std::abs(m.lambda2 - m.a00);
  const double c_lms = first_is_lms ? m.c1 : m.c2;
  const double c_other = first_is_lms ? m.c2 : m.c1;
  double worst = 0.0;
  for (std::size_t n = 0; n <= 10000; ++n) {
    worst = std::max(worst, rel(m.msd(n), lms_msd_at(n, 1000, 8e-4, 1.0, 0.01, 100.0)));
  }
  const bool zero = std::abs(c_other) <= 1e-12 * std::abs(c_lms) &&
                    std::abs(m.c3) <= 1e-12 * std::abs(c_lms);
  return {zero && worst <= 1e-10,
          fmt("LMS mode is lambda%d; other mode coefficient %.2e, c3 %.2e, LMS coefficient "
              "%.4e; curve gap %.2e",
              first_is_lms ? 1 : 2, c_other, m.c3, c_lms, worst)};
}

struct ModelCase {
  SystemProfile profile;
  AlgoParams params;
  SignalModel signal;
  ConvergenceModel model;
};

std::vector<ModelCase> random_models(std::uint64_t seed, std::size_t count, double mu_lo,
                                     double mu_hi) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<ModelCase> out;
  while (out.size() < count) {
    const std::size_t L = 16 + g() % 2000, Q = 1 + g() % (L / 2);
    const double px = 0.5 + u(g), alpha = std::pow(10.0, -0.5 + 2 * u(g));
    const double mu = (mu_lo + (mu_hi - mu_lo) * u(g)) * mu_max(L, px);
    const double pv = std::pow(10.0, -4 + 2 * u(g));
    const auto profile = SystemProfile::expected(L, Q, alpha);
    const auto signal = SignalModel::from_powers(px, pv);
    const double kopt = optimal_kappa_for(profile, mu, signal).kappa_opt;
    if (!(kopt > 0)) continue;
    const auto params = AlgoParams::l0(mu, kopt * std::pow(10.0, -1 + 2 * u(g)), alpha);
    try {
      out.push_back({profile, params, signal, convergence_model(profile, params, signal)});
    } catch (const DegenerateError&) {
    }
  }
  return out;
}

const std::vector<ModelCase>& grid100() {
  static const auto cases = random_models(5, 100, 0.02, 0.95);
  return cases;
}

Outcome closed_vs_recursion() {
  double worst = 0.0;
  for (const auto& c : grid100()) {
    const auto& p = c.profile;
    const auto rec = oracle::recursion(p.length, p.support, c.params.mu, c.params.kappa, p.alpha,
                                       c.signal.px, c.signal.pv, p.strengths.G,
                                       p.strengths.G_prime, p.energy, 5000);
    for (std::size_t n = 0; n <= 5000; ++n) {
      worst = std::max(worst, rel(c.model.msd(n), double(rec[n])));
    }
  }
  return {worst <= 1e-8, fmt("max relative error %.2e over 100 points, n <= 5000", worst)};
}

Outcome spectrum() {
  std::size_t bad = 0;
  for (const auto& c : grid100()) {
    const auto& m = c.model;
    const double mid = 0.5 * (m.a00 + m.a11);
    if (!(m.a11 < m.lambda1 && m.lambda1 <= mid && mid <= m.lambda2 && m.lambda2 < m.a00)) ++bad;
  }
  std::size_t slow = 0;
  for (const auto& c : random_models(6, 50, 0.51, 0.99)) {
    const auto& m = c.model;
    const double lms = 1 - c.params.mu * c.signal.px *
                               deltas(c.profile.length, 0, c.params.mu, c.signal.px).delta_L;
    const double fastest = std::max({std::abs(m.lambda1), std::abs(m.lambda2), std::abs(m.lambda3)});
    if (!(fastest < lms)) ++slow;
  }
  return {bad == 0 && slow == 0,
          fmt("ordering violations %zu/100, large-step rate violations %zu/50", bad, slow)};
}

Outcome monotonicity() {
  const auto signal = SignalModel::from_powers(1.0, 0.01);
  bool q_ok = true;
  double prev = 0.0;
  for (std::size_t Q : {50u, 100u, 200u, 500u, 1000u}) {
    const double d = optimal_kappa_for(SystemProfile::expected(1000, Q, 10.0), 8e-4, signal).d_min;
    q_ok &= d >= prev;
    prev = d;
  }
  // Sparse regime: (Q+2) mu Px / 2 well below one.
  const auto profile = SystemProfile::expected(1000, 100, 10.0);
  const double top = 0.2 / 102.0;
  bool mu_ok = true;
  prev = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double mu = top * std::pow(10.0, -3.0 + 3.0 * i / 19.0);
    const double d = approx_min_msd(ApproxMode::sparse, profile, mu, signal).d_min;
    mu_ok &= d >= prev;
    prev = d;
  }
  const auto empty = SystemProfile::expected(1000, 0, 10.0);
  const double q0 = approx_min_msd(ApproxMode::q0, empty, 8e-4, signal).d_min;
  const double exact = optimal_kappa_for(empty, 8e-4, signal).d_min;
  const double r = rel(q0, exact);
  return {q_ok && mu_ok && r <= 1e-6,
          fmt("d_min vs Q %s; approximation vs mu %s; Q=0 relative gap %.2e",
              q_ok ? "monotone" : "NOT monotone", mu_ok ? "monotone" : "NOT monotone", r)};
}

struct McSetup {
  std::size_t L, Q, trials;
  double snr_db;
};

// Steady and learning-curve gaps for kappa in {0, 0.3, 1, 3} kappa_opt.
Outcome mc_vs_theory(const McSetup& s, double steady_tol, double curve_tol, bool check_curve) {
  const auto t0 = std::chrono::steady_clock::now();
  const double mu = 8e-4, alpha = 10.0;
  const std::size_t iterations = 30000;
  const auto profile = SystemProfile::expected(s.L, s.Q, alpha);
  const auto signal = SignalModel::from_snr(1.0, s.snr_db, SnrConvention::output_referred,
                                            static_cast<double>(s.Q));
  const double kopt = optimal_kappa_for(profile, mu, signal).kappa_opt;
  bool pass = true;
  std::ostringstream os;
  double worst_steady = 0.0;
  for (double m : {0.0, 0.3, 1.0, 3.0}) {
    const auto params = AlgoParams::l0(mu, m * kopt, alpha);
    simulation::SimulationPoint p;
    p.L = s.L;
    p.Q = s.Q;
    p.params = params;
    p.pv = signal.pv;
    p.iterations = iterations;
    p.trials = s.trials;
    p.seed = 1;
    const auto traj = simulation::monte_carlo(p);
    const auto model = convergence_model(profile, params, signal);
    const double steady = db_gap(traj.steady_estimate, model.d_inf);
    double curve = 0.0;
    for (std::size_t n = iterations / 10; n < traj.msd.size(); ++n) {
      curve = std::max(curve, std::abs(db_gap(traj.msd[n], model.msd(n))));
    }
    worst_steady = std::max(worst_steady, std::abs(steady));
    pass &= !traj.diverged && std::abs(steady) <= steady_tol;
    if (check_curve) pass &= curve <= curve_tol;
    os << fmt("\n    %.1f kappa_opt: steady %+.2f dB, curve max %.2f dB", m, steady, curve);
  }
  os << fmt("\n    %.1f s", seconds_since(t0));
  return {pass, fmt("L=%zu Q=%zu %zu trials at %.0f dB, worst steady gap %.2f dB", s.L, s.Q,
                    s.trials, s.snr_db, worst_steady) +
                    os.str()};
}

Outcome monte_carlo_agreement() {
  const auto full = mc_vs_theory({1000, 100, 20, 40.0}, 1.0, 1.5, true);
  const auto quarter = mc_vs_theory({250, 25, 5, 40.0}, 1.0, 1.5, true);
  return {full.pass && quarter.pass,
          "full scale " + std::string(full.pass ? "pass" : "FAIL") + ": " + full.detail +
              "\n  quarter scale " + (quarter.pass ? "pass" : "FAIL") + ": " + quarter.detail};
}

Outcome stability() {
  const std::size_t L = 256;
  const double top = mu_max(L, 1.0);
  auto point = [&](double mu) {
    simulation::SimulationPoint p;
    p.L = L;
    p.Q = 16;
    p.params = AlgoParams::lms(mu);
    p.pv = 16 * 1e-4;
    p.iterations = 200000;
    p.trials = 10;
    p.seed = 1;
    return simulation::monte_carlo(p);
  };
  const auto below = point(0.9 * top);
  const auto above = point(1.1 * top);
  return {below.converged && !below.diverged && above.diverged,
          fmt("0.9 mu_max: converged=%d slope %.1e; 1.1 mu_max: diverged=%d (%zu/10 trials)",
              below.converged, below.steady_slope, above.diverged, above.diverged_trials)};
}

Outcome bias_check() {
  // Small taps inside (0, 1/alpha), large taps outside, zeros elsewhere.
  const double alpha = 10.0, mu = 0.01, kappa = 1e-6;
  std::vector<double> s(16, 0.0);
  s[1] = 0.03;
  s[4] = -0.05;
  s[7] = 0.07;
  s[10] = 1.0;
  s[13] = -0.8;
  const auto sys = algorithms::SparseSystem::from_coefficients(s);
  simulation::SimulationPoint p;
  p.L = 16;
  p.Q = sys.support;
  p.params = AlgoParams::l0(mu, kappa, alpha);
  p.pv = sys.energy() * 1e-4;
  p.iterations = 60000;
  p.trials = 100;
  p.seed = 1;
  p.fixed_system = sys;
  p.mean_weights_from = 10000;

  std::vector<std::vector<double>> per_trial;
  for (std::size_t i = 0; i < p.trials; ++i) {
    per_trial.push_back(simulation::run_trial(sys, p, i).mean_weights);
  }
  const auto expected = steady_bias(s, p.params, 1.0);
  const auto cls = classify(s, alpha);
  bool pass = true;
  std::ostringstream os;
  for (std::size_t k = 0; k < s.size(); ++k) {
    double mean = 0.0, ss = 0.0;
    for (const auto& w : per_trial) mean += w[k] - s[k];
    mean /= double(p.trials);
    for (const auto& w : per_trial) ss += std::pow(w[k] - s[k] - mean, 2);
    const double se = std::sqrt(ss / double(p.trials - 1) / double(p.trials));
    const bool small = std::find(cls.small.begin(), cls.small.end(), k) != cls.small.end();
    if (small) {
      const double r = rel(mean, expected[k]);
      pass &= r <= 0.2;
      os << fmt("\n    tap %zu (small, s=%+.2f): bias %.4e vs %.4e, relative gap %.3f", k, s[k],
                mean, expected[k], r);
    } else {
      pass &= std::abs(mean) < 3 * se;
      if (s[k] != 0.0 || std::abs(mean) >= 2 * se) {
        os << fmt("\n    tap %zu (%s): mean misalignment %.2e, %.2f standard errors", k,
                  s[k] != 0.0 ? "large" : "zero", mean, std::abs(mean) / se);
      }
    }
  }
  return {pass, "small taps within 20%, other taps within 3 standard errors" + os.str()};
}

Outcome low_snr() {
  const auto r = mc_vs_theory({1000, 100, 20, 20.0}, 5.0, 0.0, false);
  return {r.pass, r.detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"kappa_opt reproduction", kappa_opt_reproduction},
      {"dual-form steady state", dual_form},
      {"ZA-LMS equivalence and limit", za_equivalence},
      {"LMS reduction", lms_reduction},
      {"closed form vs recursion", closed_vs_recursion},
      {"spectrum properties", spectrum},
      {"monotonicity", monotonicity},
      {"Monte Carlo vs theory", monte_carlo_agreement},
      {"stability dichotomy", stability},
      {"bias check", bias_check},
      {"low-SNR gap", low_snr},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %2zu %s: %s\n  %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed ? 1 : 0;
}
