#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "l0lms/algorithms/params.hpp"
#include "l0lms/simd/kernels.hpp"

namespace l0lms::simulation {

/// One parameter point of a Monte Carlo run.
struct SimulationPoint {
  std::size_t L = 0;
  std::size_t Q = 0;
  algorithms::AlgoParams params;
  double px = 1.0;
  double pv = 0.0;
  double sigma_s = 1.0;
  std::size_t iterations = 0;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  /// When set, every trial identifies this system; otherwise trial i draws
  /// gen_system(L, Q, seed, i).
  std::optional<algorithms::SparseSystem> fixed_system;
  /// Accumulate the per-tap mean of w_n over n >= this index (the weights
  /// after update n).  Disabled when unset.
  std::optional<std::size_t> mean_weights_from;
  /// Worker threads; 0 uses the hardware concurrency.
  unsigned threads = 0;

  void validate() const;
};

struct TrialResult {
  /// ||w_n - s||^2 for n = 0..iterations; shorter when the trial diverged.
  std::vector<double> squared_deviation;
  bool diverged = false;
  std::vector<double> mean_weights;
};

/// System used by trial `trial_index` of `point`.
algorithms::SparseSystem trial_system(const SimulationPoint& point, std::size_t trial_index);

/// Runs one trial from w_0 = 0.  Input and noise come from streams keyed by
/// (seed, trial_index).  A trial diverges when ||w||^2 exceeds
/// 1e6 max(1, ||s||^2) or turns non-finite; its series stops there.
TrialResult run_trial(const algorithms::SparseSystem& system, const SimulationPoint& point,
                      std::size_t trial_index,
                      const simd::KernelTable& kernels = simd::active());

struct Trajectory {
  std::vector<double> msd;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double steady_estimate = 0.0;
  std::size_t steady_window = 0;
  /// Whether estimate_steady() succeeded on the default window.
  bool converged = false;
  double steady_slope = 0.0;
  bool diverged = false;
  std::size_t diverged_trials = 0;
  /// Mean of each trial's final steady window (for confidence intervals).
  std::vector<double> trial_steady;
  /// Per-tap mean of w over trials and the requested window.
  std::vector<double> mean_weights;

  /// Half-width of the normal 95% interval of steady_estimate over trials.
  double steady_ci95() const;
};

/// Averages run_trial over all trials.  Trials execute in parallel, the mean
/// is reduced in trial order, so the result is bit-identical for any thread
/// count.  Diverged trials are excluded from the mean; when every trial
/// diverges the mean is taken over the common prefix and `diverged` is set.
Trajectory monte_carlo(const SimulationPoint& point);

/// Mean of the last `window` MSD values.  Throws NotConvergedError when the
/// least-squares slope of log MSD over that window has magnitude >= 1e-5 per
/// iteration, and PreconditionError when window is 0 or exceeds the series.
double estimate_steady(const std::vector<double>& msd, std::size_t window);

/// Least-squares slope of log MSD over the last `window` values.
double log_slope(const std::vector<double>& msd, std::size_t window);

/// 10 time constants of LMS, 10 / (mu Px Delta_L), rounded up.
std::size_t default_iterations(std::size_t L, double mu, double px);

/// Final 10% of the run (at least one sample).
std::size_t default_window(std::size_t iterations);

}  // namespace l0lms::simulation
