#include "l0lms/simulation/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "l0lms/algorithms/filter.hpp"
#include "l0lms/error.hpp"
#include "l0lms/simulation/rng.hpp"
#include "l0lms/simulation/system.hpp"
#include "l0lms/theory/constants.hpp"

namespace l0lms::simulation {

namespace {

constexpr double kSlopeLimit = 1e-5;
constexpr std::size_t kWindowBlock = 4096;

// Regressor window over the input stream, most recent sample first.  Samples
// are written backwards into a buffer so that the current window is always a
// contiguous span; when the write position reaches the front, the newest L-1
// samples are moved to the back.
class InputWindow {
 public:
  InputWindow(std::size_t length, RandomStream& rng, double scale)
      : length_(length), buf_(length + kWindowBlock), pos_(kWindowBlock), rng_(rng), scale_(scale) {
    // Oldest first, so buf_[pos_] ends up holding x_0.
    for (std::size_t j = length; j-- > 0;) buf_[pos_ + j] = scale_ * rng_.normal();
  }

  std::span<const double> current() const { return {buf_.data() + pos_, length_}; }

  void advance() {
    if (pos_ == 0) {
      std::copy_backward(buf_.begin(), buf_.begin() + static_cast<std::ptrdiff_t>(length_ - 1),
                         buf_.end());
      pos_ = kWindowBlock + 1;
    }
    --pos_;
    buf_[pos_] = scale_ * rng_.normal();
  }

 private:
  std::size_t length_;
  std::vector<double> buf_;
  std::size_t pos_;
  RandomStream& rng_;
  double scale_;
};

}  // namespace

void SimulationPoint::validate() const {
  if (L < 1) throw PreconditionError("simulation: L must be >= 1");
  if (Q > L) throw PreconditionError("simulation: Q must not exceed L");
  if (trials < 1) throw PreconditionError("simulation: trials must be >= 1");
  if (iterations < 1) throw PreconditionError("simulation: iterations must be >= 1");
  if (!(px > 0.0)) throw PreconditionError("simulation: Px must be > 0");
  if (!(pv >= 0.0)) throw PreconditionError("simulation: Pv must be >= 0");
  if (!(sigma_s > 0.0)) throw PreconditionError("simulation: sigma_s must be > 0");
  if (fixed_system && fixed_system->length() != L) {
    throw DimensionError("simulation: fixed system length differs from L");
  }
  if (mean_weights_from && *mean_weights_from > iterations) {
    throw PreconditionError("simulation: mean_weights_from exceeds the iteration count");
  }
  params.validate();
}

algorithms::SparseSystem trial_system(const SimulationPoint& point, std::size_t trial_index) {
  if (point.fixed_system) return *point.fixed_system;
  return gen_system(point.L, point.Q, point.seed, trial_index, point.sigma_s);
}

TrialResult run_trial(const algorithms::SparseSystem& system, const SimulationPoint& point,
                      std::size_t trial_index, const simd::KernelTable& kernels) {
  if (system.length() != point.L) throw DimensionError("run_trial: system length differs from L");
  const std::size_t L = point.L;
  const std::span<const double> s = system.coefficients;
  std::vector<std::size_t> support;
  for (std::size_t k = 0; k < L; ++k) {
    if (s[k] != 0.0) support.push_back(k);
  }

  RandomStream input_rng(point.seed, trial_index, RandomStream::Role::input);
  RandomStream noise_rng(point.seed, trial_index, RandomStream::Role::noise);
  InputWindow window(L, input_rng, std::sqrt(point.px));
  const double noise_scale = std::sqrt(point.pv);

  const double energy = system.energy();
  const double blowup = 1e6 * std::max(1.0, energy);
  // ||w - s|| below this bound guarantees ||w||^2 <= blowup.
  const double safe = std::pow(std::sqrt(blowup) - std::sqrt(energy), 2);

  std::vector<double> w(L, 0.0);
  TrialResult out;
  out.squared_deviation.reserve(point.iterations + 1);
  out.squared_deviation.push_back(energy);
  if (point.mean_weights_from) out.mean_weights.assign(L, 0.0);
  std::size_t averaged = 0;

  for (std::size_t n = 0; n < point.iterations; ++n) {
    if (n > 0) window.advance();
    const std::span<const double> x = window.current();
    double clean = 0.0;
    for (std::size_t k : support) clean += x[k] * s[k];
    const double d = clean + noise_scale * noise_rng.normal();
    algorithms::adapt(w, x, d, point.params, kernels);

    const double dev = kernels.squared_distance(w, s);
    if (!(dev < safe)) {
      const double norm2 = kernels.dot(w, w);
      if (!std::isfinite(dev) || !(norm2 <= blowup)) {
        out.diverged = true;
        break;
      }
    }
    out.squared_deviation.push_back(dev);
    if (point.mean_weights_from && n + 1 >= *point.mean_weights_from) {
      for (std::size_t k = 0; k < L; ++k) out.mean_weights[k] += w[k];
      ++averaged;
    }
  }
  if (averaged > 0) {
    for (double& v : out.mean_weights) v /= static_cast<double>(averaged);
  }
  return out;
}

double Trajectory::steady_ci95() const {
  const std::size_t n = trial_steady.size();
  if (n < 2) return 0.0;
  double mean = 0.0;
  for (double v : trial_steady) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : trial_steady) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  return 1.96 * sd / std::sqrt(static_cast<double>(n));
}

Trajectory monte_carlo(const SimulationPoint& point) {
  point.validate();
  const simd::KernelTable& kernels = simd::active();
  std::vector<TrialResult> results(point.trials);

  unsigned workers = point.threads ? point.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, point.trials));
  auto work = [&](unsigned id) {
    for (std::size_t t = id; t < point.trials; t += workers) {
      results[t] = run_trial(trial_system(point, t), point, t, kernels);
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned id = 0; id < workers; ++id) pool.emplace_back(work, id);
  }

  Trajectory traj;
  traj.trials = point.trials;
  traj.seed = point.seed;
  std::size_t kept = 0;
  std::size_t shortest = point.iterations + 1;
  for (const auto& r : results) {
    if (r.diverged) {
      ++traj.diverged_trials;
      shortest = std::min(shortest, r.squared_deviation.size());
    } else {
      ++kept;
    }
  }
  traj.diverged = traj.diverged_trials > 0;

  const bool all_diverged = kept == 0;
  const std::size_t length = all_diverged ? shortest : point.iterations + 1;
  traj.msd.assign(length, 0.0);
  for (const auto& r : results) {
    if (r.diverged && !all_diverged) continue;
    for (std::size_t n = 0; n < length; ++n) traj.msd[n] += r.squared_deviation[n];
  }
  const double count = static_cast<double>(all_diverged ? results.size() : kept);
  for (double& v : traj.msd) v /= count;

  if (point.mean_weights_from && !all_diverged) {
    traj.mean_weights.assign(point.L, 0.0);
    for (const auto& r : results) {
      if (r.diverged) continue;
      for (std::size_t k = 0; k < point.L; ++k) traj.mean_weights[k] += r.mean_weights[k];
    }
    for (double& v : traj.mean_weights) v /= static_cast<double>(kept);
  }

  if (!all_diverged && length > 1) {
    traj.steady_window = default_window(point.iterations);
    double sum = 0.0;
    for (std::size_t n = length - traj.steady_window; n < length; ++n) sum += traj.msd[n];
    traj.steady_estimate = sum / static_cast<double>(traj.steady_window);
    traj.steady_slope = log_slope(traj.msd, traj.steady_window);
    traj.converged = !traj.diverged && std::abs(traj.steady_slope) < kSlopeLimit;
    for (const auto& r : results) {
      if (r.diverged) continue;
      double s = 0.0;
      for (std::size_t n = length - traj.steady_window; n < length; ++n) s += r.squared_deviation[n];
      traj.trial_steady.push_back(s / static_cast<double>(traj.steady_window));
    }
  }
  return traj;
}

double log_slope(const std::vector<double>& msd, std::size_t window) {
  if (window == 0 || window > msd.size()) {
    throw PreconditionError("steady window must be in [1, series length]");
  }
  const std::size_t start = msd.size() - window;
  double floor = INFINITY;
  bool constant = true;
  for (std::size_t n = start; n < msd.size(); ++n) {
    if (msd[n] > 0.0) floor = std::min(floor, msd[n]);
    if (msd[n] != msd[start]) constant = false;
  }
  if (constant || window < 2) return 0.0;
  if (!std::isfinite(floor)) return 0.0;

  const double mean_x = 0.5 * static_cast<double>(window - 1);
  double mean_y = 0.0;
  for (std::size_t n = start; n < msd.size(); ++n) mean_y += std::log(std::max(msd[n], floor));
  mean_y /= static_cast<double>(window);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < window; ++i) {
    const double dx = static_cast<double>(i) - mean_x;
    sxy += dx * (std::log(std::max(msd[start + i], floor)) - mean_y);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

double estimate_steady(const std::vector<double>& msd, std::size_t window) {
  const double slope = log_slope(msd, window);
  if (!(std::abs(slope) < kSlopeLimit)) {
    std::ostringstream os;
    os << "MSD has not converged: log-slope " << slope << " per iteration over the last "
       << window << " samples";
    throw NotConvergedError(os.str(), slope);
  }
  double sum = 0.0;
  for (std::size_t n = msd.size() - window; n < msd.size(); ++n) sum += msd[n];
  return sum / static_cast<double>(window);
}

std::size_t default_iterations(std::size_t L, double mu, double px) {
  const theory::DeltaSet d = theory::deltas(L, 0, mu, px);
  if (!(d.delta_L > 0.0)) throw StabilityError("default_iterations: step size is not stable");
  return static_cast<std::size_t>(std::ceil(10.0 / (mu * px * d.delta_L)));
}

std::size_t default_window(std::size_t iterations) {
  return std::max<std::size_t>(1, iterations / 10);
}

}  // namespace l0lms::simulation
