#include "l0lms/simulation/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "l0lms/error.hpp"
#include "l0lms/theory/constants.hpp"
#include "l0lms/theory/steady_state.hpp"
#include "l0lms/theory/za_lms.hpp"

namespace l0lms::simulation {

using algorithms::AlgoParams;
using algorithms::Variant;

std::string_view to_string(Quantity q) noexcept {
  return q == Quantity::steady ? "steady" : "curve";
}

Quantity parse_quantity(std::string_view name) {
  if (name == "steady") return Quantity::steady;
  if (name == "curve") return Quantity::curve;
  throw PreconditionError("unknown quantity '" + std::string(name) + "' (steady, curve)");
}

namespace {

template <class T>
void require_axis(const std::vector<T>& v, const char* field) {
  if (v.empty()) throw PreconditionError(std::string(field) + ": sweep must not be empty");
  for (const T& x : v) {
    if constexpr (std::is_floating_point_v<T>) {
      if (!std::isfinite(x)) throw PreconditionError(std::string(field) + ": values must be finite");
    }
  }
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

void ExperimentSpec::validate() const {
  if (L < 1) throw PreconditionError("L: must be >= 1");
  require_axis(Q, "Q");
  require_axis(mu, "mu");
  require_axis(alpha, "alpha");
  require_axis(kappa, "kappa");
  require_axis(snr_db, "snr_db");
  if (variants.empty()) throw PreconditionError("variants: list must not be empty");
  for (std::size_t q : Q) {
    if (q > L) throw PreconditionError("Q: support exceeds L");
  }
  for (double m : mu) {
    if (!(m > 0.0)) throw PreconditionError("mu: must be > 0");
  }
  for (double a : alpha) {
    if (!(a > 0.0)) throw PreconditionError("alpha: must be > 0");
  }
  for (double k : kappa) {
    if (!(k >= 0.0)) throw PreconditionError("kappa: must be >= 0");
  }
  if (trials < 1) throw PreconditionError("trials: must be >= 1");
  if (!(px > 0.0) || !std::isfinite(px)) throw PreconditionError("px: must be > 0");
  if (!(sigma_s > 0.0) || !std::isfinite(sigma_s)) throw PreconditionError("sigma_s: must be > 0");
  if (rho && !(*rho >= 0.0)) throw PreconditionError("rho: must be >= 0");
  if (epsilon && !(*epsilon > 0.0)) throw PreconditionError("epsilon: must be > 0");
}

std::size_t preset_iterations(std::size_t L, double mu, double px) {
  const theory::DeltaSet d = theory::deltas(L, 0, mu, px);
  if (!(d.delta_L > 0.0)) throw StabilityError("iterations: step size is not stable");
  const double rate = mu * px * std::min(d.delta_L, 1.0);
  const double n = std::ceil(30.0 / rate / 1000.0) * 1000.0;
  return static_cast<std::size_t>(n);
}

std::vector<ResolvedPoint> expand(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<ResolvedPoint> out;
  for (double snr : spec.snr_db) {
    for (std::size_t Q : spec.Q) {
      const double energy = static_cast<double>(Q) * spec.sigma_s * spec.sigma_s;
      const theory::SignalModel signal =
          theory::SignalModel::from_snr(spec.px, snr, spec.convention, energy);
      for (double mu : spec.mu) {
        theory::require_stable(spec.L, mu, spec.px);

        auto make = [&](const AlgoParams& p) {
          ResolvedPoint r;
          r.variant = p.variant;
          r.L = spec.L;
          r.Q = Q;
          r.snr_db = snr;
          r.signal = signal;
          r.params = p;
          r.kappa_opt = kNaN;
          r.kappa_multiplier = kNaN;
          SimulationPoint& s = r.sim;
          s.L = spec.L;
          s.Q = Q;
          s.params = p;
          s.px = spec.px;
          s.pv = signal.pv;
          s.sigma_s = spec.sigma_s;
          s.iterations = spec.iterations ? spec.iterations : preset_iterations(spec.L, mu, spec.px);
          s.trials = spec.trials;
          s.seed = spec.seed;
          s.threads = spec.threads;
          return r;
        };

        std::optional<double> za_rho;
        auto default_rho = [&] {
          if (!za_rho) za_rho = theory::za_optimal_rho(spec.L, Q, mu, spec.px, signal.pv);
          return *za_rho;
        };

        for (Variant v : spec.variants) {
          switch (v) {
            case Variant::lms:
              out.push_back(make(AlgoParams::lms(mu)));
              break;
            case Variant::zalms:
              out.push_back(make(AlgoParams::za(mu, spec.rho ? *spec.rho : default_rho())));
              break;
            case Variant::rzalms:
              for (double a : spec.alpha) {
                const double rho = spec.rho ? *spec.rho : default_rho();
                ResolvedPoint r = make(AlgoParams::rza(mu, rho, spec.epsilon ? *spec.epsilon : a));
                out.push_back(std::move(r));
              }
              break;
            case Variant::l0lms:
              for (double a : spec.alpha) {
                const theory::SystemProfile profile =
                    theory::SystemProfile::expected(spec.L, Q, a, spec.sigma_s);
                const double k_opt = theory::optimal_kappa_for(profile, mu, signal).kappa_opt;
                for (double k : spec.kappa) {
                  const double kappa = spec.kappa_optimal ? k * k_opt : k;
                  ResolvedPoint r = make(AlgoParams::l0(mu, kappa, a));
                  r.kappa_opt = k_opt;
                  r.kappa_multiplier = spec.kappa_optimal ? k : kNaN;
                  out.push_back(std::move(r));
                }
              }
              break;
          }
        }
      }
    }
  }
  return out;
}

}  // namespace l0lms::simulation
