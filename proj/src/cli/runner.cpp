#include "l0lms/cli/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "l0lms/cli/config.hpp"
#include "l0lms/cli/csv.hpp"
#include "l0lms/error.hpp"
#include "l0lms/simulation/monte_carlo.hpp"
#include "l0lms/theory/steady_state.hpp"
#include "l0lms/theory/transient.hpp"
#include "l0lms/theory/za_lms.hpp"
#include "l0lms/version.hpp"

namespace l0lms::cli {

namespace fs = std::filesystem;
using algorithms::Variant;
using simulation::ExperimentSpec;
using simulation::Quantity;
using simulation::ResolvedPoint;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string compact(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::vector<double> decades(double first, int count, double step_exponent) {
  std::vector<double> out;
  for (int k = 0; k < count; ++k) out.push_back(first * std::pow(10.0, step_exponent * k));
  return out;
}

// 1, 3, 10, 30, ... between lo and hi (both included when on the grid).
std::vector<double> one_three(double lo, double hi) {
  std::vector<double> out;
  for (double d = lo; d <= hi * (1 + 1e-9); d *= 10.0) {
    out.push_back(d);
    if (3.0 * d <= hi * (1 + 1e-9)) out.push_back(3.0 * d);
  }
  return out;
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

enum class Axis { none, kappa, alpha, Q, mu };

const char* axis_name(Axis a) {
  switch (a) {
    case Axis::kappa: return "kappa";
    case Axis::alpha: return "alpha";
    case Axis::Q: return "Q";
    case Axis::mu: return "mu";
    case Axis::none: break;
  }
  return "point";
}

Axis sweep_axis(const ExperimentSpec& s) {
  std::vector<Axis> axes;
  if (s.kappa.size() > 1) axes.push_back(Axis::kappa);
  if (s.alpha.size() > 1) axes.push_back(Axis::alpha);
  if (s.Q.size() > 1) axes.push_back(Axis::Q);
  if (s.mu.size() > 1) axes.push_back(Axis::mu);
  if (axes.size() > 1 && s.quantity == Quantity::steady) {
    throw ConfigError("steady-state output supports one sweep axis besides snr_db");
  }
  return axes.empty() ? Axis::none : axes.front();
}

double axis_value(Axis a, const ResolvedPoint& p) {
  switch (a) {
    case Axis::kappa: return p.params.kappa;
    case Axis::alpha: return p.variant == Variant::rzalms ? p.params.epsilon : p.params.alpha;
    case Axis::Q: return static_cast<double>(p.Q);
    case Axis::mu: return p.params.mu;
    case Axis::none: break;
  }
  return p.variant == Variant::l0lms ? p.params.kappa : p.params.mu;
}

bool uses_alpha(Variant v) { return v == Variant::l0lms || v == Variant::rzalms; }

// Result of evaluating one point.
struct Evaluated {
  ResolvedPoint point;
  double theory = kNaN;
  std::optional<simulation::Trajectory> sim;
  std::string note;
  bool marker = false;
};

double steady_theory(const ResolvedPoint& p, double sigma_s, std::string& note) {
  try {
    switch (p.variant) {
      case Variant::lms:
        return theory::lms_steady_msd(p.L, p.params.mu, p.signal.px, p.signal.pv);
      case Variant::zalms:
        return theory::za_steady_msd(p.L, p.Q, p.params.mu, p.params.rho, p.signal.px,
                                     p.signal.pv)
            .d_inf_za;
      case Variant::rzalms:
        return kNaN;  // no closed form
      case Variant::l0lms: {
        const auto profile =
            theory::SystemProfile::expected(p.L, p.Q, p.params.alpha, sigma_s);
        return theory::l0_steady_msd(profile, p.params, p.signal).d_inf;
      }
    }
  } catch (const Error& e) {
    note = e.what();
  }
  return kNaN;
}

std::vector<double> curve_theory(const ResolvedPoint& p, double sigma_s,
                                 const std::vector<std::size_t>& ns, std::string& note) {
  std::vector<double> out(ns.size(), kNaN);
  const double energy = static_cast<double>(p.Q) * sigma_s * sigma_s;
  try {
    if (p.variant == Variant::lms) {
      for (std::size_t i = 0; i < ns.size(); ++i) {
        out[i] = theory::lms_msd_at(ns[i], p.L, p.params.mu, p.signal.px, p.signal.pv, energy);
      }
    } else if (p.variant == Variant::l0lms) {
      const auto profile = theory::SystemProfile::expected(p.L, p.Q, p.params.alpha, sigma_s);
      try {
        const auto model = theory::convergence_model(profile, p.params, p.signal);
        for (std::size_t i = 0; i < ns.size(); ++i) out[i] = model.msd(ns[i]);
      } catch (const DegenerateError& e) {
        // Coincident modes: fall back to iterating the recursion.
        note = std::string(e.what()) + "; curve from the recursion";
        const auto rec = theory::lemma_recursion(profile, p.params, p.signal, ns.back());
        for (std::size_t i = 0; i < ns.size(); ++i) out[i] = rec[ns[i]].d;
      }
    }
  } catch (const Error& e) {
    note = e.what();
  }
  return out;
}

std::string curve_suffix(const ExperimentSpec& s, const ResolvedPoint& p) {
  std::string out = std::string("curve_") + std::string(algorithms::to_string(p.variant));
  if (s.Q.size() > 1) out += "_Q" + std::to_string(p.Q);
  if (s.mu.size() > 1) out += "_mu" + compact(p.params.mu);
  if (uses_alpha(p.variant) && s.alpha.size() > 1) {
    out += "_alpha" + compact(p.variant == Variant::rzalms ? p.params.epsilon : p.params.alpha);
  }
  if (p.variant == Variant::l0lms && s.kappa.size() > 1) {
    out += s.kappa_optimal ? "_kappa" + compact(p.kappa_multiplier) + "x"
                           : "_kappa" + compact(p.params.kappa);
  }
  return out;
}

ResolvedEntry entry_for(const Evaluated& e, const std::string& file) {
  const ResolvedPoint& p = e.point;
  ResolvedEntry r;
  r.file = file;
  r.variant = p.variant;
  r.snr_db = p.snr_db;
  r.pv = p.signal.pv;
  r.convention = p.signal.convention;
  r.L = p.L;
  r.Q = p.Q;
  r.mu = p.params.mu;
  r.alpha = p.variant == Variant::l0lms ? p.params.alpha : kNaN;
  r.kappa = p.variant == Variant::l0lms ? p.params.kappa : kNaN;
  r.kappa_opt = p.kappa_opt;
  r.rho = (p.variant == Variant::zalms || p.variant == Variant::rzalms) ? p.params.rho : kNaN;
  r.epsilon = p.variant == Variant::rzalms ? p.params.epsilon : kNaN;
  r.iterations = p.sim.iterations;
  r.trials = p.sim.trials;
  r.seed = p.sim.seed;
  if (e.sim) {
    r.diverged_trials = e.sim->diverged_trials;
    r.converged = e.sim->converged;
  }
  r.note = e.note;
  return r;
}

class Runner {
 public:
  Runner(const RunOptions& opt, RunManifest& manifest) : opt_(opt), m_(manifest) {}

  void run_spec(const ExperimentSpec& spec) {
    const Axis axis = sweep_axis(spec);
    std::vector<ResolvedPoint> points = simulation::expand(spec);
    if (spec.quantity == Quantity::steady) {
      add_kappa_opt_rows(spec, axis, points);
      steady(spec, axis, points);
    } else {
      curves(spec, points);
    }
  }

 private:
  const RunOptions& opt_;
  RunManifest& m_;
  std::set<std::string> used_names_;

  bool want_theory() const { return opt_.mode != Mode::simulate; }
  bool want_sim() const { return opt_.mode != Mode::theory; }

  void say(const std::string& s) const {
    if (opt_.log) *opt_.log << s << std::endl;
  }

  std::string claim(std::string name) {
    std::string candidate = name;
    for (int k = 2; used_names_.count(candidate); ++k) {
      candidate = name.substr(0, name.size() - 4) + "_" + std::to_string(k) + ".csv";
    }
    used_names_.insert(candidate);
    return candidate;
  }

  // A kappa sweep in absolute values gets an extra l0lms row at kappa_opt.
  static void add_kappa_opt_rows(const ExperimentSpec& spec, Axis axis,
                                 std::vector<ResolvedPoint>& points) {
    if (axis != Axis::kappa || spec.kappa_optimal) return;
    std::vector<ResolvedPoint> extra;
    std::set<double> seen;
    for (const auto& p : points) {
      if (p.variant != Variant::l0lms || seen.count(p.snr_db)) continue;
      seen.insert(p.snr_db);
      ResolvedPoint q = p;
      q.params.kappa = p.kappa_opt;
      q.sim.params.kappa = p.kappa_opt;
      q.kappa_multiplier = 1.0;
      extra.push_back(q);
    }
    points.insert(points.end(), extra.begin(), extra.end());
  }

  Evaluated evaluate(const ResolvedPoint& p, const ExperimentSpec& spec) {
    Evaluated e;
    e.point = p;
    if (want_theory()) e.theory = steady_theory(p, spec.sigma_s, e.note);
    if (want_sim()) simulate(e);
    return e;
  }

  void simulate(Evaluated& e) {
    const ResolvedPoint& p = e.point;
    std::ostringstream os;
    os << spec_label(p) << ": " << p.sim.trials << " trials x " << p.sim.iterations
       << " iterations";
    say(os.str());
    e.sim = simulation::monte_carlo(p.sim);
    if (e.sim->diverged) {
      m_.diverged = true;
      say("  diverged in " + std::to_string(e.sim->diverged_trials) + " of " +
          std::to_string(e.sim->trials) + " trials");
    }
  }

  static std::string spec_label(const ResolvedPoint& p) {
    std::ostringstream os;
    os << algorithms::to_string(p.variant) << " snr=" << p.snr_db << "dB L=" << p.L
       << " Q=" << p.Q << " mu=" << p.params.mu;
    if (p.variant == Variant::l0lms) os << " alpha=" << p.params.alpha << " kappa=" << p.params.kappa;
    if (p.variant == Variant::zalms || p.variant == Variant::rzalms) os << " rho=" << p.params.rho;
    if (p.variant == Variant::rzalms) os << " epsilon=" << p.params.epsilon;
    return os.str();
  }

  void steady(const ExperimentSpec& spec, Axis axis, const std::vector<ResolvedPoint>& points) {
    const Variant primary =
        std::count(spec.variants.begin(), spec.variants.end(), Variant::l0lms)
            ? Variant::l0lms
            : spec.variants.front();
    std::vector<Variant> others;
    for (Variant v : spec.variants) {
      if (v != primary && std::find(others.begin(), others.end(), v) == others.end()) {
        others.push_back(v);
      }
    }

    for (double snr : spec.snr_db) {
      std::vector<Evaluated> rows;
      std::vector<Evaluated> side;
      for (const auto& p : points) {
        if (p.snr_db != snr) continue;
        Evaluated e = evaluate(p, spec);
        if (p.variant == primary) {
          e.marker = p.variant == Variant::l0lms && p.kappa_multiplier == 1.0;
          rows.push_back(std::move(e));
        } else {
          side.push_back(std::move(e));
        }
      }
      std::stable_sort(rows.begin(), rows.end(), [&](const Evaluated& a, const Evaluated& b) {
        return axis_value(axis, a.point) < axis_value(axis, b.point);
      });

      const std::string file = claim(output_name(spec.name, snr, std::string("msd_vs_") + axis_name(axis)));
      CsvTable t;
      t.header = {axis_name(axis), "msd_theory", "msd_sim", "msd_sim_ci",
                  "msd_theory_db", "msd_sim_db", "marker"};
      const bool kappa_column = primary == Variant::l0lms && axis != Axis::kappa;
      if (kappa_column) t.header.push_back("kappa");
      for (Variant v : others) {
        const std::string n(algorithms::to_string(v));
        t.header.insert(t.header.end(), {n + "_theory", n + "_sim", n + "_sim_ci"});
      }

      for (const Evaluated& e : rows) {
        const double sim = e.sim ? e.sim->steady_estimate : kNaN;
        const bool sim_ok = e.sim && !(e.sim->diverged_trials == e.sim->trials);
        std::vector<std::string> r = {
            format_real(axis_value(axis, e.point)),
            format_real(e.theory),
            sim_ok ? format_real(sim) : "",
            sim_ok ? format_real(e.sim->steady_ci95()) : "",
            format_db(e.theory),
            sim_ok ? format_db(sim) : "",
            e.marker ? "kappa_opt" : ""};
        if (kappa_column) r.push_back(format_real(e.point.params.kappa));
        for (Variant v : others) {
          const Evaluated* match = nullptr;
          for (const auto& s : side) {
            if (s.point.variant != v) continue;
            if (axis == Axis::Q && s.point.Q != e.point.Q) continue;
            if (axis == Axis::mu && s.point.params.mu != e.point.params.mu) continue;
            if (axis == Axis::alpha && uses_alpha(v) &&
                axis_value(axis, s.point) != axis_value(axis, e.point)) {
              continue;
            }
            match = &s;
            break;
          }
          const bool ok = match && match->sim && match->sim->diverged_trials < match->sim->trials;
          r.push_back(match ? format_real(match->theory) : "");
          r.push_back(ok ? format_real(match->sim->steady_estimate) : "");
          r.push_back(ok ? format_real(match->sim->steady_ci95()) : "");
        }
        t.rows.push_back(std::move(r));
        m_.resolved.push_back(entry_for(e, file));
      }
      for (const auto& s : side) m_.resolved.push_back(entry_for(s, file));
      write_csv(opt_.out_dir / file, t);
      m_.outputs.push_back(file);
      say("wrote " + (opt_.out_dir / file).string());
    }
  }

  void curves(const ExperimentSpec& spec, const std::vector<ResolvedPoint>& points) {
    for (const auto& p : points) {
      const std::size_t iters = p.sim.iterations;
      const std::size_t stride =
          std::max<std::size_t>(1, (iters + opt_.curve_points - 1) / std::max<std::size_t>(1, opt_.curve_points));
      std::vector<std::size_t> ns;
      for (std::size_t n = 0; n <= iters; n += stride) ns.push_back(n);
      if (ns.back() != iters) ns.push_back(iters);

      Evaluated e;
      e.point = p;
      std::vector<double> th(ns.size(), kNaN);
      if (want_theory()) th = curve_theory(p, spec.sigma_s, ns, e.note);
      if (want_sim()) simulate(e);

      const std::string file = claim(output_name(spec.name, p.snr_db, curve_suffix(spec, p)));
      CsvTable t;
      t.header = {"n", "msd_theory", "msd_sim", "msd_theory_db", "msd_sim_db"};
      for (std::size_t i = 0; i < ns.size(); ++i) {
        const double sim = e.sim && ns[i] < e.sim->msd.size() ? e.sim->msd[ns[i]] : kNaN;
        t.rows.push_back({std::to_string(ns[i]), format_real(th[i]), format_real(sim),
                          format_db(th[i]), format_db(sim)});
      }
      write_csv(opt_.out_dir / file, t);
      m_.outputs.push_back(file);
      m_.resolved.push_back(entry_for(e, file));
      say("wrote " + (opt_.out_dir / file).string());
    }
  }
};

}  // namespace

std::string_view to_string(Mode m) noexcept {
  switch (m) {
    case Mode::theory: return "theory";
    case Mode::simulate: return "simulate";
    case Mode::experiment: break;
  }
  return "experiment";
}

std::string output_name(std::string_view name, double snr_db, std::string_view quantity) {
  return std::string(name) + "_" + compact(snr_db) + "dB_" + std::string(quantity) + ".csv";
}

std::vector<std::string> preset_names() { return {"exp1", "exp2", "exp3", "exp4", "exp5"}; }

std::vector<ExperimentSpec> preset(std::string_view name) {
  ExperimentSpec base;
  base.name = std::string(name);
  base.L = 1000;
  base.Q = {100};
  base.mu = {8e-4};
  base.alpha = {10.0};
  base.trials = 100;
  base.seed = 1;

  if (name == "exp1") {
    ExperimentSpec hi = base;
    hi.variants = {Variant::l0lms, Variant::lms};
    hi.kappa_optimal = false;
    hi.snr_db = {40.0};
    hi.kappa = one_three(1e-9, 3e-6);
    ExperimentSpec lo = hi;
    lo.snr_db = {20.0};
    lo.kappa = one_three(1e-8, 3e-5);
    return {hi, lo};
  }
  if (name == "exp2") {
    ExperimentSpec s = base;
    s.alpha = decades(5.6e-4, 11, 0.5);
    s.variants = {Variant::l0lms, Variant::zalms, Variant::rzalms, Variant::lms};
    return {s};
  }
  if (name == "exp3") {
    ExperimentSpec s = base;
    s.Q = {50, 100, 200, 300, 400, 500, 600, 700, 800, 900, 1000};
    s.variants = {Variant::l0lms, Variant::lms};
    return {s};
  }
  if (name == "exp4") {
    ExperimentSpec s = base;
    s.mu = {4e-4};
    s.kappa = {0.1, 1.0, 10.0};
    s.snr_db = {40.0, 20.0};
    s.quantity = Quantity::curve;
    s.variants = {Variant::l0lms, Variant::lms};
    return {s};
  }
  if (name == "exp5") {
    ExperimentSpec s = base;
    s.mu = {2e-4, 4e-4};
    s.quantity = Quantity::curve;
    s.variants = {Variant::l0lms, Variant::lms};
    return {s};
  }
  throw ConfigError("unknown preset '" + std::string(name) + "' (exp1..exp5)");
}

ExperimentSpec apply_options(ExperimentSpec spec, const RunOptions& opt) {
  if (!(opt.scale > 0.0) || !std::isfinite(opt.scale)) throw ConfigError("--scale must be > 0");
  if (opt.scale != 1.0) {
    auto scaled = [&](std::size_t v) {
      return static_cast<std::size_t>(std::llround(static_cast<double>(v) * opt.scale));
    };
    spec.L = std::max<std::size_t>(1, scaled(spec.L));
    // A sparse system stays sparse with at least one non-zero tap.
    for (auto& q : spec.Q) q = std::min(spec.L, q > 0 ? std::max<std::size_t>(1, scaled(q)) : 0);
    spec.Q.erase(std::unique(spec.Q.begin(), spec.Q.end()), spec.Q.end());
    spec.trials = std::max<std::size_t>(1, scaled(spec.trials));
  }
  if (opt.seed) spec.seed = *opt.seed;
  if (opt.trials) spec.trials = *opt.trials;
  if (opt.iterations) spec.iterations = *opt.iterations;
  if (opt.convention) spec.convention = *opt.convention;
  spec.validate();
  return spec;
}

RunManifest run(const std::vector<ExperimentSpec>& specs, const std::string& label,
                const RunOptions& opt) {
  std::error_code ec;
  fs::create_directories(opt.out_dir, ec);
  if (ec || !fs::is_directory(opt.out_dir)) {
    throw Error("output directory " + opt.out_dir.string() + " is not writable");
  }

  RunManifest m;
  m.version = kVersion;
  m.timestamp = utc_timestamp();
  m.label = label;
  m.mode = std::string(to_string(opt.mode));
  m.scale = opt.scale;
  for (const auto& s : specs) m.specs.push_back(apply_options(s, opt));

  Runner runner(opt, m);
  for (const auto& s : m.specs) runner.run_spec(s);
  write_manifest(opt.out_dir / (label + "_manifest.json"), m);
  return m;
}

}  // namespace l0lms::cli
