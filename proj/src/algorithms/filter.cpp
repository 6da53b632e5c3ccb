#include "l0lms/algorithms/filter.hpp"

#include <cmath>
#include <string>

#include "l0lms/error.hpp"

namespace l0lms::algorithms {

namespace {

void check_lengths(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": length " + std::to_string(a) + " vs " +
                         std::to_string(b));
  }
}

}  // namespace

double synth_output(std::span<const double> s, std::span<const double> x, double v) {
  check_lengths(s.size(), x.size(), "synth_output");
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) acc += x[i] * s[i];
  return acc + v;
}

double adapt(std::span<double> w, std::span<const double> x, double d, const AlgoParams& p,
             const simd::KernelTable& k) {
  check_lengths(x.size(), w.size(), "regressor/weights");
  const double e = d - k.dot(x, w);
  const double gain = p.mu * e;
  switch (p.variant) {
    case Variant::lms: k.lms_update(w, x, gain); break;
    case Variant::l0lms: k.l0_update(w, x, gain, p.kappa, p.alpha); break;
    case Variant::zalms: k.za_update(w, x, gain, p.rho); break;
    case Variant::rzalms: k.rza_update(w, x, gain, p.rho, p.epsilon); break;
  }
  return e;
}

StepResult step(const FilterState& state, std::span<const double> x, double d,
                const AlgoParams& params) {
  check_lengths(x.size(), state.w.size(), "regressor/weights");
  params.validate();
  if (!std::isfinite(d)) throw NumericInputError("desired output is not finite");
  for (double xi : x) {
    if (!std::isfinite(xi)) throw NumericInputError("regressor contains a non-finite value");
  }
  StepResult out{state, 0.0};
  out.error = adapt(out.state.w, x, d, params, simd::scalar_kernels());
  ++out.state.n;
  return out;
}

}  // namespace l0lms::algorithms
