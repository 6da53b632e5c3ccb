#include "simd/kernels_internal.hpp"

namespace l0lms::simd::detail {

double dot_scalar(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double squared_distance_scalar(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

void lms_update_scalar(std::span<double> w, std::span<const double> x, double gain) {
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = w[i] + gain * x[i];
}

void l0_update_scalar(std::span<double> w, std::span<const double> x, double gain,
                      double kappa, double alpha) {
  const double slope = 2.0 * alpha * alpha;
  const double jump = 2.0 * alpha;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double t = w[i];
    const double mag = t < 0.0 ? -t : t;
    const double sgn = (t > 0.0 ? 1.0 : 0.0) - (t < 0.0 ? 1.0 : 0.0);
    const double g = mag * alpha > 1.0 ? 0.0 : slope * t - jump * sgn;
    w[i] = (t + gain * x[i]) + kappa * g;
  }
}

void za_update_scalar(std::span<double> w, std::span<const double> x, double gain,
                      double rho) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double t = w[i];
    const double sgn = (t > 0.0 ? 1.0 : 0.0) - (t < 0.0 ? 1.0 : 0.0);
    w[i] = (t + gain * x[i]) + rho * -sgn;
  }
}

void rza_update_scalar(std::span<double> w, std::span<const double> x, double gain,
                       double rho, double epsilon) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double t = w[i];
    const double mag = t < 0.0 ? -t : t;
    const double sgn = (t > 0.0 ? 1.0 : 0.0) - (t < 0.0 ? 1.0 : 0.0);
    const double g = -sgn / (1.0 + epsilon * mag);
    w[i] = (t + gain * x[i]) + rho * g;
  }
}

}  // namespace l0lms::simd::detail
