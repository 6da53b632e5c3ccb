#include "l0lms/theory/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "l0lms/error.hpp"

namespace l0lms::theory {

GaussLegendre::GaussLegendre(std::size_t order) : nodes_(order), weights_(order) {
  if (order == 0) throw PreconditionError("Gauss-Legendre order must be >= 1");
  const std::size_t n = order;
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // P_n(z) by the three-term recurrence, then P_n'(z).
      double p0 = 1.0;
      double p1 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * static_cast<double>(j) - 1.0) * z * p1 -
              (static_cast<double>(j) - 1.0) * p2) /
             static_cast<double>(j);
      }
      dp = static_cast<double>(n) * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    nodes_[i] = -z;
    nodes_[n - 1 - i] = z;
    weights_[i] = weights_[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

double GaussLegendre::integrate(const std::function<double(double)>& f, double a, double b,
                                std::size_t panels) const {
  if (panels == 0) panels = 1;
  const double width = (b - a) / static_cast<double>(panels);
  double total = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + width * static_cast<double>(p);
    const double mid = lo + 0.5 * width;
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * f(mid + 0.5 * width * nodes_[i]);
    total += 0.5 * width * sum;
  }
  return total;
}

}  // namespace l0lms::theory
