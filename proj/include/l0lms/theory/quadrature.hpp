#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace l0lms::theory {

/// Fixed-order Gauss-Legendre rule on [-1, 1].  Nodes are the roots of P_n
/// found by Newton iteration from the Chebyshev-like initial guesses.
class GaussLegendre {
 public:
  explicit GaussLegendre(std::size_t order);

  std::size_t order() const noexcept { return nodes_.size(); }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  /// Integral of f over [a, b] split into `panels` equal sub-intervals.
  double integrate(const std::function<double(double)>& f, double a, double b,
                   std::size_t panels = 1) const;

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

}  // namespace l0lms::theory
