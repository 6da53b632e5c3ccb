#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "l0lms/algorithms/params.hpp"
#include "l0lms/simd/kernels.hpp"

namespace l0lms::algorithms {

struct FilterState {
  std::vector<double> w;
  std::uint64_t n = 0;

  static FilterState zeros(std::size_t length) { return {std::vector<double>(length, 0.0), 0}; }
};

struct StepResult {
  FilterState state;
  double error = 0.0;
};

/// Observed output x^T s + v.
double synth_output(std::span<const double> s, std::span<const double> x, double v);

/// One iteration of the selected variant.  `x` is the regressor ordered
/// most-recent-first.  Pure: the input state is not modified.  Runs the
/// scalar kernels, so x^T w is summed left to right.
///
/// Throws DimensionError on length mismatch and NumericInputError when x or
/// d is not finite.
StepResult step(const FilterState& state, std::span<const double> x, double d,
                const AlgoParams& params);

/// In-place form of step() for hot loops: updates `w` and returns the a
/// priori error.  Lengths are checked, finiteness is not.
double adapt(std::span<double> w, std::span<const double> x, double d, const AlgoParams& params,
             const simd::KernelTable& kernels = simd::active());

}  // namespace l0lms::algorithms
