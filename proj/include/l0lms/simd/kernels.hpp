#pragma once

// Inner loops of the adaptive filter.  Every kernel has a scalar reference
// implementation and, on x86-64, an AVX2 variant chosen at runtime.
//
// Element-wise kernels (the weight updates) are bit-identical across
// variants: both evaluate the same operation sequence with no FMA
// contraction.  Reductions (dot, squared_distance) differ only in summation
// order; each variant is deterministic on its own.

#include <cstddef>
#include <span>
#include <string_view>

namespace l0lms::simd {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa) noexcept;

struct KernelTable {
  Isa isa;

  double (*dot)(std::span<const double> a, std::span<const double> b);
  double (*squared_distance)(std::span<const double> a, std::span<const double> b);

  // w += gain * x
  void (*lms_update)(std::span<double> w, std::span<const double> x, double gain);
  // w += gain * x + kappa * g(w), g the l0 attractor with range 1/alpha
  void (*l0_update)(std::span<double> w, std::span<const double> x, double gain,
                    double kappa, double alpha);
  // w += gain * x - rho * sgn(w)
  void (*za_update)(std::span<double> w, std::span<const double> x, double gain,
                    double rho);
  // w += gain * x - rho * sgn(w) / (1 + epsilon |w|)
  void (*rza_update)(std::span<double> w, std::span<const double> x, double gain,
                     double rho, double epsilon);
};

const KernelTable& scalar_kernels() noexcept;

/// nullptr when the variant was not compiled in or the CPU lacks AVX2.
const KernelTable* avx2_kernels() noexcept;

bool supported(Isa isa) noexcept;

/// Kernel table used by the library.  Chosen on first use: the best
/// supported ISA, unless the environment variable L0LMS_ISA is set to
/// "scalar" or "avx2".
const KernelTable& active() noexcept;

/// Overrides the runtime choice.  Throws PreconditionError when `isa` is not
/// supported on this machine.
void select(Isa isa);

}  // namespace l0lms::simd
