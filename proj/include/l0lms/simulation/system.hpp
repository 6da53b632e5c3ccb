#pragma once

#include <cstddef>
#include <cstdint>

#include "l0lms/algorithms/params.hpp"

namespace l0lms::simulation {

/// Random sparse system: Q positions drawn uniformly without replacement,
/// values N(0, sigma_s^2).  Deterministic in (seed, index).
algorithms::SparseSystem gen_system(std::size_t L, std::size_t Q, std::uint64_t seed,
                                    std::uint64_t index = 0, double sigma_s = 1.0);

}  // namespace l0lms::simulation
