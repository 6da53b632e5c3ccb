#include "l0lms/simulation/system.hpp"

#include <numeric>
#include <utility>
#include <vector>

#include "l0lms/error.hpp"
#include "l0lms/simulation/rng.hpp"

namespace l0lms::simulation {

algorithms::SparseSystem gen_system(std::size_t L, std::size_t Q, std::uint64_t seed,
                                    std::uint64_t index, double sigma_s) {
  if (Q > L) throw PreconditionError("gen_system: support Q exceeds length L");
  RandomStream rng(seed, index, RandomStream::Role::system);

  // Partial Fisher-Yates: the first Q slots become the support.
  std::vector<std::size_t> slots(L);
  std::iota(slots.begin(), slots.end(), std::size_t{0});
  for (std::size_t i = 0; i < Q; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(L - i));
    std::swap(slots[i], slots[j]);
  }

  algorithms::SparseSystem sys;
  sys.coefficients.assign(L, 0.0);
  for (std::size_t i = 0; i < Q; ++i) {
    double value = 0.0;
    while (value == 0.0) value = sigma_s * rng.normal();
    sys.coefficients[slots[i]] = value;
  }
  sys.support = Q;
  return sys;
}

}  // namespace l0lms::simulation
