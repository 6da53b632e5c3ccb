#pragma once

#include <cstdint>
#include <random>

namespace l0lms::simulation {

/// Independent random streams keyed by (seed, index, role).  The key is
/// hashed with SplitMix64 into the seed of a std::mt19937_64, whose output
/// sequence is fixed by the C++ standard; uniforms and normals are derived
/// here rather than through <random> distributions, whose algorithms are
/// implementation-defined.  Streams never share state, so the draws of a
/// trial do not depend on how trials are scheduled.
class RandomStream {
 public:
  enum class Role : std::uint64_t { system = 1, input = 2, noise = 3 };

  RandomStream(std::uint64_t seed, std::uint64_t index, Role role);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal (Marsaglia polar method).
  double normal();
  /// Uniform integer in [0, n) without modulo bias.
  std::uint64_t below(std::uint64_t n);

  static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t index, Role role);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace l0lms::simulation
