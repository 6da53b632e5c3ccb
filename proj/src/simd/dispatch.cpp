#include <atomic>
#include <cstdlib>
#include <string>
#include <string_view>

#include "l0lms/error.hpp"
#include "simd/kernels_internal.hpp"

namespace l0lms::simd {

namespace {

constexpr KernelTable kScalar{
    Isa::scalar,
    detail::dot_scalar,
    detail::squared_distance_scalar,
    detail::lms_update_scalar,
    detail::l0_update_scalar,
    detail::za_update_scalar,
    detail::rza_update_scalar,
};

#if defined(L0LMS_HAVE_AVX2)
constexpr KernelTable kAvx2{
    Isa::avx2,
    detail::dot_avx2,
    detail::squared_distance_avx2,
    detail::lms_update_avx2,
    detail::l0_update_avx2,
    detail::za_update_avx2,
    detail::rza_update_avx2,
};
#endif

bool cpu_has_avx2() noexcept {
#if defined(L0LMS_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable* initial_choice() noexcept {
  const char* env = std::getenv("L0LMS_ISA");
  const std::string_view want = env ? env : "auto";
  if (want == "scalar") return &kScalar;
  if (const KernelTable* t = avx2_kernels()) return t;
  return &kScalar;
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> table{initial_choice()};
  return table;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

const KernelTable& scalar_kernels() noexcept { return kScalar; }

const KernelTable* avx2_kernels() noexcept {
#if defined(L0LMS_HAVE_AVX2)
  static const bool ok = cpu_has_avx2();
  return ok ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

bool supported(Isa isa) noexcept {
  return isa == Isa::scalar || avx2_kernels() != nullptr;
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_acquire); }

void select(Isa isa) {
  if (!supported(isa)) {
    throw PreconditionError("ISA '" + std::string(to_string(isa)) +
                            "' is not available on this machine");
  }
  current().store(isa == Isa::scalar ? &kScalar : avx2_kernels(), std::memory_order_release);
}

}  // namespace l0lms::simd
