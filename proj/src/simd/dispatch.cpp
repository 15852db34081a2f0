#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "conesphere/simd/membership.hpp"

namespace conesphere::simd {

namespace {

Kernel best_available() {
  if (kernel_available(Kernel::Avx2)) return Kernel::Avx2;
  if (kernel_available(Kernel::Neon)) return Kernel::Neon;
  return Kernel::Scalar;
}

Kernel initial_kernel() {
  if (const char* env = std::getenv("CONESPHERE_KERNEL")) {
    const std::string name(env);
    for (Kernel k : {Kernel::Scalar, Kernel::Avx2, Kernel::Neon})
      if (name == to_string(k) && kernel_available(k)) return k;
  }
  return best_available();
}

std::atomic<Kernel>& current() {
  static std::atomic<Kernel> k{initial_kernel()};
  return k;
}

}  // namespace

std::string_view to_string(Kernel k) {
  switch (k) {
    case Kernel::Scalar:
      return "scalar";
    case Kernel::Avx2:
      return "avx2";
    case Kernel::Neon:
      return "neon";
  }
  return "scalar";
}

bool kernel_available(Kernel k) {
  switch (k) {
    case Kernel::Scalar:
      return true;
    case Kernel::Avx2:
#if defined(CONESPHERE_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Kernel::Neon:
#if defined(CONESPHERE_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Kernel active_kernel() { return current().load(std::memory_order_relaxed); }

void set_kernel(Kernel k) {
  if (!kernel_available(k)) throw std::invalid_argument("membership kernel not available: " + std::string(to_string(k)));
  current().store(k, std::memory_order_relaxed);
}

std::uint64_t count_hits(const double* ux, const double* uy, const double* uz, std::size_t n, const MembershipParams& p) {
  switch (active_kernel()) {
#if defined(CONESPHERE_HAVE_AVX2)
    case Kernel::Avx2:
      return count_avx2(ux, uy, uz, n, p);
#endif
#if defined(CONESPHERE_HAVE_NEON)
    case Kernel::Neon:
      return count_neon(ux, uy, uz, n, p);
#endif
    default:
      return count_scalar(ux, uy, uz, n, p);
  }
}

}  // namespace conesphere::simd
