#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace conesphere::simd {

enum class MembershipMode {
  Forward,     ///< z >= 0 and x^2 + y^2 <= z^2 tan^2
  HalfSpace,   ///< z >= 0
  Complement,  ///< not (z <= 0 and x^2 + y^2 <= z^2 tan^2), tan of pi - phi
};

/// Maps unit-ball samples into the cone frame: X = offset_x + R ux,
/// Y = R uy, Z = offset_z + R uz. Products and sums are rounded separately
/// (no fused multiply-add) so every kernel decides membership identically.
struct MembershipParams {
  double R = 1.0;
  double offset_x = 0.0;
  double offset_z = 0.0;
  double tan2 = 0.0;
  MembershipMode mode = MembershipMode::Forward;
};

using CountFn = std::uint64_t (*)(const double* ux, const double* uy, const double* uz, std::size_t n,
                                  const MembershipParams& p);

std::uint64_t count_scalar(const double* ux, const double* uy, const double* uz, std::size_t n, const MembershipParams& p);
#if defined(CONESPHERE_HAVE_AVX2)
std::uint64_t count_avx2(const double* ux, const double* uy, const double* uz, std::size_t n, const MembershipParams& p);
#endif
#if defined(CONESPHERE_HAVE_NEON)
std::uint64_t count_neon(const double* ux, const double* uy, const double* uz, std::size_t n, const MembershipParams& p);
#endif

enum class Kernel { Scalar, Avx2, Neon };

std::string_view to_string(Kernel k);

/// Compiled in and supported by the running CPU.
bool kernel_available(Kernel k);

/// Best available kernel, unless overridden by set_kernel or by the
/// CONESPHERE_KERNEL environment variable (scalar|avx2|neon).
Kernel active_kernel();

/// Throws std::invalid_argument if the kernel is unavailable.
void set_kernel(Kernel k);

std::uint64_t count_hits(const double* ux, const double* uy, const double* uz, std::size_t n, const MembershipParams& p);

}  // namespace conesphere::simd
