#include <immintrin.h>

#include "conesphere/simd/membership.hpp"

namespace conesphere::simd {

std::uint64_t count_avx2(const double* ux, const double* uy, const double* uz, std::size_t n, const MembershipParams& p) {
  const __m256d R = _mm256_set1_pd(p.R);
  const __m256d ox = _mm256_set1_pd(p.offset_x);
  const __m256d oz = _mm256_set1_pd(p.offset_z);
  const __m256d t2 = _mm256_set1_pd(p.tan2);
  const __m256d zero = _mm256_setzero_pd();

  std::uint64_t hits = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_add_pd(ox, _mm256_mul_pd(R, _mm256_loadu_pd(ux + i)));
    const __m256d y = _mm256_mul_pd(R, _mm256_loadu_pd(uy + i));
    const __m256d z = _mm256_add_pd(oz, _mm256_mul_pd(R, _mm256_loadu_pd(uz + i)));
    const __m256d r2 = _mm256_add_pd(_mm256_mul_pd(x, x), _mm256_mul_pd(y, y));
    const __m256d w2 = _mm256_mul_pd(_mm256_mul_pd(z, z), t2);
    const __m256d inside = _mm256_cmp_pd(r2, w2, _CMP_LE_OQ);
    int mask = 0;
    switch (p.mode) {
      case MembershipMode::Forward:
        mask = _mm256_movemask_pd(_mm256_and_pd(_mm256_cmp_pd(z, zero, _CMP_GE_OQ), inside));
        break;
      case MembershipMode::HalfSpace:
        mask = _mm256_movemask_pd(_mm256_cmp_pd(z, zero, _CMP_GE_OQ));
        break;
      case MembershipMode::Complement:
        mask = ~_mm256_movemask_pd(_mm256_and_pd(_mm256_cmp_pd(z, zero, _CMP_LE_OQ), inside)) & 0xF;
        break;
    }
    hits += static_cast<std::uint64_t>(__builtin_popcount(static_cast<unsigned>(mask)));
  }
  return hits + count_scalar(ux + i, uy + i, uz + i, n - i, p);
}

}  // namespace conesphere::simd
