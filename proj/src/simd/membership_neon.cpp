#include <arm_neon.h>

#include "conesphere/simd/membership.hpp"

namespace conesphere::simd {

std::uint64_t count_neon(const double* ux, const double* uy, const double* uz, std::size_t n, const MembershipParams& p) {
  const float64x2_t R = vdupq_n_f64(p.R);
  const float64x2_t ox = vdupq_n_f64(p.offset_x);
  const float64x2_t oz = vdupq_n_f64(p.offset_z);
  const float64x2_t t2 = vdupq_n_f64(p.tan2);
  const float64x2_t zero = vdupq_n_f64(0.0);

  std::uint64_t hits = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    // vmulq/vaddq kept separate: vmlaq may fuse on some targets.
    const float64x2_t x = vaddq_f64(ox, vmulq_f64(R, vld1q_f64(ux + i)));
    const float64x2_t y = vmulq_f64(R, vld1q_f64(uy + i));
    const float64x2_t z = vaddq_f64(oz, vmulq_f64(R, vld1q_f64(uz + i)));
    const float64x2_t r2 = vaddq_f64(vmulq_f64(x, x), vmulq_f64(y, y));
    const float64x2_t w2 = vmulq_f64(vmulq_f64(z, z), t2);
    const uint64x2_t inside = vcleq_f64(r2, w2);
    uint64x2_t m;
    switch (p.mode) {
      case MembershipMode::Forward:
        m = vandq_u64(vcgeq_f64(z, zero), inside);
        break;
      case MembershipMode::HalfSpace:
        m = vcgeq_f64(z, zero);
        break;
      default:
        m = veorq_u64(vandq_u64(vcleq_f64(z, zero), inside), vdupq_n_u64(~0ULL));
        break;
    }
    hits += vgetq_lane_u64(m, 0) & 1U;
    hits += vgetq_lane_u64(m, 1) & 1U;
  }
  return hits + count_scalar(ux + i, uy + i, uz + i, n - i, p);
}

}  // namespace conesphere::simd
