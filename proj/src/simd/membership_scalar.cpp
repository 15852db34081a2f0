#include "conesphere/simd/membership.hpp"

namespace conesphere::simd {

std::uint64_t count_scalar(const double* ux, const double* uy, const double* uz, std::size_t n, const MembershipParams& p) {
  std::uint64_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = p.offset_x + p.R * ux[i];
    const double y = p.R * uy[i];
    const double z = p.offset_z + p.R * uz[i];
    const double r2 = x * x + y * y;
    const double w2 = z * z * p.tan2;
    bool in = false;
    switch (p.mode) {
      case MembershipMode::Forward:
        in = z >= 0.0 && r2 <= w2;
        break;
      case MembershipMode::HalfSpace:
        in = z >= 0.0;
        break;
      case MembershipMode::Complement:
        in = !(z <= 0.0 && r2 <= w2);
        break;
    }
    hits += in ? 1 : 0;
  }
  return hits;
}

}  // namespace conesphere::simd
