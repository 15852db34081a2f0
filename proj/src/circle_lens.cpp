#include "conesphere/circle_lens.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "conesphere/errors.hpp"
#include "conesphere/geometry.hpp"

namespace conesphere {

std::pair<double, double> lens_ordinates(double r1, double r2, double b) {
  if (b == 0.0) throw DomainError("lens_ordinates: concentric circles have no chord");
  const double x1 = (r2 * r2 - r1 * r1 - b * b) / (2.0 * b);
  return {x1, b + x1};
}

LensSection lens_section(double r1, double r2, double b) {
  if (!(r1 >= 0.0) || !(r2 >= 0.0) || !(b >= 0.0)) throw InvalidInput("lens: radii and distance must be nonnegative");

  LensSection s;
  const double rmin = std::min(r1, r2);
  const double rmax = std::max(r1, r2);
  if (b >= r1 + r2) return s;  // disjoint or externally tangent

  // [(b+r2)^2 - r1^2][r1^2 - (r2-b)^2], written as a product of four linear
  // factors so the sign at tangency is exact.
  const double disc = (b + r2 - r1) * (b + r2 + r1) * (r1 - r2 + b) * (r1 + r2 - b);
  if (b + rmin <= rmax || !(disc > 0.0)) {
    s.area = kPi * rmin * rmin;
    if (r1 <= r2) {
      s.alpha1 = kPi;
    } else {
      s.alpha2 = kPi;
    }
    if (b > 0.0) std::tie(s.x1, s.x2) = lens_ordinates(r1, r2, b);
    return s;
  }

  std::tie(s.x1, s.x2) = lens_ordinates(r1, r2, b);
  s.rho = std::sqrt(disc) / (2.0 * b);
  // atan2 keeps full accuracy near alpha = 0 and alpha = pi where acos does not.
  s.alpha1 = std::atan2(s.rho, -s.x1);
  s.alpha2 = std::atan2(s.rho, s.x2);
  s.area = s.alpha2 * r2 * r2 + s.alpha1 * r1 * r1 - s.rho * b;
  s.area = std::clamp(s.area, 0.0, kPi * rmin * rmin);
  return s;
}

double lens_area(double r1, double r2, double b) { return lens_section(r1, r2, b).area; }

}  // namespace conesphere
