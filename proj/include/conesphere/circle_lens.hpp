#pragma once

#include <utility>

namespace conesphere {

/// Overlap of two planar circles: circle 1 (radius r1) at the origin,
/// circle 2 (radius r2) centered at (-b, 0).
struct LensSection {
  double x1 = 0.0;      ///< chord abscissa relative to circle 1's center
  double x2 = 0.0;      ///< chord abscissa relative to circle 2's center, b + x1
  double rho = 0.0;     ///< half chord length
  double alpha1 = 0.0;  ///< half-angle of the chord seen from circle 1, [0, pi]
  double alpha2 = 0.0;  ///< half-angle of the chord seen from circle 2, [0, pi]
  double area = 0.0;
};

/// x1 = (r2^2 - r1^2 - b^2) / (2b), x2 = b + x1. Throws DomainError for b == 0.
std::pair<double, double> lens_ordinates(double r1, double r2, double b);

/// Full overlap description, including the disjoint and containment limits
/// (alpha values of 0 or pi, rho = 0).
LensSection lens_section(double r1, double r2, double b);

/// Overlap area A = alpha2 r2^2 + alpha1 r1^2 - rho b, extended by exact
/// values for disjoint (0) and nested (pi min(r1,r2)^2) circles.
double lens_area(double r1, double r2, double b);

}  // namespace conesphere
