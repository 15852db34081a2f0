#pragma once

#include <vector>

#include "conesphere/result.hpp"

namespace conesphere {

/// pi rho^2 Z / 3
double cone_volume(double rho, double height);

/// pi h^2 (3R - h) / 3 for a cap of thickness h in [0, 2R]; throws InvalidInput otherwise.
double cap_volume(double R, double h);

/// Altitude above the apex where the cone wall meets the sphere (apex inside):
///   Z = cos(phi) sqrt(R^2 - (d sin phi)^2) + d sin^2(phi) - d.
/// Throws DomainError when |d sin phi| > R.
double transition_altitude(double R, double d, double phi);

/// Transition data for the sphere centered on the cone axis.
struct OnAxisBreakdown {
  double Z1 = 0.0;    ///< lower wall/sphere crossing (apex outside), or the single crossing Z
  double Z2 = 0.0;    ///< upper crossing; equals Z1 when the apex is inside
  double rho1 = 0.0;  ///< Z1 tan(phi)
  double rho2 = 0.0;  ///< Z2 tan(phi)
  double south_cap_height = 0.0;
  double north_cap_height = 0.0;
  std::vector<Region> regions;
};

OnAxisBreakdown breakdown_on_axis_inside(double R, double d, double phi);
OnAxisBreakdown breakdown_on_axis_outside(double R, double d, double phi);

/// Apex inside or on the sphere (d^2 <= R^2), 0 < phi <= pi/2.
VolumeResult volume_on_axis_inside(double R, double d, double phi);

/// Apex outside below the sphere (d < -R), 0 < phi <= pi/2. Throws DomainError
/// for d >= -R.
VolumeResult volume_on_axis_outside(double R, double d, double phi);

/// pi/2 < phi <= pi via V = 4 pi R^3 / 3 - V(R, -d, pi - phi).
VolumeResult volume_stretched(double R, double d, double phi);

/// Any d and 0 < phi <= pi with the sphere center on the axis.
VolumeResult volume_on_axis(double R, double d, double phi);

/// Half-aperture within this distance of pi/2 is treated as the half-space z >= 0.
inline constexpr double kHalfSpaceTolerance = 1e-9;

}  // namespace conesphere
