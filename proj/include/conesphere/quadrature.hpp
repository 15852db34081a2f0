#pragma once

#include <vector>

#include "conesphere/geometry.hpp"
#include "conesphere/result.hpp"

namespace conesphere {

struct QuadratureSpec {
  double abs_tol = 1e-15;  ///< in units of R^3
  double rel_tol = 1e-12;
  unsigned max_depth = 20;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
  std::size_t evaluations = 0;
};

/// Overlap area of the horizontal slice at altitude z >= 0 above the apex:
/// the cone circle of radius z tan(phi) and the sphere circle of radius
/// sqrt(R^2 - (z + d)^2) offset by b. Zero outside the sphere's z range.
/// Requires phi <= pi/2 (phi = pi/2 is the half-space, whole sphere slice).
double slice_area(double z, const CanonicalGeometry& geom);

/// Altitudes in (z_lo, z_hi) where the slice area is not smooth: the wall
/// tangency altitudes of both root pairs.
std::vector<double> slice_breakpoints(double z_lo, double z_hi, const CanonicalGeometry& geom);

/// Integral of slice_area over [z_lo, z_hi]. Each piece between breakpoints is
/// mapped by z = mid - half cos(theta), which removes the square-root
/// behaviour at the piece ends, and integrated by adaptive Gauss-Kronrod.
QuadResult integrate_slices(double z_lo, double z_hi, const CanonicalGeometry& geom, const QuadratureSpec& spec = {});

/// Whole-geometry volume by slice quadrature; phi > pi/2 goes through the
/// complement V = 4 pi R^3 / 3 - V(R, -d, b, pi - phi).
VolumeResult volume_quadrature(const CanonicalGeometry& geom, const QuadratureSpec& spec = {});

}  // namespace conesphere
