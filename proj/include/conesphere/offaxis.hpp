#pragma once

#include <array>
#include <vector>

#include "conesphere/geometry.hpp"
#include "conesphere/quartic.hpp"
#include "conesphere/result.hpp"
#include "conesphere/slice_classifier.hpp"

namespace conesphere {

/// Partial fractions of the sphere-sector integrand in y = s cos(phi) + d_hat:
///   3 c^3 G(s) M2(s) y / ((1 - y)(1 + y))
///     = sum_j poly[j] y^j + pole_plus / (1 - y) + pole_minus / (1 + y)
/// with G = s - y^3 / (3c) and M2 = 1 - y^2 + b_hat^2 - sin^2(phi) s^2.
struct PartialFractions {
  std::array<Real, 5> poly{};
  Real pole_plus = 0.0;
  Real pole_minus = 0.0;
};

PartialFractions sphere_partial_fractions(Real d_hat, Real b_hat, Real phi);

/// One lens interval [lower, upper] in the scaled altitude s = z / (R cos phi).
/// Each end is a root of quadratic 1 (r2 = r1 + b) or 2 (r2 = |r1 - b|),
/// which fixes the sector angles there.
struct SliceInterval {
  QuarticFactorization factorization;
  int lower_pair = 1;
  int upper_pair = 2;
};

// Slice integrals over an interval, prefactors included, so that
// v1 + v2 - v_delta equals the integral of the lens area over the same z range.
Tracked triangle_term(const SliceInterval& interval, const CanonicalGeometry& geom);
Tracked cone_sector_term(const SliceInterval& interval, const CanonicalGeometry& geom);
Tracked sphere_sector_term(const SliceInterval& interval, const CanonicalGeometry& geom);

struct SliceTerms {
  double z_lo = 0.0;
  double z_hi = 0.0;
  double v1 = 0.0;
  double v2 = 0.0;
  double v_delta = 0.0;
  double volume() const { return v1 + v2 - v_delta; }
};

struct OffAxisBreakdown {
  std::vector<Region> regions;
  std::vector<SliceTerms> slices;
  double volume = 0.0;
  double rounding_bound = 0.0;  ///< first-order bound on accumulated rounding error
};

/// Unchecked assembly; label must be one of the three off-axis labels.
OffAxisBreakdown breakdown_off_axis(const CanonicalGeometry& geom, CaseLabel label);

/// Throws ConditioningError when the rounding bound exceeds
/// kOffAxisRelativeBound times the volume.
VolumeResult volume_off_axis(const CanonicalGeometry& geom, CaseLabel label);

inline constexpr double kOffAxisRelativeBound = 1e-9;

}  // namespace conesphere
