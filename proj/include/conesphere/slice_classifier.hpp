#pragma once

#include "conesphere/geometry.hpp"
#include "conesphere/result.hpp"

namespace conesphere {

/// Roots of one of the two quadratics
///   s^2 + 2 p s + (d^2 + b^2 - 1) = 0,  p = d cos(phi) +/- b sin(phi)
/// in the scaled altitude s = z / (R cos phi). Pair 1 takes the + sign.
struct RootPair {
  bool real = false;
  Real lo = 0.0;  ///< smaller root (real pairs)
  Real hi = 0.0;  ///< larger root (real pairs)
  Real re = 0.0;  ///< real part; equals (lo + hi) / 2 for real pairs
  Real im = 0.0;  ///< imaginary magnitude, complex pairs only
  Real discriminant = 0.0;

  /// Real with a positive larger root: the crossing lies on the forward nappe.
  bool forward() const { return real && hi > 0.0; }
};

struct SliceRoots {
  RootPair z1;  ///< r2 = r1 + b tangencies (cone circle touching inside the sphere circle)
  RootPair z2;  ///< r2 = |r1 - b| tangencies
};

/// Discriminants within this band of zero are treated as a complex pair
/// (ties go to the case with fewer regions).
inline constexpr double kDoubleRootTolerance = 1e-12;

/// Requires 0 < phi < pi/2.
SliceRoots slice_roots(Real d_hat, Real b_hat, Real phi);

/// Same, with the normalization carried out in working precision.
SliceRoots slice_roots(const CanonicalGeometry& geom);

CaseLabel classify(const CanonicalGeometry& geom);

/// True iff Z tan(phi) > b: the polar cap bounded at altitude Z lies inside the cone.
bool cap_inclusion(double Z, double phi, double b);

}  // namespace conesphere
