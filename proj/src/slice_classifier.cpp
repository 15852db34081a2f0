#include "conesphere/slice_classifier.hpp"

#include <algorithm>
#include <cmath>

#include "conesphere/errors.hpp"
#include "conesphere/onaxis.hpp"

namespace conesphere {

namespace {

// s^2 + 2 p s + q = 0 with the discriminant supplied in factored form.
RootPair solve(Real p, Real q, Real disc) {
  RootPair r;
  r.discriminant = disc;
  if (disc <= kDoubleRootTolerance && !(q <= 0.0)) {
    // q <= 0 forces real roots (apex inside or on the sphere).
    r.re = -p;
    r.im = std::sqrt(std::max(-disc, Real{0}));
    return r;
  }
  r.real = true;
  const Real root = std::sqrt(std::max(disc, Real{0}));
  const Real big = p >= 0.0 ? -p - root : -p + root;
  const Real other = big != 0.0 ? q / big : 0.0;
  r.lo = std::min(big, other);
  r.hi = std::max(big, other);
  r.re = -p;
  return r;
}

}  // namespace

SliceRoots slice_roots(Real d_hat, Real b_hat, Real phi) {
  const Real s = std::sin(phi);
  const Real c = std::cos(phi);
  const Real q = d_hat * d_hat + b_hat * b_hat - 1.0;
  // p^2 - q = 1 - (d sin - b cos)^2 for pair 1 and 1 - (d sin + b cos)^2 for pair 2.
  const Real w1 = d_hat * s - b_hat * c;
  const Real w2 = d_hat * s + b_hat * c;
  SliceRoots out;
  out.z1 = solve(d_hat * c + b_hat * s, q, (1.0 - w1) * (1.0 + w1));
  out.z2 = solve(d_hat * c - b_hat * s, q, (1.0 - w2) * (1.0 + w2));
  return out;
}

SliceRoots slice_roots(const CanonicalGeometry& g) {
  const Real R = g.R;
  return slice_roots(g.d / R, g.b / R, Real{g.phi});
}

bool cap_inclusion(double Z, double phi, double b) { return Z * std::tan(phi) > b; }

CaseLabel classify(const CanonicalGeometry& g) {
  validate(g);
  if (g.phi > kHalfPi + kHalfSpaceTolerance) return CaseLabel::Stretched;
  if (std::abs(g.phi - kHalfPi) < kHalfSpaceTolerance) return CaseLabel::HalfSpace;

  if (g.b == 0.0) {
    if (g.d > g.R) return CaseLabel::Disjoint;
    if (g.d >= -g.R) return CaseLabel::OnAxisApexInside;
    return std::sin(g.phi) * -g.d >= g.R ? CaseLabel::SphereInsideCone : CaseLabel::OnAxisApexOutside;
  }

  // Same precision as slice_roots, so the label agrees with the root signs.
  const Real R = g.R;
  const Real d_hat = g.d / R, b_hat = g.b / R;
  if (d_hat * d_hat + b_hat * b_hat - 1.0 <= 0.0) return CaseLabel::OffAxisApexInside;

  const SliceRoots roots = slice_roots(g);
  if (roots.z2.forward()) return roots.z1.forward() ? CaseLabel::OffAxisTwoBranch : CaseLabel::OffAxisOneBranch;

  // No wall crossings on the forward nappe: the sphere is either wholly inside
  // or wholly outside, decided by where its center sits.
  const double depth = -g.d;
  return depth > 0.0 && g.b < depth * std::tan(g.phi) ? CaseLabel::SphereInsideCone : CaseLabel::Disjoint;
}

}  // namespace conesphere
