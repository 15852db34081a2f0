#include "conesphere/onaxis.hpp"

#include <algorithm>
#include <cmath>

#include "conesphere/errors.hpp"
#include "conesphere/geometry.hpp"

namespace conesphere {

double cone_volume(double rho, double height) { return kPi * rho * rho * height / 3.0; }

double cap_volume(double R, double h) {
  if (!(h >= 0.0) || h > 2.0 * R) throw InvalidInput("cap thickness must lie in [0, 2R]");
  return kPi * h * h * (3.0 * R - h) / 3.0;
}

namespace {

double clamped_cap(double R, double h) { return cap_volume(R, std::clamp(h, 0.0, 2.0 * R)); }

// Thickness R - u of the cap above altitude u (relative to the center) where
// the slice radius is rho, avoiding the cancellation in R - u as u -> R.
double cap_above(double R, double u, double rho) { return u >= 0.0 ? rho * rho / (R + u) : R - u; }

double cap_below(double R, double u, double rho) { return u <= 0.0 ? rho * rho / (R - u) : R + u; }

bool is_half_space(double phi) { return std::abs(phi - kHalfPi) < kHalfSpaceTolerance; }

VolumeResult half_space(double R, double d) {
  VolumeResult r;
  r.label = CaseLabel::HalfSpace;
  r.volume = clamped_cap(R, R - d);
  r.regions = {{"cap", r.volume}};
  return r;
}

VolumeResult from_regions(CaseLabel label, std::vector<Region> regions) {
  VolumeResult r;
  r.label = label;
  for (const auto& reg : regions) r.volume += reg.volume;
  r.regions = std::move(regions);
  return r;
}

}  // namespace

double transition_altitude(double R, double d, double phi) {
  const double s = std::sin(phi);
  const double c = std::cos(phi);
  const double disc = (R - d * s) * (R + d * s);
  if (disc < 0.0) throw DomainError("transition_altitude: cone wall misses the sphere");
  const double root = std::sqrt(disc);
  // Slant distance from the apex; the second form avoids cancellation for d > 0.
  const double t = d <= 0.0 ? -d * c + root : (R - d) * (R + d) / (d * c + root);
  return t * c;
}

OnAxisBreakdown breakdown_on_axis_inside(double R, double d, double phi) {
  if (d * d > R * R) throw DomainError("apex lies outside the sphere");
  OnAxisBreakdown out;
  const double s = std::sin(phi);
  const double c = std::cos(phi);
  const double root = std::sqrt(std::max((R - d * s) * (R + d * s), 0.0));
  const double t = d <= 0.0 ? -d * c + root : (R - d) * (R + d) / (d * c + root);
  out.Z1 = out.Z2 = t * c;
  out.rho1 = out.rho2 = t * s;
  out.north_cap_height = cap_above(R, out.Z2 + d, out.rho2);
  out.regions = {{"cone", cone_volume(out.rho1, out.Z1)}, {"north_cap", clamped_cap(R, out.north_cap_height)}};
  return out;
}

OnAxisBreakdown breakdown_on_axis_outside(double R, double d, double phi) {
  if (d >= -R) throw DomainError("volume_on_axis_outside requires d < -R");
  OnAxisBreakdown out;
  const double s = std::sin(phi);
  const double c = std::cos(phi);
  const double disc = (R + d * s) * (R - d * s);
  if (disc <= 0.0) {
    out.regions = {{"sphere", sphere_volume(R)}};
    return out;
  }
  const double root = std::sqrt(disc);
  const double t2 = -d * c + root;
  const double t1 = (d - R) * (d + R) / t2;
  out.Z1 = t1 * c;
  out.Z2 = t2 * c;
  out.rho1 = t1 * s;
  out.rho2 = t2 * s;
  out.south_cap_height = cap_below(R, out.Z1 + d, out.rho1);
  out.north_cap_height = cap_above(R, out.Z2 + d, out.rho2);
  const double frustum =
      kPi * (2.0 * root * c) * (out.rho1 * out.rho1 + out.rho1 * out.rho2 + out.rho2 * out.rho2) / 3.0;
  out.regions = {{"south_cap", clamped_cap(R, out.south_cap_height)},
                 {"truncated_cone", frustum},
                 {"north_cap", clamped_cap(R, out.north_cap_height)}};
  return out;
}

VolumeResult volume_on_axis_inside(double R, double d, double phi) {
  if (is_half_space(phi)) {
    auto r = half_space(R, d);
    r.label = CaseLabel::OnAxisApexInside;
    return r;
  }
  return from_regions(CaseLabel::OnAxisApexInside, breakdown_on_axis_inside(R, d, phi).regions);
}

VolumeResult volume_on_axis_outside(double R, double d, double phi) {
  if (d >= -R) throw DomainError("volume_on_axis_outside requires d < -R");
  if (is_half_space(phi)) {
    auto r = half_space(R, d);
    r.label = CaseLabel::SphereInsideCone;
    return r;
  }
  auto parts = breakdown_on_axis_outside(R, d, phi);
  const bool whole = parts.regions.size() == 1;
  return from_regions(whole ? CaseLabel::SphereInsideCone : CaseLabel::OnAxisApexOutside, std::move(parts.regions));
}

VolumeResult volume_stretched(double R, double d, double phi) {
  const double flipped = kPi - phi;
  VolumeResult inner;
  if (flipped > 0.0) inner = volume_on_axis(R, -d, flipped);
  VolumeResult r;
  r.label = CaseLabel::Stretched;
  r.volume = sphere_volume(R) - inner.volume;
  r.regions = {{"sphere", sphere_volume(R)}, {"excluded_cone", -inner.volume}};
  return r;
}

VolumeResult volume_on_axis(double R, double d, double phi) {
  if (phi > kHalfPi + kHalfSpaceTolerance) return volume_stretched(R, d, phi);
  if (is_half_space(phi)) return half_space(R, d);
  if (d > R) return from_regions(CaseLabel::Disjoint, {});
  if (d < -R) return volume_on_axis_outside(R, d, phi);
  return volume_on_axis_inside(R, d, phi);
}

}  // namespace conesphere
