#include "conesphere/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "conesphere/circle_lens.hpp"
#include "conesphere/errors.hpp"
#include "conesphere/onaxis.hpp"
#include "conesphere/slice_classifier.hpp"

namespace conesphere {

namespace {

bool half_space(double phi) { return std::abs(phi - kHalfPi) < kHalfSpaceTolerance; }

}  // namespace

double slice_area(double z, const CanonicalGeometry& g) {
  // Distances to the sphere's top and bottom, grouped so a thin cap keeps its digits.
  const double top = (g.R - g.d) - z;
  const double bottom = (g.R + g.d) + z;
  if (z < 0.0 || top <= 0.0 || bottom <= 0.0) return 0.0;
  const double r2sq = top * bottom;
  if (half_space(g.phi)) return kPi * r2sq;
  if (g.phi > kHalfPi) throw DomainError("slice_area requires phi <= pi/2");
  return lens_area(z * std::tan(g.phi), std::sqrt(r2sq), g.b);
}

std::vector<double> slice_breakpoints(double z_lo, double z_hi, const CanonicalGeometry& g) {
  std::vector<double> out;
  if (half_space(g.phi) || g.phi > kHalfPi) return out;
  const auto [dh, bh] = normalize(g);
  const SliceRoots roots = slice_roots(dh, bh, g.phi);
  const double scale = g.R * std::cos(g.phi);
  for (const RootPair& p : {roots.z1, roots.z2}) {
    if (!p.real) continue;
    for (double s : {p.lo, p.hi}) {
      const double z = scale * s;
      if (z > z_lo && z < z_hi) out.push_back(z);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

QuadResult integrate_slices(double z_lo, double z_hi, const CanonicalGeometry& g, const QuadratureSpec& spec) {
  if (!(z_lo <= z_hi)) throw InvalidInput("integrate_slices: z_lo must not exceed z_hi");
  if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0)) throw InvalidInput("quadrature tolerances must be positive");
  QuadResult res;
  std::vector<double> knots = {z_lo};
  for (double z : slice_breakpoints(z_lo, z_hi, g)) knots.push_back(z);
  knots.push_back(z_hi);

  double l1 = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double mid = 0.5 * (knots[i] + knots[i + 1]);
    const double half = 0.5 * (knots[i + 1] - knots[i]);
    if (half <= 0.0) continue;
    auto f = [&](double theta) {
      ++res.evaluations;
      return slice_area(mid - half * std::cos(theta), g) * half * std::sin(theta);
    };
    double err = 0.0, piece_l1 = 0.0;
    res.value += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, 0.0, kPi, spec.max_depth, spec.rel_tol,
                                                                              &err, &piece_l1);
    res.error += err;
    l1 += piece_l1;
  }
  const double R3 = g.R * g.R * g.R;
  res.converged = res.error <= std::max(spec.abs_tol * R3, spec.rel_tol * std::max(std::abs(res.value), l1));
  return res;
}

VolumeResult volume_quadrature(const CanonicalGeometry& g, const QuadratureSpec& spec) {
  validate(g);
  VolumeResult r;
  r.method = Method::Quadrature;
  r.label = classify(g);
  if (g.phi == kPi) {
    // Everything but the negative axis.
    r.volume = sphere_volume(g.R);
    r.regions = {{"sphere", r.volume}};
    return r;
  }
  if (g.phi > kHalfPi + kHalfSpaceTolerance) {
    const VolumeResult inner = volume_quadrature({g.R, -g.d, g.b, kPi - g.phi}, spec);
    r.volume = sphere_volume(g.R) - inner.volume;
    r.regions = {{"sphere", sphere_volume(g.R)}, {"excluded_cone", -inner.volume}};
    r.error_estimate = inner.error_estimate;
    r.accuracy_warning = inner.accuracy_warning;
    return r;
  }
  const double z_lo = std::max(0.0, -g.d - g.R);
  const double z_hi = g.R - g.d;
  if (z_hi > z_lo) {
    const QuadResult q = integrate_slices(z_lo, z_hi, g, spec);
    r.volume = std::clamp(q.value, 0.0, sphere_volume(g.R));
    r.error_estimate = q.error;
    r.accuracy_warning = !q.converged;
  }
  r.regions = {{"slices", r.volume}};
  return r;
}

}  // namespace conesphere
