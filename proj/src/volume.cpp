#include "conesphere/volume.hpp"

#include "conesphere/errors.hpp"
#include "conesphere/offaxis.hpp"
#include "conesphere/onaxis.hpp"
#include "conesphere/slice_classifier.hpp"

namespace conesphere {

namespace {

VolumeResult analytic(const CanonicalGeometry& g, CaseLabel label) {
  switch (label) {
    case CaseLabel::Disjoint: {
      VolumeResult r;
      r.label = label;
      return r;
    }
    case CaseLabel::SphereInsideCone: {
      VolumeResult r;
      r.label = label;
      r.volume = sphere_volume(g.R);
      r.regions = {{"sphere", r.volume}};
      return r;
    }
    case CaseLabel::OffAxisApexInside:
    case CaseLabel::OffAxisTwoBranch:
    case CaseLabel::OffAxisOneBranch:
      return volume_off_axis(g, label);
    case CaseLabel::Stretched: {
      if (g.b == 0.0 || g.phi == kPi) return volume_stretched(g.R, g.d, g.phi);
      const CanonicalGeometry flipped{g.R, -g.d, g.b, kPi - g.phi};
      const VolumeResult inner = analytic(flipped, classify(flipped));
      VolumeResult r = inner;
      r.label = label;
      r.volume = sphere_volume(g.R) - inner.volume;
      r.regions = {{"sphere", sphere_volume(g.R)}, {"excluded_cone", -inner.volume}};
      return r;
    }
    case CaseLabel::HalfSpace:
    case CaseLabel::OnAxisApexInside:
    case CaseLabel::OnAxisApexOutside: {
      // The half-space volume does not depend on b.
      VolumeResult r = volume_on_axis(g.R, g.d, g.phi);
      r.label = label;
      return r;
    }
  }
  throw DomainError("unhandled case label");
}

}  // namespace

VolumeResult compute_volume(const CanonicalGeometry& g, const VolumeOptions& options) {
  validate(g);
  const CaseLabel label = classify(g);
  switch (options.method) {
    case Method::Quadrature:
      return volume_quadrature(g, options.quad);
    case Method::MonteCarlo: {
      const McResult mc = mc_volume(g, options.mc);
      VolumeResult r;
      r.label = label;
      r.method = Method::MonteCarlo;
      r.volume = mc.estimate;
      r.error_estimate = mc.sigma;
      r.regions = {{"sampled", mc.estimate}};
      return r;
    }
    case Method::Closed:
    case Method::Elliptic:
      return analytic(g, label);
    case Method::Auto:
      try {
        return analytic(g, label);
      } catch (const ConditioningError&) {
        VolumeResult r = volume_quadrature(g, options.quad);
        r.fallback = true;
        return r;
      }
  }
  throw InvalidInput("unknown method");
}

}  // namespace conesphere
