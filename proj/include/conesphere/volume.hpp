#pragma once

#include "conesphere/geometry.hpp"
#include "conesphere/montecarlo.hpp"
#include "conesphere/quadrature.hpp"
#include "conesphere/result.hpp"

namespace conesphere {

struct VolumeOptions {
  Method method = Method::Auto;
  QuadratureSpec quad;
  McSpec mc;
};

/// Intersection volume of the solid cone and the solid sphere.
///
/// Auto uses closed forms on the axis and for the trivial labels, elliptic
/// reductions off the axis, and slice quadrature when the elliptic path is
/// ill-conditioned (fallback = true). Closed and Elliptic never fall back and
/// throw ConditioningError instead.
VolumeResult compute_volume(const CanonicalGeometry& geom, const VolumeOptions& options = {});

inline VolumeResult compute_volume(const SceneGeometry& scene, const VolumeOptions& options = {}) {
  return compute_volume(reduce_to_canonical(scene), options);
}

}  // namespace conesphere
