#include "conesphere/geometry.hpp"

#include <cmath>

#include "conesphere/errors.hpp"

namespace conesphere {

double norm(Vec3 a) { return std::hypot(a.x, a.y, a.z); }

namespace {

bool finite(Vec3 v) { return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z); }

}  // namespace

void validate(const CanonicalGeometry& g) {
  if (!std::isfinite(g.R) || !std::isfinite(g.d) || !std::isfinite(g.b) || !std::isfinite(g.phi))
    throw InvalidInput("geometry parameters must be finite");
  if (!(g.R > 0.0)) throw InvalidInput("sphere radius R must be positive");
  if (g.b < 0.0) throw InvalidInput("impact parameter b must be nonnegative");
  if (!(g.phi > 0.0) || g.phi > kPi) throw InvalidInput("half-aperture phi must lie in (0, pi]");
}

CanonicalGeometry reduce_to_canonical(const SceneGeometry& scene) {
  const Vec3& S = scene.sphere_center;
  const Vec3& C = scene.apex;
  const Vec3& a = scene.axis;
  if (!finite(S) || !finite(C) || !finite(a) || !std::isfinite(scene.R) || !std::isfinite(scene.phi))
    throw InvalidInput("scene coordinates must be finite");
  const double aa = dot(a, a);
  if (!(aa > 0.0)) throw InvalidInput("cone axis vector must be nonzero");

  const double t = dot(C - S, a) / aa;
  CanonicalGeometry g;
  g.R = scene.R;
  g.phi = scene.phi;
  g.b = norm(S - C + t * a);
  g.d = t * std::sqrt(aa);
  validate(g);
  return g;
}

ReducedScalars normalize(const CanonicalGeometry& g) { return {g.d / g.R, g.b / g.R}; }

}  // namespace conesphere
