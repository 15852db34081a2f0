#pragma once

#include <numbers>

namespace conesphere {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
constexpr Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
double norm(Vec3 a);

/// The four principal parameters of a cone/sphere placement.
///
/// Cone frame: apex at the origin, axis along +z. The sphere center sits at
/// (-b, 0, -d), so d > 0 puts the apex above the sphere's equatorial plane.
struct CanonicalGeometry {
  double R = 1.0;    ///< sphere radius, > 0
  double d = 0.0;    ///< signed axial apex/center distance
  double b = 0.0;    ///< impact parameter (center to axis), >= 0
  double phi = 0.0;  ///< cone half-aperture in radians, (0, pi]
};

/// Raw 3-D placement before reduction.
struct SceneGeometry {
  Vec3 sphere_center;
  Vec3 apex;
  Vec3 axis;  ///< direction from the apex into the cone; any nonzero length
  double R = 1.0;
  double phi = 0.0;
};

struct ReducedScalars {
  double d_hat = 0.0;
  double b_hat = 0.0;
};

/// Working precision of the elliptic reduction.
using Real = long double;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;

/// Throws InvalidInput unless R > 0, b >= 0, 0 < phi <= pi, all finite.
void validate(const CanonicalGeometry& geom);

/// Projects the sphere center onto the cone axis:
///   t = (C - S).a / (a.a),  b = |S - C + t a|,  d = t |a|.
CanonicalGeometry reduce_to_canonical(const SceneGeometry& scene);

ReducedScalars normalize(const CanonicalGeometry& geom);

constexpr double sphere_volume(double R) { return 4.0 * kPi * R * R * R / 3.0; }

}  // namespace conesphere
