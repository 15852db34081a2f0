#pragma once

#include <cmath>
#include <vector>

#include "conesphere/geometry.hpp"

namespace conesphere {

/// A value together with the sum of absolute magnitudes of the terms that
/// produced it. Rounding error is on the order of eps * scale, so scale/|value|
/// is a running condition number.
struct Tracked {
  Real value = 0.0;
  Real scale = 0.0;

  static Tracked exact(Real v) { return {v, std::abs(v)}; }
};

inline Tracked operator+(Tracked a, Tracked b) { return {a.value + b.value, a.scale + b.scale}; }
inline Tracked operator-(Tracked a, Tracked b) { return {a.value - b.value, a.scale + b.scale}; }
inline Tracked operator-(Tracked a) { return {-a.value, a.scale}; }
inline Tracked operator*(Real c, Tracked a) { return {c * a.value, std::abs(c) * a.scale}; }
inline Tracked operator*(Tracked a, Real c) { return c * a; }
inline Tracked operator/(Tracked a, Real c) { return {a.value / c, a.scale / std::abs(c)}; }
inline Tracked& operator+=(Tracked& a, Tracked b) { return a = a + b; }

// Complete Legendre integrals in the parameter convention (k2 = k^2):
//   K  = int_0^{pi/2} dt / sqrt(1 - k2 sin^2 t)
//   E  = int_0^{pi/2} sqrt(1 - k2 sin^2 t) dt
//   Pi = int_0^{pi/2} dt / ((1 - n sin^2 t) sqrt(1 - k2 sin^2 t)), principal value for n > 1
Real ellint_K(Real k2);
Real ellint_E(Real k2);
Real ellint_Pi(Real n, Real k2);

/// Below this distance from the singular values (k2 -> 1, alpha2 -> 1) the
/// reductions report ConditioningError.
inline constexpr Real kConditioningGap = 1e-10;

/// V_j = int_0^K du / (1 - alpha2 sn^2 u)^j for j = 0..m_max, at complete
/// amplitude (where the sn cn dn boundary terms vanish).
std::vector<Real> v_sequence(int m_max, Real alpha2, Real k2);
std::vector<Tracked> v_sequence_tracked(int m_max, Real alpha2, Real k2);

/// Upper limit of the R-sequence integrals: u = K (amplitude pi/2) or u = 2K
/// (amplitude pi, reached when a quartic with a complex root pair is
/// integrated between its two real roots).
enum class Amplitude { Quarter, Half };

/// R_m = int_0^u du / (1 + alpha cn u)^m for m = -2..m_max.
class RSequence {
 public:
  RSequence() = default;
  explicit RSequence(std::vector<Tracked> values) : values_(std::move(values)) {}

  Real operator[](int m) const { return values_.at(static_cast<std::size_t>(m + 2)).value; }
  Tracked tracked(int m) const { return values_.at(static_cast<std::size_t>(m + 2)); }
  int max_index() const { return static_cast<int>(values_.size()) - 3; }

 private:
  std::vector<Tracked> values_;
};

RSequence r_sequence(int m_max, Real alpha, Real k2, Amplitude amplitude = Amplitude::Quarter);

/// S_q = int_0^K sn^{2q} u du and C_q = int_0^K cn^{2q} u du for q = 0..q_max.
/// Forward recursion where it is stable, Miller's backward recursion
/// normalized by S_0 = C_0 = K otherwise.
std::vector<Real> sn_moments(int q_max, Real k2);
std::vector<Real> cn_moments(int q_max, Real k2);

/// Y_j = int_0^K sn^{2j} u / (1 - alpha2 sn^2 u)^j du, j = 0..m_max.
/// Moments about the upper root of a real quartic; small |alpha2| is summed
/// as a series over sn moments instead of differencing the V-sequence.
std::vector<Tracked> y_sequence(int m_max, Real alpha2, Real k2);

/// Z_j = int_0^{2K} cn^j u / (1 + alpha cn u)^j du, j = 0..m_max.
/// Moments about the interval center for a quartic with a complex pair.
std::vector<Tracked> z_sequence(int m_max, Real alpha, Real k2);

}  // namespace conesphere
