#include "conesphere/offaxis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conesphere/errors.hpp"
#include "conesphere/onaxis.hpp"

namespace conesphere {

namespace {

using Poly = std::vector<Real>;

constexpr Real kPiR = 3.141592653589793238462643383279502884L;  // ascending coefficients

Poly multiply(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Rounding of each term is ~eps relative to its magnitude; the factor covers
// the few operations per term.
constexpr Real kRoundingFactor = 32 * std::numeric_limits<Real>::epsilon();

struct Terms {
  Tracked v1, v2, v_delta;
};

Real alpha1_at(int pair) { return pair == 1 ? kPiR : 0.0; }

Real alpha2_at(int pair, Real s, Real sin_phi, Real b_hat) {
  return pair == 2 && sin_phi * s > b_hat ? kPiR : 0.0;
}

Terms slice_terms(const SliceInterval& iv, const CanonicalGeometry& g, bool want_v1, bool want_v2, bool want_delta) {
  const Real R = g.R;
  const Real dh = g.d / R, bh = g.b / R;
  const Real c = std::cos(Real{g.phi});
  const Real S = std::sin(Real{g.phi});
  const Real R3 = R * R * R;
  const Real lo = iv.factorization.lower;
  const Real hi = iv.factorization.upper;
  const QuarticIntegrals Q(iv.factorization);
  Terms t;

  if (want_v1) {
    const Real kappa = 1.0 - dh * dh - bh * bh;
    const Tracked boundary =
        Tracked::exact(hi * hi * hi * alpha1_at(iv.upper_pair) / 3.0) - Tracked::exact(lo * lo * lo * alpha1_at(iv.lower_pair) / 3.0);
    t.v1 = (R3 * c * S * S) * (boundary + (Q.power(4) + kappa * Q.power(2)) / 3.0);
  }

  if (want_v2) {
    const auto G = [&](Real s) {
      const Real y = c * s + dh;
      return s - y * y * y / (3.0 * c);
    };
    const Tracked boundary = Tracked::exact(G(hi) * alpha2_at(iv.upper_pair, hi, S, bh)) -
                             Tracked::exact(G(lo) * alpha2_at(iv.lower_pair, lo, S, bh));

    // -2 G(s) (s + c d) from differentiating the sphere-sector angle.
    const Poly Gs = {-dh * dh * dh / (3.0 * c), 1.0 - dh * dh, -c * dh, -c * c / 3.0};
    Poly integrand = multiply(Gs, {-2.0 * c * dh, -2.0});

    const PartialFractions pf = sphere_partial_fractions(dh, bh, g.phi);
    const Real w = 1.0 / (3.0 * c * c);
    Poly ypow = {1.0};
    for (std::size_t j = 0; j < pf.poly.size(); ++j) {
      for (std::size_t i = 0; i < ypow.size(); ++i) integrand[i] += w * pf.poly[j] * ypow[i];
      ypow = multiply(ypow, {dh, c});
    }

    Tracked sum = boundary;
    for (std::size_t m = 0; m < integrand.size(); ++m) sum += integrand[m] * Q.power(static_cast<int>(m));
    // 1/(1 - y) = 1/(c (s+ - s)),  1/(1 + y) = -1/(c (s- - s))
    const Real s_plus = (1.0 - dh) / c;
    const Real s_minus = (-1.0 - dh) / c;
    sum += (w * pf.pole_plus / c) * Q.pole(s_plus);
    sum += (-w * pf.pole_minus / c) * Q.pole(s_minus);
    t.v2 = (R3 * c) * sum;
  }

  if (want_delta) t.v_delta = (0.5 * R3 * c) * Q.root_integral();
  return t;
}

QuarticFactorization factorization(const SliceRoots& roots, Real lower, Real upper) {
  QuarticFactorization f;
  f.lower = lower;
  f.upper = upper;
  if (!roots.z1.real) {
    f.complex_pair = true;
    f.roots = {roots.z2.hi, roots.z2.lo, 0.0, 0.0};
    f.pair_re = roots.z1.re;
    f.pair_im = roots.z1.im;
    return f;
  }
  f.roots = {roots.z1.lo, roots.z1.hi, roots.z2.lo, roots.z2.hi};
  std::sort(f.roots.begin(), f.roots.end(), std::greater<>());
  return f;
}

}  // namespace

PartialFractions sphere_partial_fractions(Real d, Real b, Real phi) {
  const Real c = std::cos(phi);
  const Real s = std::sin(phi);
  const Real S2 = s * s, C2 = c * c, d2 = d * d, b2 = b * b;
  PartialFractions pf;
  pf.poly = {2 * S2 + 8 * d2 * S2 - 2 * b2 * C2, d * (-7 + 4 * C2), C2 - d2 * S2 + b2 * C2 + 2, 2 * d * S2, -1.0};
  pf.pole_plus = -0.5 * (2 * S2 + 8 * d2 * S2 - 2 * b2 * C2 - 7 * d * S2 - 3 * d2 * d * S2 + 3 * d * b2 * C2);
  pf.pole_minus = 0.5 * (-2 * S2 - 8 * d2 * S2 + 2 * b2 * C2 - 7 * d * S2 - 3 * d2 * d * S2 + 3 * d * b2 * C2);
  return pf;
}

Tracked triangle_term(const SliceInterval& iv, const CanonicalGeometry& g) {
  return slice_terms(iv, g, false, false, true).v_delta;
}

Tracked cone_sector_term(const SliceInterval& iv, const CanonicalGeometry& g) {
  return slice_terms(iv, g, true, false, false).v1;
}

Tracked sphere_sector_term(const SliceInterval& iv, const CanonicalGeometry& g) {
  return slice_terms(iv, g, false, true, false).v2;
}

OffAxisBreakdown breakdown_off_axis(const CanonicalGeometry& g, CaseLabel label) {
  validate(g);
  if (label != CaseLabel::OffAxisApexInside && label != CaseLabel::OffAxisTwoBranch && label != CaseLabel::OffAxisOneBranch)
    throw DomainError("off-axis assembly called with a non off-axis label");
  if (!(g.phi < kHalfPi)) throw DomainError("off-axis assembly requires phi < pi/2");

  const Real R = g.R;
  const Real bh = g.b / R;
  const Real c = std::cos(Real{g.phi});
  const Real S = std::sin(Real{g.phi});
  const Real tan_phi = S / c;
  const SliceRoots roots = slice_roots(g);
  if (!roots.z2.real) throw DomainError("off-axis assembly: no outer crossings");

  OffAxisBreakdown out;
  Real total = 0.0, scale = 0.0;
  const auto altitude = [&](Real s) { return R * c * s; };
  const auto cone = [&](Real s) {
    const Real Z = altitude(s);
    return kPiR * tan_phi * tan_phi * Z * Z * Z / 3;
  };
  const auto cap = [&](Real h) {
    h = std::clamp(h, Real{0}, 2 * R);
    return kPiR * h * h * (3 * R - h) / 3;
  };
  const auto add = [&](const char* name, Real v) {
    out.regions.push_back({name, static_cast<double>(v)});
    total += v;
    scale += std::abs(v);
  };
  const auto lens = [&](const char* name, Real lo, int lo_pair, Real hi, int hi_pair) {
    // The apex on the sphere with the cone leaving it: the lens shrinks to a point.
    if (!(hi > lo)) {
      out.regions.push_back({name, 0.0});
      return;
    }
    const SliceInterval iv{factorization(roots, lo, hi), lo_pair, hi_pair};
    const Terms t = slice_terms(iv, g, true, true, true);
    out.slices.push_back({static_cast<double>(altitude(lo)), static_cast<double>(altitude(hi)), static_cast<double>(t.v1.value),
                          static_cast<double>(t.v2.value), static_cast<double>(t.v_delta.value)});
    scale += t.v1.scale + t.v2.scale + t.v_delta.scale;
    const Real v = t.v1.value + t.v2.value - t.v_delta.value;
    out.regions.push_back({name, static_cast<double>(v)});
    total += v;
  };
  const auto north_cap = [&]() {
    if (S * roots.z2.hi > bh) add("north_cap", cap(R - g.d - altitude(roots.z2.hi)));
  };
  const auto south_cap = [&]() {
    if (S * roots.z2.lo > bh) add("south_cap", cap(R + g.d + altitude(roots.z2.lo)));
  };

  switch (label) {
    case CaseLabel::OffAxisApexInside:
      add("cone", cone(roots.z1.hi));
      lens("lens", roots.z1.hi, 1, roots.z2.hi, 2);
      north_cap();
      break;
    case CaseLabel::OffAxisTwoBranch:
      south_cap();
      lens("lower_lens", roots.z2.lo, 2, roots.z1.lo, 1);
      add("truncated_cone", cone(roots.z1.hi) - cone(roots.z1.lo));
      lens("upper_lens", roots.z1.hi, 1, roots.z2.hi, 2);
      north_cap();
      break;
    default:
      south_cap();
      lens("lens", roots.z2.lo, 2, roots.z2.hi, 2);
      north_cap();
      break;
  }
  out.volume = static_cast<double>(total);
  out.rounding_bound = static_cast<double>(kRoundingFactor * scale);
  return out;
}

VolumeResult volume_off_axis(const CanonicalGeometry& g, CaseLabel label) {
  const OffAxisBreakdown b = breakdown_off_axis(g, label);
  if (!std::isfinite(b.volume) || b.rounding_bound > kOffAxisRelativeBound * std::abs(b.volume))
    throw ConditioningError("off-axis reduction is ill-conditioned at this geometry");
  VolumeResult r;
  r.volume = std::clamp(b.volume, 0.0, sphere_volume(g.R));
  r.label = label;
  r.method = Method::Elliptic;
  r.regions = b.regions;
  r.error_estimate = b.rounding_bound;
  return r;
}

}  // namespace conesphere
