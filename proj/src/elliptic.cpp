#include "conesphere/elliptic.hpp"

#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/ellint_2.hpp>
#include <boost/math/special_functions/ellint_3.hpp>
#include <boost/math/special_functions/ellint_rd.hpp>
#include <boost/math/special_functions/ellint_rf.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "conesphere/errors.hpp"

namespace conesphere {

namespace {

void check_modulus(Real k2, bool allow_one) {
  if (!std::isfinite(k2) || k2 < 0.0 || k2 > 1.0 || (!allow_one && k2 == 1.0))
    throw DomainError("elliptic modulus k^2 must lie in [0, 1)");
}

constexpr Real kRounding = 32 * std::numeric_limits<Real>::epsilon();

// V_j by quadrature over the amplitude. The recursion divides by
// (1 - alpha2)(k2 - alpha2) at every step and loses digits when alpha2 is
// close to k2; the integrand itself stays smooth there.
Tracked v_direct(int j, Real a2, Real k2) {
  Real err = 0;
  const Real v = boost::math::quadrature::gauss_kronrod<Real, 61>::integrate(
      [&](Real t) {
        const Real s = std::sin(t);
        return std::pow(1 - a2 * s * s, -j) / std::sqrt(1 - k2 * s * s);
      },
      Real{0}, std::numbers::pi_v<Real> / 2, 12, Real{1e-17}, &err);
  return {v, std::max(std::abs(v), err / kRounding)};
}

}  // namespace

Real ellint_K(Real k2) {
  check_modulus(k2, false);
  return boost::math::ellint_1(std::sqrt(k2));
}

Real ellint_E(Real k2) {
  check_modulus(k2, true);
  return boost::math::ellint_2(std::sqrt(k2));
}

Real ellint_Pi(Real n, Real k2) {
  check_modulus(k2, false);
  if (!std::isfinite(n) || n == 1.0) throw DomainError("elliptic characteristic n = 1 is a pole");
  if (n == 0.0) return ellint_K(k2);
  // Principal value beyond the pole: Pi(n) = K - Pi(k^2 / n).
  if (n > 1.0) return ellint_K(k2) - ellint_Pi(k2 / n, k2);
  return boost::math::ellint_3(std::sqrt(k2), n);
}

std::vector<Tracked> v_sequence_tracked(int m_max, Real a2, Real k2) {
  if (m_max < 0) throw InvalidInput("v_sequence: m_max must be nonnegative");
  check_modulus(k2, false);
  const Real K = ellint_K(k2);
  std::vector<Tracked> V;
  V.reserve(static_cast<std::size_t>(m_max) + 1);
  if (a2 == 0.0) {
    V.assign(static_cast<std::size_t>(m_max) + 1, Tracked::exact(K));
    return V;
  }
  const Real deg = (a2 - 1.0) * (k2 - a2);
  if (deg == 0.0) throw DomainError("v_sequence: degenerate characteristic (alpha^2 = 1 or alpha^2 = k^2)");
  if (std::abs(1.0 - a2) < kConditioningGap || 1.0 - k2 < kConditioningGap)
    throw ConditioningError("v_sequence: characteristic or modulus too close to 1");

  V.push_back(Tracked::exact(K));
  if (m_max == 0) return V;
  const Tracked P = Tracked::exact(ellint_Pi(a2, k2));
  V.push_back(P);
  if (m_max == 1) return V;

  const Real E = ellint_E(k2);
  V.push_back((a2 * Tracked::exact(E) + (k2 - a2) * Tracked::exact(K) + (2 * a2 * k2 + 2 * a2 - a2 * a2 - 3 * k2) * P) /
              (2.0 * deg));
  for (int m = 0; m + 3 <= m_max; ++m) {
    const Real c0 = (2 * m + 1) * k2;
    const Real c1 = 2.0 * (m + 1) * (a2 * k2 + a2 - 3 * k2);
    const Real c2 = (2 * m + 3) * (a2 * a2 - 2 * a2 * k2 - 2 * a2 + 3 * k2);
    const auto i = static_cast<std::size_t>(m);
    V.push_back((c0 * V[i] + c1 * V[i + 1] + c2 * V[i + 2]) / (2.0 * (m + 2) * (1.0 - a2) * (k2 - a2)));
  }
  for (int j = 2; j <= m_max; ++j) {
    Tracked& v = V[static_cast<std::size_t>(j)];
    if (kRounding * v.scale > 1e-13 * std::abs(v.value)) v = v_direct(j, a2, k2);
  }
  return V;
}

std::vector<Real> v_sequence(int m_max, Real alpha2, Real k2) {
  std::vector<Real> out;
  for (const auto& v : v_sequence_tracked(m_max, alpha2, k2)) out.push_back(v.value);
  return out;
}

namespace {

constexpr Real binom(int n, int k) {
  Real r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Solves x_{q+1} = (b_q x_q + c_q x_{q-1}) / a_q for q = 1..q_max-1 given x_0 = K and x_1.
// `growth` is the modulus of the unwanted solution's ratio; when forward
// amplification stays small the recursion runs forward, otherwise backward
// from a start index where the unwanted solution has died out.
template <class A, class B, class C>
std::vector<Real> minimal_solution(int q_max, Real x0, Real x1, Real growth, A a, B b, C c) {
  std::vector<Real> x(static_cast<std::size_t>(q_max) + 1);
  x[0] = x0;
  if (q_max == 0) return x;
  const bool forward = growth <= 1.0 || q_max * std::log(growth) <= std::log(100.0);
  if (forward) {
    x[1] = x1;
    for (int q = 1; q < q_max; ++q) {
      const auto i = static_cast<std::size_t>(q);
      x[i + 1] = (b(q) * x[i] + c(q) * x[i - 1]) / a(q);
    }
    return x;
  }
  // Backward: x_{q-1} = (a_q x_{q+1} - b_q x_q) / c_q.
  const Real extra = std::isinf(growth) ? 0.0 : std::ceil(std::log(1e20) / std::log(growth));
  const int start = q_max + 10 + static_cast<int>(std::min(extra, Real{200000}));
  Real hi = 0.0, mid = 1e-280;
  std::vector<Real> tail(static_cast<std::size_t>(q_max) + 1);
  for (int q = start; q >= 1; --q) {
    const Real lo = (a(q) * hi - b(q) * mid) / c(q);
    if (q - 1 <= q_max) tail[static_cast<std::size_t>(q - 1)] = lo;
    if (q <= q_max) tail[static_cast<std::size_t>(q)] = mid;
    hi = mid;
    mid = lo;
    if (std::abs(mid) > 1e250) {
      hi *= 1e-250;
      mid *= 1e-250;
      for (auto& t : tail) t *= 1e-250;
    }
  }
  for (int q = 1; q <= q_max; ++q) x[static_cast<std::size_t>(q)] = x0 * tail[static_cast<std::size_t>(q)] / tail[0];
  return x;
}

}  // namespace

std::vector<Real> sn_moments(int q_max, Real k2) {
  check_modulus(k2, false);
  const Real K = ellint_K(k2);
  const Real kp2 = 1.0 - k2;
  // (K - E)/k^2 = R_D(0, k'^2, 1)/3
  const Real S1 = boost::math::ellint_rd(0.0, kp2, 1.0) / 3.0;
  // (2q+1) k^2 S_{q+1} = 2q (1+k^2) S_q - (2q-1) S_{q-1}; the other solution grows like k^{-2q}.
  return minimal_solution(
      q_max, K, S1, k2 > 0.0 ? 1.0 / k2 : INFINITY, [&](int q) { return (2 * q + 1) * k2; },
      [&](int q) { return 2 * q * (1 + k2); }, [&](int q) { return -(2.0 * q - 1); });
}

std::vector<Real> cn_moments(int q_max, Real k2) {
  check_modulus(k2, false);
  const Real K = ellint_K(k2);
  const Real kp2 = 1.0 - k2;
  const Real C1 = boost::math::ellint_rf(0.0, kp2, 1.0) - boost::math::ellint_rd(0.0, kp2, 1.0) / 3.0;
  // (2q+1) k^2 C_{q+1} = 2q (2k^2-1) C_q + (2q-1) k'^2 C_{q-1}; the other solution grows like (k'^2/k^2)^q.
  return minimal_solution(
      q_max, K, C1, k2 > 0.0 ? kp2 / k2 : INFINITY, [&](int q) { return (2 * q + 1) * k2; },
      [&](int q) { return 2 * q * (2 * k2 - 1); }, [&](int q) { return (2.0 * q - 1) * kp2; });
}

namespace {

// Terms of sum_n C(m+n-1, n) x^n needed for ~1e-21 truncation, |x| <= 1/2.
int series_length(int m_max, Real x) {
  const Real ax = std::abs(x);
  if (ax == 0.0) return 1;
  int n = 1;
  while (binom(m_max + n - 1, n) * std::pow(ax, n) > 1e-21 && n < 400) ++n;
  return n + 1;
}

constexpr Real kSeriesLimit = 0.5;

}  // namespace

std::vector<Tracked> y_sequence(int m_max, Real a2, Real k2) {
  if (m_max < 0) throw InvalidInput("y_sequence: m_max must be nonnegative");
  std::vector<Tracked> Y(static_cast<std::size_t>(m_max) + 1);
  if (std::abs(a2) <= kSeriesLimit) {
    const int n_max = series_length(m_max, a2);
    const std::vector<Real> S = sn_moments(m_max + n_max, k2);
    Y[0] = Tracked::exact(S[0]);
    for (int j = 1; j <= m_max; ++j) {
      Tracked acc;
      Real w = 1.0;  // C(j+n-1, n) a2^n
      for (int n = 0; n < n_max; ++n) {
        acc += Tracked::exact(w * S[static_cast<std::size_t>(j + n)]);
        w *= a2 * (j + n) / (n + 1);
      }
      Y[static_cast<std::size_t>(j)] = acc;
    }
    return Y;
  }
  // sn^2 / (1 - a2 sn^2) = (1/(1 - a2 sn^2) - 1) / a2
  const std::vector<Tracked> V = v_sequence_tracked(m_max, a2, k2);
  for (int j = 0; j <= m_max; ++j) {
    Tracked acc;
    for (int i = 0; i <= j; ++i) acc += (binom(j, i) * ((j - i) % 2 ? -1.0 : 1.0)) * V[static_cast<std::size_t>(i)];
    Y[static_cast<std::size_t>(j)] = acc / std::pow(a2, j);
  }
  return Y;
}

std::vector<Tracked> z_sequence(int m_max, Real alpha, Real k2) {
  if (m_max < 0) throw InvalidInput("z_sequence: m_max must be nonnegative");
  std::vector<Tracked> Z(static_cast<std::size_t>(m_max) + 1);
  if (std::abs(alpha) <= kSeriesLimit) {
    const int n_max = series_length(m_max, alpha);
    // Odd powers of cn integrate to zero over [0, 2K].
    const std::vector<Real> C = cn_moments((m_max + n_max) / 2 + 1, k2);
    for (int j = 0; j <= m_max; ++j) {
      Tracked acc;
      Real w = 1.0;  // C(j+n-1, n) (-alpha)^n
      for (int n = 0; n < n_max; ++n) {
        if ((j + n) % 2 == 0) acc += Tracked::exact(2.0 * w * C[static_cast<std::size_t>((j + n) / 2)]);
        if (j == 0) break;
        w *= -alpha * (j + n) / (n + 1);
      }
      Z[static_cast<std::size_t>(j)] = acc;
    }
    return Z;
  }
  // cn / (1 + alpha cn) = (1 - 1/(1 + alpha cn)) / alpha
  const RSequence R = r_sequence(std::max(m_max, 1), alpha, k2, Amplitude::Half);
  for (int j = 0; j <= m_max; ++j) {
    Tracked acc;
    for (int i = 0; i <= j; ++i) acc += (binom(j, i) * (i % 2 ? -1.0 : 1.0)) * R.tracked(i);
    Z[static_cast<std::size_t>(j)] = acc / std::pow(alpha, j);
  }
  return Z;
}

RSequence r_sequence(int m_max, Real alpha, Real k2, Amplitude amplitude) {
  if (m_max < 1) throw InvalidInput("r_sequence: m_max must be at least 1");
  check_modulus(k2, false);
  const Real a2 = alpha * alpha;
  if (a2 == 1.0) throw DomainError("r_sequence: |alpha| = 1 is singular");
  if (std::abs(1.0 - a2) < kConditioningGap || 1.0 - k2 < kConditioningGap)
    throw ConditioningError("r_sequence: alpha or modulus too close to 1");

  const bool half = amplitude == Amplitude::Half;
  if (half && a2 > 1.0) throw DomainError("r_sequence: 1 + alpha cn vanishes inside (0, 2K) for |alpha| > 1");
  if (alpha < -1.0) throw DomainError("r_sequence: 1 + alpha cn vanishes inside (0, K) for alpha < -1");
  const Real span = half ? 2.0 : 1.0;
  const Real K = ellint_K(k2);
  const Real u = span * K;
  const Real k = std::sqrt(k2);
  const Real kp2 = 1.0 - k2;
  const Real kp = std::sqrt(kp2);

  std::vector<Tracked> R;
  R.reserve(static_cast<std::size_t>(m_max) + 3);
  if (alpha == 0.0) {
    R.assign(static_cast<std::size_t>(m_max) + 3, Tracked::exact(u));
    return RSequence(std::move(R));
  }

  // int_0^u cn = arccos(dn u) / k, which is asin(k)/k at K and 0 at 2K.
  const Real int_cn = half ? 0.0 : (k > 0.0 ? std::asin(k) / k : 1.0);
  // int_0^K cn^2 = (E - k'^2 K) / k^2 = R_F(0,k'^2,1) - R_D(0,k'^2,1)/3, free of cancellation.
  const Real int_cn2 =
      span * (boost::math::ellint_rf(0.0, kp2, 1.0) - boost::math::ellint_rd(0.0, kp2, 1.0) / 3.0);

  const Tracked Rm2 = Tracked::exact(u) + Tracked::exact(2.0 * alpha * int_cn) + Tracked::exact(a2 * int_cn2);
  const Tracked Rm1 = Tracked::exact(u) + Tracked::exact(alpha * int_cn);
  const Tracked R0 = Tracked::exact(u);

  // R_1 = [Pi(n) - alpha f1] / (1 - alpha^2), n = alpha^2 / (alpha^2 - 1).
  const Real n = a2 / (a2 - 1.0);
  Tracked R1 = Tracked::exact(span * ellint_Pi(n, k2));
  if (!half) {
    const Real q = k2 + kp2 * a2;
    const Real sd = 1.0 / kp;
    Real f1 = 0.0;
    if (n < k2) {
      const Real w = std::sqrt((1.0 - a2) / q);
      f1 = w * std::atan(sd / w);
    } else if (n == k2) {
      f1 = sd;
    } else {
      const Real sq = std::sqrt(q);
      const Real sa = std::sqrt(a2 - 1.0);
      f1 = 0.5 * std::sqrt((a2 - 1.0) / q) * std::log(std::abs((sa * kp + sq) / (sa * kp - sq)));
    }
    R1 = R1 - Tracked::exact(alpha * f1);
  }
  R1 = R1 / (1.0 - a2);

  R = {Rm2, Rm1, R0, R1};
  // alpha^3 sn dn / (1 + alpha cn)^(m-1) at the upper limit: k' at K, 0 at 2K.
  const Real boundary = half ? 0.0 : a2 * alpha * kp;
  const Real q = k2 + a2 * kp2;
  for (int m = 2; m <= m_max; ++m) {
    const auto at = [&](int j) { return R[static_cast<std::size_t>(j + 2)]; };
    const Tracked num = Tracked::exact(boundary) + ((2 * m - 3) * (2 * a2 * k2 - a2 - 2 * k2)) * at(m - 1) -
                        ((m - 2) * (2 * a2 * k2 - a2 - 6 * k2)) * at(m - 2) - (2 * k2 * (2 * m - 5)) * at(m - 3) +
                        (k2 * (m - 3)) * at(m - 4);
    R.push_back(num / ((m - 1) * (a2 - 1.0) * q));
  }
  return RSequence(std::move(R));
}

}  // namespace conesphere
