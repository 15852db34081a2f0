#include "conesphere/quartic.hpp"

#include <cmath>

#include "conesphere/errors.hpp"

namespace conesphere {

namespace {

constexpr Real binom(int n, int k) {
  Real r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Byrd 256 family on [b, a] with a > b > c > d.
struct RealParams {
  Real k2, g;
};

RealParams real_params(Real a, Real b, Real c, Real d) {
  const Real k2 = (a - b) * (c - d) / ((a - c) * (b - d));
  return {k2, 2.0 / std::sqrt((a - c) * (b - d))};
}

void check_modulus_gap(Real one_minus_k2) {
  if (one_minus_k2 < kConditioningGap) throw ConditioningError("quartic: middle roots nearly coincide");
}

}  // namespace

QuarticIntegrals::QuarticIntegrals(const QuarticFactorization& f) : f_(f) {
  if (!(f.upper > f.lower)) throw DomainError("quartic: empty integration interval");

  if (f.complex_pair) {
    const Real a = f.roots[0], b = f.roots[1], b1 = f.pair_re, a1 = f.pair_im;
    if (f.lower != b || f.upper != a) throw DomainError("quartic: interval must join the two real roots");
    A_ = std::hypot(a - b1, a1);
    B_ = std::hypot(b - b1, a1);
    const Real sum = A_ + B_;
    check_modulus_gap((sum - (a - b)) * (sum + (a - b)) / (4.0 * A_ * B_));
    k2_ = (a - b - A_ + B_) * (a - b + A_ - B_) / (4.0 * A_ * B_);
    g_ = 1.0 / std::sqrt(A_ * B_);

    // t - T0 = w cn / (1 + alpha cn), cn running from -1 at t = a to 1 at t = b.
    const Real alpha = (A_ - B_) / sum;
    const Real T0 = (a * B_ + b * A_) / sum;
    const Real w = -2.0 * A_ * B_ * (a - b) / (sum * sum);
    const std::vector<Tracked> Z = z_sequence(4, alpha, k2_);
    std::array<Tracked, 5> N{};  // int (t - T0)^j / sqrt(P)
    for (int j = 0; j <= 4; ++j) N[static_cast<std::size_t>(j)] = (g_ * std::pow(w, j)) * Z[static_cast<std::size_t>(j)];
    for (int m = 0; m <= 4; ++m) {
      Tracked acc;
      for (int j = 0; j <= m; ++j) acc += (binom(m, j) * std::pow(T0, m - j)) * N[static_cast<std::size_t>(j)];
      J_[static_cast<std::size_t>(m)] = acc;
    }
    // P(T0 + y) = (ea - y)(eb + y)((f + y)^2 + a1^2)
    const Real ea = A_ * (a - b) / sum, eb = B_ * (a - b) / sum;
    const Real f0 = ((a - b1) * B_ + (b - b1) * A_) / sum;
    const Real q0 = ea * eb, q1 = ea - eb;         // -y^2 + q1 y + q0
    const Real w0 = f0 * f0 + a1 * a1, w1 = 2.0 * f0;  // y^2 + w1 y + w0
    const std::array<Real, 5> p = {q0 * w0, q0 * w1 + q1 * w0, q0 + q1 * w1 - w0, q1 - w1, -1.0};
    for (int j = 0; j <= 4; ++j) sqrt_ += p[static_cast<std::size_t>(j)] * N[static_cast<std::size_t>(j)];
    return;
  }

  const auto& rt = f.roots;
  if (!(rt[0] >= rt[1] && rt[1] >= rt[2] && rt[2] >= rt[3])) throw DomainError("quartic: real roots must be descending");
  if (rt[0] == rt[1] || rt[1] == rt[2] || rt[2] == rt[3]) throw ConditioningError("quartic: repeated root");
  if (f.lower == rt[1] && f.upper == rt[0]) {
    r_ = rt;
  } else if (f.lower == rt[3] && f.upper == rt[2]) {
    // t -> -t maps [d, c] onto the top interval of the reflected quartic.
    reflected_ = true;
    r_ = {-rt[3], -rt[2], -rt[1], -rt[0]};
  } else {
    throw DomainError("quartic: interval must be [b, a] or [d, c]");
  }
  const Real a = r_[0], b = r_[1], c = r_[2], d = r_[3];
  check_modulus_gap((b - c) * (a - d) / ((a - c) * (b - d)));
  const auto [k2, g] = real_params(a, b, c, d);

  // Moments about the upper root: a - t = h sn^2 / (1 - alpha2 sn^2) with
  // alpha2 = (b - a)/(b - d) and h = (a - d)(a - b)/(b - d).
  const Real A1 = a - b, A2 = a - c, A3 = a - d;
  const Real h = A3 * A1 / (b - d);
  const std::vector<Tracked> Y = y_sequence(4, (b - a) / (b - d), k2);
  std::array<Tracked, 5> M{};  // int (a - t)^j / sqrt(P)
  for (int j = 0; j <= 4; ++j) M[static_cast<std::size_t>(j)] = (g * std::pow(h, j)) * Y[static_cast<std::size_t>(j)];
  for (int m = 0; m <= 4; ++m) {
    Tracked acc;
    for (int j = 0; j <= m; ++j) acc += (binom(m, j) * std::pow(a, m - j) * (j % 2 ? -1.0 : 1.0)) * M[static_cast<std::size_t>(j)];
    const Real sign = reflected_ && (m % 2 == 1) ? -1.0 : 1.0;
    J_[static_cast<std::size_t>(m)] = sign * acc;
  }
  // P = x (A1 - x)(A2 - x)(A3 - x) with x = a - t.
  const std::array<Real, 5> p = {0.0, A1 * A2 * A3, -(A1 * A2 + A1 * A3 + A2 * A3), A1 + A2 + A3, -1.0};
  for (int j = 1; j <= 4; ++j) sqrt_ += p[static_cast<std::size_t>(j)] * M[static_cast<std::size_t>(j)];
}

Tracked QuarticIntegrals::real_pole(Real p) const {
  const Real a = r_[0], b = r_[1], c = r_[2], d = r_[3];
  const auto [k2, g] = real_params(a, b, c, d);
  const Real n = (p - d) * (a - b) / ((a - p) * (b - d));
  if (!std::isfinite(n) || std::abs(1.0 - n) < kConditioningGap)
    throw ConditioningError("quartic: pole coincides with an interval end");
  return (g / (p - d)) * (Tracked::exact(ellint_K(k2)) + ((a - d) / (p - a)) * Tracked::exact(ellint_Pi(n, k2)));
}

Tracked QuarticIntegrals::complex_pole(Real p) const {
  const Real a = f_.roots[0], b = f_.roots[1];
  const Real sum = A_ + B_;
  const Real alpha = (A_ - B_) / sum;
  const Real N0 = a * B_ + b * A_ - p * sum;
  const Real beta = (b * A_ - a * B_ + p * B_ - p * A_) / N0;
  if (!std::isfinite(beta) || std::abs(1.0 - std::abs(beta)) < kConditioningGap)
    throw ConditioningError("quartic: pole coincides with an interval end");
  // 1/(t - p) = (A + B)/N0 * (1 + alpha cn)/(1 + beta cn)
  Tracked integral;
  if (beta == 0.0) {
    integral = Tracked::exact(2.0 * ellint_K(k2_));
  } else {
    const RSequence R = r_sequence(1, beta, k2_, Amplitude::Half);
    integral = (alpha / beta) * R.tracked(0) + (1.0 - alpha / beta) * R.tracked(1);
  }
  return (-g_ * sum / N0) * integral;
}

Tracked QuarticIntegrals::pole(Real p) const {
  if (p >= f_.lower && p <= f_.upper) throw DomainError("quartic: pole inside the integration interval");
  Tracked out = f_.complex_pair ? complex_pole(p) : reflected_ ? -real_pole(-p) : real_pole(p);
  // Near an end the integral grows like |p - end|^(-1/2); rounding in p and
  // in the root then perturbs it relative to that gap.
  const Real end = p > f_.upper ? f_.upper : f_.lower;
  out.scale += std::abs(out.value) * (std::abs(p) + std::abs(end)) / (2.0 * std::abs(p - end));
  return out;
}

Real QuarticIntegrals::evaluate(Real s) const {
  if (f_.complex_pair) {
    const Real a = f_.roots[0], b = f_.roots[1];
    const Real u = s - f_.pair_re;
    return (a - s) * (s - b) * (u * u + f_.pair_im * f_.pair_im);
  }
  const auto& r = f_.roots;
  return -(s - r[0]) * (s - r[1]) * (s - r[2]) * (s - r[3]);
}

}  // namespace conesphere
