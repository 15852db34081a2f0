#pragma once

#include <array>

#include "conesphere/elliptic.hpp"

namespace conesphere {

/// P(s) = -(s - r1)(s - r2)(s - r3)(s - r4), positive on an interval whose
/// ends are two adjacent roots.
///
/// Four real roots are stored descending (a > b > c > d) and the interval is
/// either [b, a] or [d, c]. With a complex pair, roots[0] > roots[1] are the
/// real roots, the pair is pair_re +/- i pair_im, and the interval is
/// [roots[1], roots[0]].
struct QuarticFactorization {
  bool complex_pair = false;
  std::array<Real, 4> roots{};
  Real pair_re = 0.0;
  Real pair_im = 0.0;
  Real lower = 0.0;
  Real upper = 0.0;
};

/// Complete integrals over the factorization's interval, with running error
/// magnitudes attached.
class QuarticIntegrals {
 public:
  explicit QuarticIntegrals(const QuarticFactorization& f);

  /// int s^m / sqrt(P) ds, m = 0..4
  Tracked power(int m) const { return J_.at(static_cast<std::size_t>(m)); }

  /// int ds / ((p - s) sqrt(P)) for a pole p outside the interval.
  Tracked pole(Real p) const;

  /// int sqrt(P) ds
  Tracked root_integral() const { return sqrt_; }

  /// Value of P at s (for tests and oracles).
  Real evaluate(Real s) const;

 private:
  QuarticFactorization f_;
  bool reflected_ = false;
  std::array<Real, 4> r_{};  // real case, after reflection onto [b, a]
  std::array<Tracked, 5> J_{};
  Tracked sqrt_{};
  // complex case
  Real A_ = 0.0, B_ = 0.0, k2_ = 0.0, g_ = 0.0;

  Tracked real_pole(Real p) const;
  Tracked complex_pole(Real p) const;
};

}  // namespace conesphere
