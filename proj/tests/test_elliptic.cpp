#include <cmath>
#include <random>

#include "conesphere/elliptic.hpp"
#include "conesphere/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace conesphere;

namespace {

double d(Real x) { return static_cast<double>(x); }

}  // namespace

TEST_SUITE("elliptic") {
  TEST_CASE("complete integrals at special points") {
    CHECK(d(ellint_K(0)) == doctest::Approx(kHalfPi).epsilon(1e-16));
    CHECK(d(ellint_E(0)) == doctest::Approx(kHalfPi).epsilon(1e-16));
    CHECK(d(ellint_Pi(0, 0)) == doctest::Approx(kHalfPi).epsilon(1e-16));
    CHECK(d(ellint_E(1)) == doctest::Approx(1.0).epsilon(1e-16));
    CHECK(d(ellint_E(1 - 1e-12)) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(d(ellint_K(0.25)) == doctest::Approx(1.6857504).epsilon(1e-7));
    CHECK(d(ellint_K(0.25)) == doctest::Approx(oracle::agm_K(0.25)).epsilon(1e-15));
    CHECK_THROWS_AS(ellint_K(1), DomainError);
    CHECK_THROWS_AS(ellint_K(-0.1), DomainError);
    CHECK_THROWS_AS(ellint_Pi(1, 0.3), DomainError);
  }

  TEST_CASE("agreement with the AGM and with amplitude quadrature") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> U(0, 1), N(-5, 0.95);
    for (int i = 0; i < 100; ++i) {
      const double k2 = U(rng) * 0.999, n = N(rng);
      CHECK(d(ellint_K(k2)) == doctest::Approx(oracle::agm_K(k2)).epsilon(1e-13));
      CHECK(d(ellint_E(k2)) == doctest::Approx(oracle::agm_E(k2)).epsilon(1e-13));
      CHECK(d(ellint_Pi(n, k2)) == doctest::Approx(oracle::quad_Pi(n, k2)).epsilon(1e-12));
      CHECK(d(ellint_Pi(0, k2)) == d(ellint_K(k2)));
      CHECK(d(ellint_Pi(n, 0)) == doctest::Approx(kPi / (2 * std::sqrt(1 - n))).epsilon(1e-12));
    }
  }

  TEST_CASE("Legendre relation") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> U(1e-3, 1 - 1e-3);
    for (int i = 0; i < 100; ++i) {
      const double k2 = U(rng), kp2 = 1 - k2;
      const Real lhs = ellint_E(k2) * ellint_K(kp2) + ellint_E(kp2) * ellint_K(k2) - ellint_K(k2) * ellint_K(kp2);
      CHECK(std::abs(d(lhs) - kHalfPi) <= 1e-12);
    }
  }

  TEST_CASE("V sequence") {
    for (Real v : v_sequence(5, 0, 0.4)) CHECK(d(v) == d(ellint_K(0.4)));
    // k = 0: int_0^{pi/2} dt / (1 - a sin^2 t)^2 = pi (2 - a) / (4 (1 - a)^{3/2})
    const auto V = v_sequence(2, 0.5, 0);
    CHECK(d(V[2]) == doctest::Approx(kPi * 1.5 / (4 * std::pow(0.5, 1.5))).epsilon(1e-14));
    CHECK(d(V[2]) == doctest::Approx(oracle::quad_V(2, 0.5, 0)).epsilon(1e-12));
    CHECK(d(v_sequence(3, 0.3, 0.2)[3]) == doctest::Approx(oracle::quad_V(3, 0.3, 0.2)).epsilon(1e-9));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> K(0, 0.95), A(-4, 0.9);
    for (int i = 0; i < 50; ++i) {
      const double k2 = K(rng), a2 = A(rng);
      const auto seq = v_sequence(6, a2, k2);
      CAPTURE(k2);
      CAPTURE(a2);
      CHECK(d(seq[0]) == doctest::Approx(d(ellint_K(k2))));
      CHECK(d(seq[1]) == doctest::Approx(d(ellint_Pi(a2, k2))));
      for (int j = 0; j <= 6; ++j) CHECK(d(seq[static_cast<std::size_t>(j)]) == doctest::Approx(oracle::quad_V(j, a2, k2)).epsilon(1e-9));
    }
    CHECK_THROWS_AS(v_sequence(3, 1.0, 0.3), DomainError);
    CHECK_THROWS_AS(v_sequence(3, 0.3, 0.3), DomainError);
    CHECK_THROWS_AS(v_sequence(3, 1 - 1e-12, 0.3), ConditioningError);
  }

  TEST_CASE("V sequence with the characteristic near the modulus") {
    for (double gap : {1e-2, 1e-4, -1e-7, 1e-12}) {
      const auto seq = v_sequence(6, 0.6 - gap, 0.6);
      for (int j = 0; j <= 6; ++j)
        CHECK(d(seq[static_cast<std::size_t>(j)]) == doctest::Approx(oracle::quad_V(j, 0.6 - gap, 0.6)).epsilon(1e-12));
    }
  }

  TEST_CASE("R sequence") {
    const auto zero = r_sequence(4, 0, 0.3);
    for (int m = -2; m <= 4; ++m) CHECK(zero[m] == doctest::Approx(d(ellint_K(0.3))));
    CHECK(r_sequence(3, 0.7, 0.5)[0] == doctest::Approx(d(ellint_K(0.5))));
    CHECK(r_sequence(2, 0.4, 0.3)[2] == doctest::Approx(oracle::quad_R(2, 0.4, 0.3, false)).epsilon(1e-9));

    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> K(0, 0.95), A(-0.95, 0.95), B(1.05, 3);
    for (int i = 0; i < 50; ++i) {
      const double k2 = K(rng);
      // Quarter amplitude admits alpha > 1 (cn >= 0 there); half amplitude needs |alpha| < 1.
      for (double alpha : {A(rng), B(rng)}) {
        const auto R = r_sequence(6, alpha, k2, Amplitude::Quarter);
        for (int m = -2; m <= 6; ++m) CHECK(R[m] == doctest::Approx(oracle::quad_R(m, alpha, k2, false)).epsilon(1e-9));
      }
      const double alpha = A(rng);
      const auto H = r_sequence(6, alpha, k2, Amplitude::Half);
      for (int m = -2; m <= 6; ++m) CHECK(H[m] == doctest::Approx(oracle::quad_R(m, alpha, k2, true)).epsilon(1e-9));
    }
    CHECK_THROWS_AS(r_sequence(3, 1.0, 0.3), DomainError);
    CHECK_THROWS_AS(r_sequence(3, -1.5, 0.3), DomainError);
    CHECK_THROWS_AS(r_sequence(3, 1.5, 0.3, Amplitude::Half), DomainError);
    CHECK_THROWS_AS(r_sequence(3, 0.5, 1 - 1e-12), ConditioningError);
  }

  TEST_CASE("sn and cn moments") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> K(0, 0.99);
    for (int i = 0; i < 20; ++i) {
      const double k2 = K(rng);
      const auto S = sn_moments(12, k2);
      const auto C = cn_moments(12, k2);
      for (int q = 0; q <= 12; ++q) {
        const auto amp = [&](auto f) {
          return oracle::smooth([&](double t) { return f(t) / std::sqrt(1 - k2 * std::sin(t) * std::sin(t)); }, 0, kHalfPi);
        };
        CHECK(d(S[static_cast<std::size_t>(q)]) == doctest::Approx(amp([&](double t) { return std::pow(std::sin(t), 2 * q); })).epsilon(1e-12));
        CHECK(d(C[static_cast<std::size_t>(q)]) == doctest::Approx(amp([&](double t) { return std::pow(std::cos(t), 2 * q); })).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("Y and Z moment sequences") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> K(0, 0.95), A2(-3, 0.9), A(-0.9, 0.9);
    for (int i = 0; i < 40; ++i) {
      const double k2 = K(rng), a2 = A2(rng), alpha = A(rng);
      const auto Y = y_sequence(4, a2, k2);
      const auto Z = z_sequence(4, alpha, k2);
      for (int j = 0; j <= 4; ++j) {
        const double y = oracle::smooth([&](double t) {
          const double s2 = std::sin(t) * std::sin(t);
          return std::pow(s2 / (1 - a2 * s2), j) / std::sqrt(1 - k2 * s2);
        }, 0, kHalfPi);
        const double z = oracle::smooth([&](double t) {
          const double c = std::cos(t);
          return std::pow(c / (1 + alpha * c), j) / std::sqrt(1 - k2 * std::sin(t) * std::sin(t));
        }, 0, kPi);
        CHECK(d(Y[static_cast<std::size_t>(j)].value) == doctest::Approx(y).epsilon(1e-12));
        CHECK(d(Z[static_cast<std::size_t>(j)].value) == doctest::Approx(z).epsilon(1e-12).scale(1e-3));
      }
    }
  }

  TEST_CASE("tracked arithmetic") {
    const Tracked a = Tracked::exact(3.0), b = Tracked::exact(-2.0);
    const Tracked s = a + b;
    CHECK(d(s.value) == 1.0);
    CHECK(d(s.scale) == 5.0);
    const Tracked t = 2.0 * (a - b) / 4.0;
    CHECK(d(t.value) == 2.5);
    CHECK(d(t.scale) == 2.5);
  }
}
