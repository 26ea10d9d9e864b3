#include <doctest.h>

#include <cmath>
#include <random>

#include "zerolab/error.hpp"
#include "zerolab/oracle.hpp"
#include "zerolab/segments.hpp"
#include "zerolab/special.hpp"

using namespace zerolab;

namespace {

constexpr long double kPiL = 3.141592653589793238462643383279502884L;

// Independent long double evaluation of the closed form.
long double vartheta1_reference(long double t) {
  return t / 2 * std::log(t / (2 * kPiL)) - t / 2 - kPiL / 8;
}

}  // namespace

TEST_CASE("vartheta1 closed-form values") {
  CHECK(vartheta1(kTwoPi) == doctest::Approx(-kPi - kPi / 8).epsilon(1e-15));
  CHECK(vartheta1(kTwoPi * std::exp(1.0)) == doctest::Approx(-kPi / 8).epsilon(1e-14));
  // mpmath, 40 digits
  CHECK(std::abs(vartheta1(100.0) - 87.971956897238570069) < 1e-12);
  for (double t : {20.0, 517.3, 1e5, 3.7e7}) {
    CHECK(std::abs(vartheta1(t) - static_cast<double>(vartheta1_reference(t))) <= 1e-15 * std::abs(vartheta1(t)) + 1e-14);
  }
  CHECK_THROWS_AS(vartheta1(0.0), DomainError);
}

TEST_CASE("vartheta1 is strictly increasing past 2 pi e") {
  double prev = vartheta1(kTwoPi * std::exp(1.0));
  for (double t = kTwoPi * std::exp(1.0) + 0.25; t < 2000.0; t += 0.25) {
    const double v = vartheta1(t);
    REQUIRE(v > prev);
    prev = v;
  }
}

TEST_CASE("theta matches the ln Gamma oracle") {
  CHECK(std::abs(theta(100.0).theta - static_cast<double>(oracle::theta_lngamma(100.0))) < 1e-8);
  // mpmath siegeltheta
  CHECK(std::abs(theta(100.0).theta - 87.972165231787219625) < 1e-12);
  CHECK(std::abs(theta(20.0).theta - 1.186894808444484045) < 1e-10);
  CHECK(std::abs(theta(1e5).theta - 433752.02722917078144) < 1e-9);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(50.0, 1e6);
  for (int i = 0; i < 200; ++i) {
    const double t = dist(rng);
    const long double ref = oracle::theta_lngamma(t);
    REQUIRE(std::abs(static_cast<long double>(theta(t).theta) - ref) <= 1e-10L + 5e-16L * std::abs(ref));
  }
}

TEST_CASE("theta stays within 0.02 of vartheta1 for t >= 20") {
  for (double t = 20.0; t < 5000.0; t *= 1.07) {
    CHECK(std::abs(theta(t).theta - vartheta1(t)) <= 0.02);
  }
}

TEST_CASE("theta derivative") {
  const double h = 1e-4;
  const double fd = (theta(50.0 + h).theta - theta(50.0 - h).theta) / (2 * h);
  CHECK(theta(50.0).deriv == doctest::Approx(fd).epsilon(1e-8));
  CHECK(std::abs(theta(50.0).deriv - 0.5 * std::log(50.0 / kTwoPi)) < 1e-3);
  CHECK(std::abs(theta(50.0).deriv - 1.037064635592610552) < 1e-12);
  for (double t = 17.5; t < 1e4; t *= 1.3) CHECK(theta(t).deriv > 0.0);
}

TEST_CASE("theta domain") {
  CHECK_THROWS_AS(theta(9.99), DomainError);
  CHECK_NOTHROW(theta(10.0));
}

TEST_CASE("Riemann-Siegel coefficient tables") {
  const auto psi = detail::psi_taylor_coefficients();
  // Published expansion of C_0 in z = 2p - 1: 0.38268343236508977 + 0.43724046807752045 z^2 + ...
  CHECK(psi[0] == doctest::Approx(0.38268343236508977173).epsilon(1e-15));
  CHECK(psi[2] / 4 == doctest::Approx(0.43724046807752044936).epsilon(1e-14));
  // Psi is even about p = 1/2.
  for (std::size_t n = 1; n < psi.size(); n += 2) CHECK(psi[n] == 0.0);
  // C_0 against the closed form away from its removable singularities.
  for (double p : {0.03, 0.11, 0.4, 0.62, 0.9}) {
    const double closed = std::cos(kTwoPi * (p * p - p - 1.0 / 16)) / std::cos(kTwoPi * p);
    CHECK(rs_coefficient(0, p) == doctest::Approx(closed).epsilon(1e-13));
  }
  // C_1 is odd about p = 1/2, C_2 even.
  CHECK(rs_coefficient(1, 0.3) == doctest::Approx(-rs_coefficient(1, 0.7)).epsilon(1e-12));
  CHECK(rs_coefficient(2, 0.3) == doctest::Approx(rs_coefficient(2, 0.7)).epsilon(1e-12));
  CHECK_THROWS_AS(rs_coefficient(5, 0.5), DomainError);
}

TEST_CASE("rs_z domain and bookkeeping") {
  CHECK(rs_z(1e5, 2).main_terms == 126);
  CHECK(rs_z(1e5, 2).correction_order == 2);
  CHECK_THROWS_AS(rs_z(49.9, 2), DomainError);
  CHECK_THROWS_AS(rs_z(100.0, 5), DomainError);
  CHECK_THROWS_AS(rs_z(100.0, -1), DomainError);
  CHECK_THROWS_AS(zbar_exact(20.0), DomainError);
}

TEST_CASE("rs_z against the Euler-Maclaurin oracle") {
  // mpmath siegelz(74) = -3.5503271497441014628
  CHECK(std::abs(oracle::em_z(74.0) - (-3.5503271497441014628)) < 1e-10);
  CHECK(std::abs(rs_z(74.0, 4).z - oracle::em_z(74.0)) < 1e-6);

  // Order-k remainder envelope c_k t^-(2k+3)/4 (Gabcke's constants; measured
  // maxima over t in [50, 1e5] are 0.121, 0.053, 0.0104, 0.029, 0.012) plus a
  // floor for double-precision phase rounding.
  constexpr double kScale[5] = {0.127, 0.053, 0.011, 0.031, 0.017};
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(50.0, 1e5);
  double worst0 = 0.0;
  for (int i = 0; i < 150; ++i) {
    const double t = dist(rng);
    const double ref = oracle::em_z(t);
    for (int k = 0; k <= 4; ++k) {
      const double err = std::abs(rs_z(t, k).z - ref);
      const double bound = kScale[k] * std::pow(t, -(2.0 * k + 3.0) / 4.0) + 5e-9;
      REQUIRE_MESSAGE(err <= bound, "t=" << t << " order=" << k << " err=" << err);
    }
    worst0 = std::max(worst0, std::abs(rs_z(t, 0).z - ref));
  }
  CHECK(worst0 <= 0.05);
}

TEST_CASE("rs_z changes sign across the oracle zero nearest 1000") {
  const ZEvaluator em = [](double t) { return oracle::em_z(t); };
  const auto zeros = locate_zeros(998.0, 1002.0, 0.02, em);
  REQUIRE(!zeros.empty());
  auto nearest = zeros.front();
  for (const auto& z : zeros) {
    if (std::abs(z.t0 - 1000.0) < std::abs(nearest.t0 - 1000.0)) nearest = z;
  }
  for (int k = 0; k <= 4; ++k) {
    CHECK(rs_z(nearest.t0 - 1e-3, k).z * rs_z(nearest.t0 + 1e-3, k).z < 0.0);
  }
}

TEST_CASE("zbar_exact") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(50.0, 1e6);
  for (int i = 0; i < 200; ++i) {
    const double t = dist(rng);
    REQUIRE(std::abs(zbar_exact(t) + 2.0 * std::cos(theta(t).theta) - rs_z(t).z) <= 1e-12);
  }
  // At a zero of Z the tail cancels the leading cosine.
  const auto zeros = locate_zeros(998.0, 1002.0, 0.02, [](double t) { return oracle::em_z(t); });
  REQUIRE(!zeros.empty());
  for (const auto& z : zeros) CHECK(std::abs(zbar_exact(z.t0) + 2.0 * std::cos(theta(z.t0).theta)) < 1e-6);
}

TEST_CASE("zbar_truncated") {
  CHECK(zbar_truncated(123.4, 2.0) == 0.0);
  CHECK(zbar_truncated(1e4, std::sqrt(8 * kPi / kTwoPi)) == 0.0);
  CHECK(zbar_truncated(5.0, 2.0) == 0.0);
  CHECK_THROWS_AS(zbar_truncated(1e4, 1.99), DomainError);

  // With P0 = sqrt(t / 2pi) the two tails differ by the Riemann-Siegel
  // correction, whose leading term is bounded by (t/2pi)^-1/4 max|C_0| < (t/2pi)^-1/4.
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> dist(1e4, 1e5);
  for (int i = 0; i < 100; ++i) {
    const double t = dist(rng);
    const double p0 = std::sqrt(t / kTwoPi);
    const double diff = std::abs(zbar_exact(t) - zbar_truncated(t, p0));
    REQUIRE(diff <= std::pow(t / kTwoPi, -0.25));
  }
}

TEST_CASE("extended-precision phase path stays continuous across 1e8") {
  // Just below and above the switch the evaluator must agree with itself to
  // the accuracy plain double phases give at this height.
  const double t = 1e8;
  const double below = rs_z(std::nextafter(t, 0.0), 2).z;
  const double above = rs_z(std::nextafter(t, 2 * t), 2).z;
  CHECK(std::isfinite(below));
  CHECK(std::abs(below - above) < 1e-4);
}
