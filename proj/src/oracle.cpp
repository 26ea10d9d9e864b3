#include "zerolab/oracle.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <string>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "zerolab/error.hpp"

namespace zerolab {

namespace oracle {

namespace {

using WideComplex = boost::multiprecision::cpp_complex_50;
using Wide = boost::multiprecision::cpp_bin_float_50;
using Complex = std::complex<long double>;

// ln Gamma(z) for Re z > 0 on the principal branch.
WideComplex lngamma(WideComplex z) {
  // Bernoulli numbers B_2 .. B_40 as exact fractions.
  static const std::array<std::pair<const char*, const char*>, 20> kBernoulli = {{
      {"1", "6"},
      {"-1", "30"},
      {"1", "42"},
      {"-1", "30"},
      {"5", "66"},
      {"-691", "2730"},
      {"7", "6"},
      {"-3617", "510"},
      {"43867", "798"},
      {"-174611", "330"},
      {"854513", "138"},
      {"-236364091", "2730"},
      {"8553103", "6"},
      {"-23749461029", "870"},
      {"8615841276005", "14322"},
      {"-7709321041217", "510"},
      {"2577687858367", "6"},
      {"-26315271553053477373", "1919190"},
      {"2929993913841559", "6"},
      {"-261082718496449122051", "13530"},
  }};

  WideComplex shift_log(0);
  while (z.real() < 30) {
    shift_log += log(z);
    z += 1;
  }
  const Wide half_log_two_pi = log(2 * boost::math::constants::pi<Wide>()) / 2;
  WideComplex acc = (z - Wide(0.5)) * log(z) - z + half_log_two_pi;
  const WideComplex inv = WideComplex(1) / z;
  const WideComplex inv2 = inv * inv;
  WideComplex power = inv;
  for (std::size_t k = 1; k <= kBernoulli.size(); ++k) {
    const Wide b = Wide(kBernoulli[k - 1].first) / Wide(kBernoulli[k - 1].second);
    acc += power * (b / Wide(2 * k * (2 * k - 1)));
    power *= inv2;
  }
  return acc - shift_log;
}

void check_range(double t) {
  if (!(t > 0.0 && t <= kMaxT)) {
    throw DomainError("oracle: t = " + std::to_string(t) + " is outside (0, 1e7]");
  }
}

// zeta(1/2 + it) by Euler-Maclaurin with `terms` main-sum terms.
Complex zeta_em(long double t, long terms) {
  const Complex s(0.5L, t);
  Complex sum(0.0L, 0.0L);
  for (long n = 1; n < terms; ++n) {
    const long double ln = std::log(static_cast<long double>(n));
    const long double mag = 1.0L / std::sqrt(static_cast<long double>(n));
    sum += Complex(mag * std::cos(t * ln), -mag * std::sin(t * ln));
  }
  const long double big_n = static_cast<long double>(terms);
  const long double ln_n = std::log(big_n);
  // N^-s
  const Complex n_pow = Complex(std::cos(t * ln_n), -std::sin(t * ln_n)) / std::sqrt(big_n);
  sum += n_pow * big_n / (s - 1.0L);
  sum += n_pow / 2.0L;

  // B_2k / (2k)! for k = 1..5
  constexpr std::array<long double, 5> kCoeff = {
      1.0L / 12.0L,
      -1.0L / 720.0L,
      1.0L / 30240.0L,
      -1.0L / 1209600.0L,
      1.0L / 47900160.0L,
  };
  // s (s+1) ... (s+2k-2) N^(-s-2k+1)
  Complex rising = s;
  Complex power = n_pow / big_n;
  for (std::size_t k = 0; k < kCoeff.size(); ++k) {
    sum += kCoeff[k] * rising * power;
    const long double j = static_cast<long double>(2 * k + 1);
    rising *= (s + j) * (s + j + 1.0L);
    power /= big_n * big_n;
  }
  return sum;
}

}  // namespace

long double theta_lngamma(double t) {
  if (!(t > 0.0)) throw DomainError("theta_lngamma: t must be positive");
  const Wide wt(t);
  const WideComplex z(Wide(1) / 4, wt / 2);
  const Wide pi = boost::math::constants::pi<Wide>();
  const Wide th = lngamma(z).imag() - wt / 2 * log(pi);
  return static_cast<long double>(th);
}

double em_z_terms(double t, long terms) {
  check_range(t);
  if (terms < 2) throw DomainError("em_z_terms: need at least two terms");
  const Wide wt(t);
  const WideComplex z(Wide(1) / 4, wt / 2);
  const Wide pi = boost::math::constants::pi<Wide>();
  Wide th = lngamma(z).imag() - wt / 2 * log(pi);
  th -= 2 * pi * floor(th / (2 * pi));
  const long double reduced = static_cast<long double>(th);

  const Complex zeta = zeta_em(static_cast<long double>(t), terms);
  const Complex rotated = Complex(std::cos(reduced), std::sin(reduced)) * zeta;
  return static_cast<double>(rotated.real());
}

double em_z(double t) {
  check_range(t);
  const long terms = std::max(static_cast<long>(std::ceil(t)), 100L);
  return em_z_terms(t, terms);
}

}  // namespace oracle

ZeroLocation bisect_zero(double a, double b, const ZEvaluator& evaluator) {
  if (!(a < b)) throw PreconditionError("bisect_zero: need a < b");
  double fa = evaluator(a);
  double fb = evaluator(b);
  if (fa == 0.0 || fb == 0.0) {
    throw DegenerateInputError("bisect_zero: evaluator is exactly zero at a bracket endpoint");
  }
  if ((fa < 0.0) == (fb < 0.0)) {
    throw PreconditionError("bisect_zero: endpoint values share a sign");
  }
  const bool negative_left = fa < 0.0;
  // An exact zero at an interior midpoint is grouped with the nonnegative side.
  while (b - a > kBisectionWidth) {
    const double mid = a + 0.5 * (b - a);
    if (mid <= a || mid >= b) break;
    const double fm = evaluator(mid);
    if ((fm < 0.0) == negative_left) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
      fb = fm;
    }
  }
  const double t0 = a + 0.5 * (b - a);
  return {t0, {a, b}, std::abs(evaluator(t0))};
}

}  // namespace zerolab
