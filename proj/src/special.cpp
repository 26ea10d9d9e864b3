#include "zerolab/special.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "zerolab/error.hpp"

namespace zerolab {

namespace {

using Wide = boost::multiprecision::cpp_bin_float_50;

constexpr long double kPiLong = 3.141592653589793238462643383279502884L;
constexpr long double kTwoPiLong = 2.0L * kPiLong;

// Degree of the Psi expansion. Psi is entire and its Taylor coefficients
// decay faster than geometrically, so 80 terms leave nothing visible in
// double even after twelve derivatives.
constexpr int kPsiDegree = 80;

std::vector<Wide> psi_series_wide() {
  const Wide pi = boost::math::constants::pi<Wide>();
  const Wide two_pi = 2 * pi;
  const Wide c58 = cos(5 * pi / 8);
  const Wide s58 = sin(5 * pi / 8);

  std::vector<Wide> den(kPsiDegree + 1, Wide(0));
  std::vector<Wide> num(kPsiDegree + 1, Wide(0));

  // cos(2 pi x)
  Wide term = 1;
  for (int k = 0; 2 * k <= kPsiDegree; ++k) {
    if (k > 0) term *= -(two_pi * two_pi) / ((2 * k - 1) * (2 * k));
    den[2 * k] = term;
  }
  // cos(2 pi x^2 - 5pi/8) = cos(2 pi x^2) cos(5pi/8) + sin(2 pi x^2) sin(5pi/8)
  Wide a = 1;  // (2pi)^m / m!
  for (int m = 0; 2 * m <= kPsiDegree; ++m) {
    if (m > 0) a *= two_pi / m;
    const int sign = ((m / 2) % 2 == 0) ? 1 : -1;
    if (m % 2 == 0) {
      num[2 * m] += sign * a * c58;
    } else {
      num[2 * m] += sign * a * s58;
    }
  }
  // cos(2 pi (1/2 + x)) = -cos(2 pi x)
  for (auto& d : den) d = -d;

  std::vector<Wide> q(kPsiDegree + 1, Wide(0));
  for (int n = 0; n <= kPsiDegree; ++n) {
    Wide acc = num[n];
    for (int k = 1; k <= n; ++k) acc -= den[k] * q[n - k];
    q[n] = acc / den[0];
  }
  return q;
}

// Polynomial in x = p - 1/2 for one correction coefficient.
struct CoefficientPoly {
  std::vector<double> c;

  double operator()(double x) const {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
};

struct CoefficientTables {
  std::vector<double> psi;
  std::array<CoefficientPoly, kMaxCorrectionOrder + 1> poly;
};

CoefficientTables build_tables() {
  const std::vector<Wide> q = psi_series_wide();
  const Wide pi = boost::math::constants::pi<Wide>();
  const Wide pi2 = pi * pi;
  const Wide pi4 = pi2 * pi2;
  const Wide pi6 = pi4 * pi2;
  const Wide pi8 = pi4 * pi4;

  // x^n coefficient of the m-th derivative of Psi.
  auto deriv = [&](int m, int n) -> Wide {
    if (n + m > kPsiDegree) return Wide(0);
    Wide f = q[n + m];
    for (int i = n + 1; i <= n + m; ++i) f *= i;
    return f;
  };

  struct Term {
    int derivative;
    Wide factor;
  };
  const std::array<std::vector<Term>, kMaxCorrectionOrder + 1> recipe = {{
      {{0, Wide(1)}},
      {{3, Wide(-1) / (96 * pi2)}},
      {{2, Wide(1) / (64 * pi2)}, {6, Wide(1) / (18432 * pi4)}},
      {{1, Wide(-1) / (64 * pi2)},
       {5, Wide(-1) / (3840 * pi4)},
       {9, Wide(-1) / (5308416 * pi6)}},
      {{0, Wide(1) / (128 * pi2)},
       {4, Wide(19) / (24576 * pi4)},
       {8, Wide(11) / (5898240 * pi6)},
       {12, Wide(1) / (2038431744 * pi8)}},
  }};

  CoefficientTables tables;
  tables.psi.reserve(q.size());
  for (const auto& v : q) tables.psi.push_back(static_cast<double>(v));

  for (int j = 0; j <= kMaxCorrectionOrder; ++j) {
    std::vector<double> c;
    for (int n = 0; n <= kPsiDegree; ++n) {
      Wide acc = 0;
      for (const auto& term : recipe[j]) acc += term.factor * deriv(term.derivative, n);
      c.push_back(static_cast<double>(acc));
    }
    // Drop the tail that cannot matter on |x| <= 1/2.
    while (!c.empty() && std::abs(c.back()) * std::ldexp(1.0, -static_cast<int>(c.size())) < 1e-30) {
      c.pop_back();
    }
    tables.poly[j].c = std::move(c);
  }
  return tables;
}

const CoefficientTables& tables() {
  static const CoefficientTables t = build_tables();
  return t;
}

template <class Real>
Real theta_series(Real t) {
  constexpr Real pi = static_cast<Real>(kPiLong);
  const Real lead = t / 2 * std::log(t / (2 * pi)) - t / 2 - pi / 8;
  const Real inv = 1 / t;
  const Real inv2 = inv * inv;
  const Real corr =
      inv * (Real(1) / 48 +
             inv2 * (Real(7) / 5760 +
                     inv2 * (Real(31) / 80640 + inv2 * (Real(127) / 430080 + inv2 * (Real(511) / 1216512)))));
  return lead + corr;
}

double theta_deriv(double t) {
  const double inv2 = 1.0 / (t * t);
  const double corr =
      inv2 * (1.0 / 48 +
              inv2 * (21.0 / 5760 + inv2 * (155.0 / 80640 + inv2 * (889.0 / 430080 + inv2 * (4599.0 / 1216512)))));
  return 0.5 * std::log(t / kTwoPi) - corr;
}

// theta(t) mod 2pi, accurate to double precision in absolute terms.
double reduced_theta(double t) {
  // The divisor must be 2pi in extended precision: the double 2pi is off by
  // 2.4e-16, which the quotient multiplies.
  if (t <= kExtendedReductionT) {
    return static_cast<double>(std::remainder(static_cast<long double>(theta_series<double>(t)), kTwoPiLong));
  }
  const long double th = theta_series<long double>(static_cast<long double>(t));
  return static_cast<double>(std::remainder(th, kTwoPiLong));
}

// sum_{from <= n <= to} n^-1/2 cos(theta - t ln n)
double dirichlet_cos_sum(double t, long from, long to) {
  if (to < from) return 0.0;
  double acc = 0.0;
  if (t <= kExtendedReductionT) {
    const double th = theta_series<double>(t);
    for (long n = from; n <= to; ++n) {
      const double dn = static_cast<double>(n);
      acc += std::cos(th - t * std::log(dn)) / std::sqrt(dn);
    }
    return acc;
  }
  const long double tl = static_cast<long double>(t);
  const long double th = std::remainder(theta_series<long double>(tl), kTwoPiLong);
  for (long n = from; n <= to; ++n) {
    const long double ln = std::log(static_cast<long double>(n));
    const long double phase = th - std::remainder(tl * ln, kTwoPiLong);
    acc += static_cast<double>(std::cos(phase)) / std::sqrt(static_cast<double>(n));
  }
  return acc;
}

void check_rs_domain(double t, int correction_order) {
  if (!(t >= kRiemannSiegelMinT)) {
    throw DomainError("rs_z: t = " + std::to_string(t) + " is below the Riemann-Siegel minimum of 50");
  }
  if (correction_order < 0 || correction_order > kMaxCorrectionOrder) {
    throw DomainError("rs_z: correction order " + std::to_string(correction_order) +
                      " is unsupported (expected 0..4)");
  }
}

}  // namespace

double vartheta1(double t) {
  if (!(t > 0.0)) throw DomainError("vartheta1: t must be positive");
  return t / 2 * std::log(t / kTwoPi) - t / 2 - kPi / 8;
}

ThetaValue theta(double t) {
  if (!(t >= kThetaMinT)) {
    throw DomainError("theta: asymptotic expansion requires t >= 10, got " + std::to_string(t));
  }
  return {t, theta_series<double>(t), theta_deriv(t)};
}

double theta_mod_2pi(double t) {
  if (!(t >= kThetaMinT)) {
    throw DomainError("theta: asymptotic expansion requires t >= 10, got " + std::to_string(t));
  }
  return reduced_theta(t);
}

double rs_coefficient(int j, double p) {
  if (j < 0 || j > kMaxCorrectionOrder) throw DomainError("rs_coefficient: index must be in 0..4");
  return tables().poly[j](p - 0.5);
}

ZEvaluation rs_z(double t, int correction_order) {
  check_rs_domain(t, correction_order);
  const double a = std::sqrt(t / kTwoPi);
  const long n_main = static_cast<long>(std::floor(a));
  const double p = a - static_cast<double>(n_main);

  const double main = 2.0 * dirichlet_cos_sum(t, 1, n_main);

  const auto& poly = tables().poly;
  const double x = p - 0.5;
  const double inv_a = 1.0 / a;
  double corr = 0.0;
  double scale = 1.0;
  for (int j = 0; j <= correction_order; ++j) {
    corr += poly[j](x) * scale;
    scale *= inv_a;
  }
  const double sign = (n_main % 2 == 1) ? 1.0 : -1.0;  // (-1)^(N-1)
  const double remainder = sign * corr / std::sqrt(a);

  return {t, main + remainder, correction_order, n_main};
}

double zbar_exact(double t, int correction_order) {
  const double z = rs_z(t, correction_order).z;
  return z - 2.0 * std::cos(reduced_theta(t));
}

double zbar_truncated(double t, double p0) {
  if (!(p0 >= 2.0)) throw DomainError("zbar_truncated: P0 < 2 leaves no admissible n");
  // Largest n with n < p0.
  long last = static_cast<long>(std::ceil(p0)) - 1;
  if (last < 2) return 0.0;
  if (!(t >= kThetaMinT)) throw DomainError("zbar_truncated: theta needs t >= 10");
  return 2.0 * dirichlet_cos_sum(t, 2, last);
}

namespace detail {

std::span<const double> psi_taylor_coefficients() { return tables().psi; }

}  // namespace detail

}  // namespace zerolab
