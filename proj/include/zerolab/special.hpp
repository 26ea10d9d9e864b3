#pragma once

#include <array>
#include <span>

namespace zerolab {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Riemann-Siegel theta at height t together with its derivative.
struct ThetaValue {
  double t = 0.0;
  double theta = 0.0;
  double deriv = 0.0;
};

/// Value of the Hardy Z-function from the Riemann-Siegel formula.
struct ZEvaluation {
  double t = 0.0;
  double z = 0.0;
  int correction_order = 0;
  long main_terms = 0;
};

inline constexpr int kDefaultCorrectionOrder = 2;
inline constexpr int kMaxCorrectionOrder = 4;
inline constexpr double kThetaMinT = 10.0;
inline constexpr double kRiemannSiegelMinT = 50.0;
// Above this height the phases t*ln(n) and theta are reduced mod 2*pi in
// extended precision.
inline constexpr double kExtendedReductionT = 1e8;

/// Leading closed form (t/2)ln(t/2pi) - t/2 - pi/8. Requires t > 0.
double vartheta1(double t);

/// Asymptotic expansion of theta(t) through the t^-9 term. Throws DomainError
/// for t < 10.
ThetaValue theta(double t);

/// theta(t) reduced to [-pi, pi], with the reduction done in extended
/// precision above 1e8. Same domain as theta().
double theta_mod_2pi(double t);

/// Z(t) by the Riemann-Siegel formula with C_0..C_order corrections.
/// Throws DomainError for t < 50 and for orders outside [0, 4].
ZEvaluation rs_z(double t, int correction_order = kDefaultCorrectionOrder);

/// Z(t) - 2cos(theta(t)), the exact tail used by the N decomposition.
double zbar_exact(double t, int correction_order = kDefaultCorrectionOrder);

/// 2 * sum_{2 <= n < p0} n^-1/2 cos(theta(t) - t ln n) with no remainder term.
/// Throws DomainError for p0 < 2; p0 == 2 gives the empty sum.
double zbar_truncated(double t, double p0);

/// Riemann-Siegel correction coefficient C_j at fractional part p in [0, 1).
double rs_coefficient(int j, double p);

namespace detail {

/// Taylor coefficients of Psi(p) = cos(2pi(p^2 - p - 1/16)) / cos(2pi p)
/// about p = 1/2, i.e. Psi(1/2 + x) = sum_n coeff[n] x^n.
std::span<const double> psi_taylor_coefficients();

}  // namespace detail

}  // namespace zerolab
