#pragma once

#include <functional>
#include <utility>

namespace zerolab {

/// Any real-valued evaluator of Z(t).
using ZEvaluator = std::function<double(double)>;

/// A sign change of a Z evaluator located by bisection.
struct ZeroLocation {
  double t0 = 0.0;
  std::pair<double, double> bracket{0.0, 0.0};
  double residual = 0.0;

  double width() const { return bracket.second - bracket.first; }
};

inline constexpr double kBisectionWidth = 1e-9;

namespace oracle {

inline constexpr double kMaxT = 1e7;

// Slow reference evaluators. They share no code with the Riemann-Siegel path:
// theta comes from a 50-digit complex Stirling series for ln Gamma and zeta
// from Euler-Maclaurin summation in extended precision.

/// theta(t) = Im ln Gamma(1/4 + it/2) - (t/2) ln pi, for t > 0.
long double theta_lngamma(double t);

/// Z(t) with zeta(1/2 + it) by Euler-Maclaurin, main sum to
/// max(ceil(t), 100) terms and Bernoulli corrections through B_10.
/// Throws DomainError outside 0 < t <= 1e7.
double em_z(double t);

/// em_z with an explicit main-sum length, for self-consistency checks.
double em_z_terms(double t, long terms);

}  // namespace oracle

/// Bisects a sign change of `evaluator` on [a, b] until the bracket is at most
/// 1e-9 wide (or one ulp wide where 1e-9 is below double resolution).
/// Throws PreconditionError if the endpoint values share a sign and
/// DegenerateInputError if either endpoint evaluates to exactly zero.
ZeroLocation bisect_zero(double a, double b, const ZEvaluator& evaluator);

}  // namespace zerolab
