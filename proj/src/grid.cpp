#include "zerolab/grid.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "zerolab/error.hpp"
#include "zerolab/special.hpp"

namespace zerolab {

namespace {

constexpr long double kPiLong = 3.141592653589793238462643383279502884L;
constexpr long double kTwoPiLong = 2.0L * kPiLong;
constexpr long double kBranchStart = kTwoPiLong * 2.718281828459045235360287471352662498L;  // 2 pi e

long double vartheta1_long(long double t) { return t / 2 * std::log(t / kTwoPiLong) - t / 2 - kPiLong / 8; }

long double target_for(std::int64_t nu) { return kPiLong / 2 * static_cast<long double>(nu); }

}  // namespace

double omega_at(double T) {
  if (!(T > kTwoPi)) throw ParameterError("omega: T must exceed 2 pi");
  return kPi / std::log(T / kTwoPi);
}

double grid_residual_tolerance(double t) {
  const double ulp = std::nextafter(t, HUGE_VAL) - t;
  return std::max(kGridResidualTol, 0.5 * std::log(t / kTwoPi) * ulp);
}

WindowSpec make_window(double T, double delta, PsiMode mode, std::optional<double> explicit_u) {
  if (!(T >= kMinWindowT)) throw ParameterError("window: T must be at least 1e3");
  if (!(delta > 1.0)) throw ParameterError("window: delta must exceed 1");

  WindowSpec w;
  w.T = T;
  w.delta = delta;
  w.psi_mode = mode;
  w.M1 = static_cast<int>(std::floor(delta * std::log(T)));
  w.omega = omega_at(T);
  w.P0 = std::sqrt(T / kTwoPi);

  if (mode == PsiMode::kExplicit) {
    if (!explicit_u) throw ParameterError("window: explicit mode needs U");
    if (!(*explicit_u > 0.0)) throw ParameterError("window: U must be positive");
    w.U = *explicit_u;
    w.psi = 0.0;
  } else {
    const double log_t = std::log(T);
    w.psi = std::max(1.0, std::log(log_t));
    w.U = std::pow(T, 5.0 / 12.0) * w.psi * log_t * log_t * log_t;
  }
  return w;
}

double tbar_residual(std::int64_t nu, double t) {
  return static_cast<double>(std::abs(vartheta1_long(static_cast<long double>(t)) - target_for(nu)));
}

GridPoint solve_tbar(std::int64_t nu) {
  if (nu < 1) throw SolverError("solve_tbar: nu must be at least 1");
  const long double target = target_for(nu);

  long double lo = kBranchStart;
  long double hi = kBranchStart * 2.718281828459045235360287471352662498L;
  int doublings = 0;
  while (vartheta1_long(hi) < target) {
    lo = hi;
    hi *= 2;
    if (++doublings > 200) throw SolverError("solve_tbar: failed to bracket nu = " + std::to_string(nu));
  }

  long double t = 0.5L * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const long double f = vartheta1_long(t) - target;
    if (f > 0) {
      hi = t;
    } else {
      lo = t;
    }
    const long double slope = 0.5L * std::log(t / kTwoPiLong);
    long double next = t - f / slope;
    if (!(next > lo && next < hi)) next = 0.5L * (lo + hi);
    if (std::abs(next - t) <= 4 * std::numeric_limits<long double>::epsilon() * t) {
      t = next;
      break;
    }
    t = next;
  }

  // Pick the double nearest the root in residual terms.
  double best = static_cast<double>(t);
  double best_res = tbar_residual(nu, best);
  for (double dir : {0.0, HUGE_VAL}) {
    for (;;) {
      const double cand = std::nextafter(best, dir);
      const double r = tbar_residual(nu, cand);
      if (!(r < best_res)) break;
      best = cand;
      best_res = r;
    }
  }
  if (!(best_res <= grid_residual_tolerance(best))) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", best_res);
    throw SolverError("solve_tbar: residual " + std::string(buf) + " above tolerance for nu = " +
                      std::to_string(nu));
  }
  return {nu, best, best_res};
}

std::int64_t first_nu_at_or_above(double t) {
  if (!(t > 0.0)) return 1;
  const long double v = vartheta1_long(static_cast<long double>(t));
  std::int64_t nu = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(2.0L * v / kPiLong)));
  while (nu > 1 && solve_tbar(nu - 1).tbar >= t) --nu;
  while (solve_tbar(nu).tbar < t) ++nu;
  return nu;
}

NuRange window_nu_range(const WindowSpec& w) {
  const double upper = w.T + w.U;
  NuRange r;
  r.begin = first_nu_at_or_above(w.T);
  r.end = first_nu_at_or_above(upper);
  while (solve_tbar(r.end).tbar <= upper) ++r.end;
  if (r.end < r.begin) r.end = r.begin;
  return r;
}

std::vector<GridPoint> grid_points_range(std::int64_t nu_begin, std::int64_t nu_end) {
  std::vector<GridPoint> out;
  if (nu_end > nu_begin) out.reserve(static_cast<std::size_t>(nu_end - nu_begin));
  for (std::int64_t nu = nu_begin; nu < nu_end; ++nu) out.push_back(solve_tbar(nu));
  return out;
}

std::vector<GridPoint> grid_points_in_window(const WindowSpec& w) {
  const NuRange r = window_nu_range(w);
  return grid_points_range(r.begin, r.end);
}

double q1_formula(const WindowSpec& w) { return w.U * std::log(w.T / kTwoPi) / kPi; }

}  // namespace zerolab
