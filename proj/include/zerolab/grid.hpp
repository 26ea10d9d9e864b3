#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace zerolab {

/// How the window length U is chosen.
enum class PsiMode {
  kLogLog,    // U = T^(5/12) psi ln^3 T with psi = max(1, ln ln T)
  kExplicit,  // U supplied directly
};

/// One scan window [T, T + U] with its mesh parameters.
struct WindowSpec {
  double T = 0.0;
  double U = 0.0;
  double delta = 0.0;
  int M1 = 0;        // floor(delta ln T)
  double omega = 0.0;  // pi / ln(T / 2pi)
  double P0 = 0.0;     // sqrt(T / 2pi)
  double psi = 0.0;    // only meaningful in loglog mode
  PsiMode psi_mode = PsiMode::kExplicit;
};

/// A solution of vartheta1(tbar) = pi nu / 2 on the increasing branch.
struct GridPoint {
  std::int64_t nu = 0;
  double tbar = 0.0;
  double residual = 0.0;
};

inline constexpr double kMinWindowT = 1e3;
inline constexpr double kGridResidualTol = 1e-9;

/// Throws ParameterError for T < 1e3, delta <= 1 or a non-positive explicit U.
WindowSpec make_window(double T, double delta, PsiMode mode, std::optional<double> explicit_u = std::nullopt);

/// pi / ln(T / 2pi), the mesh spacing for base T > 2pi.
double omega_at(double T);

/// Residual bound for a grid point stored as a double: 1e-9, or the change
/// of vartheta1 across one ulp of t where that is larger (t above ~2e6).
double grid_residual_tolerance(double t);

/// Safeguarded Newton on vartheta1(t) = pi nu / 2 for t > 2 pi e.
/// Throws SolverError if no bracket is found or the residual stays above
/// grid_residual_tolerance(t).
GridPoint solve_tbar(std::int64_t nu);

/// |vartheta1(t) - pi nu / 2| evaluated in extended precision.
double tbar_residual(std::int64_t nu, double t);

/// Smallest nu whose tbar is >= t.
std::int64_t first_nu_at_or_above(double t);

/// Every grid point with T <= tbar <= T + U, increasing in nu.
std::vector<GridPoint> grid_points_in_window(const WindowSpec& w);

/// Grid points for nu in [nu_begin, nu_end).
std::vector<GridPoint> grid_points_range(std::int64_t nu_begin, std::int64_t nu_end);

/// nu range [begin, end) of the window's grid points.
struct NuRange {
  std::int64_t begin = 0;
  std::int64_t end = 0;
  std::int64_t size() const { return end - begin; }
};
NuRange window_nu_range(const WindowSpec& w);

/// (1/pi) U ln(T / 2pi), the leading count of grid points in the window.
double q1_formula(const WindowSpec& w);

}  // namespace zerolab
