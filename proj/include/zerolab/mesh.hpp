#pragma once

#include <span>
#include <vector>

#include "zerolab/grid.hpp"
#include "zerolab/oracle.hpp"

namespace zerolab {

/// Cached Z and theta values at tbar + k omega, k = 0..depth, for one grid point.
struct MeshRow {
  GridPoint point;
  std::vector<double> z;
  std::vector<double> theta;  // reduced mod 2pi

  int depth() const { return static_cast<int>(z.size()) - 1; }
};

/// Mesh rows for a window, in increasing nu.
struct WindowMesh {
  WindowSpec window;
  int depth = 0;
  std::vector<MeshRow> rows;
};

/// The evaluator used by scans: Riemann-Siegel with the default correction order.
ZEvaluator fast_evaluator();

/// tbar + k omega, the single formula used for every mesh abscissa.
inline double mesh_abscissa(const GridPoint& p, const WindowSpec& w, int k) {
  return p.tbar + static_cast<double>(k) * w.omega;
}

MeshRow build_row(const GridPoint& p, const WindowSpec& w, int depth, const ZEvaluator& z);

/// Rows for the given points, evaluated on `workers` threads. Output order
/// follows the input order regardless of scheduling.
std::vector<MeshRow> build_rows(std::span<const GridPoint> points, const WindowSpec& w, int depth,
                                const ZEvaluator& z, int workers = 1);

/// Full mesh of the window. An empty evaluator selects fast_evaluator().
WindowMesh build_mesh(const WindowSpec& w, int depth, const ZEvaluator& z = {}, int workers = 1);

}  // namespace zerolab
