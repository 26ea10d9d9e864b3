#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "zerolab/grid.hpp"
#include "zerolab/mesh.hpp"
#include "zerolab/oracle.hpp"

namespace zerolab {

/// [tbar_nu + k omega, tbar_nu + (k+1) omega] with a strict sign change of Z
/// across its endpoints.
struct GoodSegment {
  std::int64_t nu = 0;
  int k = 0;
  double left = 0.0;
  double right = 0.0;
  double z_left = 0.0;
  double z_right = 0.0;
  std::optional<ZeroLocation> zero;
};

struct SegmentReport {
  WindowSpec window;
  std::vector<GoodSegment> segments;  // pairwise disjoint, increasing
  std::int64_t G = 0;
  std::int64_t n_grid = 0;
  std::int64_t candidates = 0;  // grid points with at least one sign change
  std::int64_t ambiguous = 0;
};

inline constexpr double kSignTolerance = 1e-12;

/// 1e-12 * max(1, rms(values)); values below it in magnitude carry no sign.
double sign_threshold(std::span<const double> values);

/// Result of scanning one grid point over k = 0..max_k.
struct RowScan {
  std::optional<GoodSegment> first;  // smallest k with a sign change
  std::int64_t ambiguous = 0;
};

/// Requires row depth >= max_k + 1.
RowScan scan_row(const MeshRow& row, const WindowSpec& w, int max_k);

/// Maximum set of pairwise non-intersecting segments (open-interval
/// disjointness) by earliest right endpoint. Ties break on left, then nu.
std::vector<GoodSegment> select_disjoint(std::vector<GoodSegment> candidates);

/// Bisects each segment's zero with `evaluator` on up to `workers` threads.
void confirm_segments(std::vector<GoodSegment>& segments, const ZEvaluator& evaluator, int workers = 1);

/// Builds the report from precomputed rows of depth >= M1 + 1.
SegmentReport assemble_segment_report(const WindowSpec& w, std::span<const MeshRow> rows, bool confirm,
                                      const ZEvaluator& evaluator = {}, int workers = 1);

/// Good segments of the window. An empty evaluator selects fast_evaluator().
SegmentReport detect_good_segments(const WindowSpec& w, bool confirm, const ZEvaluator& evaluator = {},
                                   int workers = 1);

/// Sign changes of an evaluator on the mesh a, a + step, ..., b.
struct SignSweep {
  std::int64_t changes = 0;
  std::int64_t ambiguous = 0;
  std::vector<std::pair<double, double>> brackets;
};

/// Throws ParameterError unless a < b and step > 0.
SignSweep sweep_sign_changes(double a, double b, double step, const ZEvaluator& evaluator);

/// Lower bound for the number of odd-order zeros in [a, b]. An empty
/// evaluator selects fast_evaluator().
std::int64_t count_sign_changes(double a, double b, double step, const ZEvaluator& evaluator = {});

/// Sweep plus bisection of every bracket, sorted by t0.
std::vector<ZeroLocation> locate_zeros(double a, double b, double step, const ZEvaluator& evaluator);

}  // namespace zerolab
