#include "zerolab/segments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "zerolab/error.hpp"

namespace zerolab {

namespace {

bool opposite_signs(double a, double b) { return (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0); }

}  // namespace

double sign_threshold(std::span<const double> values) {
  double sq = 0.0;
  for (double v : values) sq += v * v;
  const double rms = values.empty() ? 0.0 : std::sqrt(sq / static_cast<double>(values.size()));
  return kSignTolerance * std::max(1.0, rms);
}

RowScan scan_row(const MeshRow& row, const WindowSpec& w, int max_k) {
  if (row.depth() < max_k + 1) throw ParameterError("scan_row: mesh row is too shallow");
  RowScan out;
  const std::span<const double> z(row.z.data(), static_cast<std::size_t>(max_k) + 2);
  const double tol = sign_threshold(z);
  std::vector<bool> ambiguous(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    ambiguous[i] = std::abs(z[i]) < tol;
    if (ambiguous[i]) ++out.ambiguous;
  }
  for (int k = 0; k <= max_k; ++k) {
    const auto i = static_cast<std::size_t>(k);
    if (ambiguous[i] || ambiguous[i + 1]) continue;
    if (opposite_signs(z[i], z[i + 1])) {
      out.first = GoodSegment{row.point.nu,
                              k,
                              mesh_abscissa(row.point, w, k),
                              mesh_abscissa(row.point, w, k + 1),
                              z[i],
                              z[i + 1],
                              std::nullopt};
      break;
    }
  }
  return out;
}

std::vector<GoodSegment> select_disjoint(std::vector<GoodSegment> candidates) {
  std::sort(candidates.begin(), candidates.end(), [](const GoodSegment& a, const GoodSegment& b) {
    if (a.right != b.right) return a.right < b.right;
    if (a.left != b.left) return a.left < b.left;
    return a.nu < b.nu;
  });
  std::vector<GoodSegment> chosen;
  for (auto& c : candidates) {
    if (chosen.empty() || c.left >= chosen.back().right) chosen.push_back(std::move(c));
  }
  return chosen;
}

void confirm_segments(std::vector<GoodSegment>& segments, const ZEvaluator& evaluator, int workers) {
  const ZEvaluator eval = evaluator ? evaluator : fast_evaluator();
  auto confirm_one = [&](GoodSegment& s) { s.zero = bisect_zero(s.left, s.right, eval); };
  const std::size_t n_threads = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), 1,
                                                        std::max<std::size_t>(segments.size(), 1));
  if (n_threads == 1) {
    for (auto& s : segments) confirm_one(s);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < n_threads; ++i) {
      pool.emplace_back([&] {
        try {
          for (std::size_t j = next++; j < segments.size(); j = next++) confirm_one(segments[j]);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = segments.size();
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

SegmentReport assemble_segment_report(const WindowSpec& w, std::span<const MeshRow> rows, bool confirm,
                                      const ZEvaluator& evaluator, int workers) {
  SegmentReport report;
  report.window = w;
  report.n_grid = static_cast<std::int64_t>(rows.size());
  std::vector<GoodSegment> candidates;
  for (const auto& row : rows) {
    RowScan scan = scan_row(row, w, w.M1);
    report.ambiguous += scan.ambiguous;
    if (scan.first) candidates.push_back(*scan.first);
  }
  report.candidates = static_cast<std::int64_t>(candidates.size());
  report.segments = select_disjoint(std::move(candidates));
  if (confirm) confirm_segments(report.segments, evaluator, workers);
  report.G = static_cast<std::int64_t>(report.segments.size());
  return report;
}

SegmentReport detect_good_segments(const WindowSpec& w, bool confirm, const ZEvaluator& evaluator, int workers) {
  const WindowMesh mesh = build_mesh(w, w.M1 + 1, evaluator, workers);
  return assemble_segment_report(w, mesh.rows, confirm, evaluator, workers);
}

SignSweep sweep_sign_changes(double a, double b, double step, const ZEvaluator& evaluator) {
  if (!(a < b)) throw ParameterError("sign sweep: need a < b");
  if (!(step > 0.0)) throw ParameterError("sign sweep: step must be positive");

  std::vector<double> ts;
  const auto n = static_cast<std::int64_t>(std::floor((b - a) / step));
  for (std::int64_t i = 0; i <= n; ++i) ts.push_back(std::min(a + static_cast<double>(i) * step, b));
  if (ts.back() < b) ts.push_back(b);

  std::vector<double> zs;
  zs.reserve(ts.size());
  for (double t : ts) zs.push_back(evaluator(t));
  const double tol = sign_threshold(zs);

  SignSweep out;
  std::optional<std::size_t> prev;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    if (std::abs(zs[i]) < tol) {
      ++out.ambiguous;
      continue;
    }
    if (prev && opposite_signs(zs[*prev], zs[i])) {
      ++out.changes;
      out.brackets.emplace_back(ts[*prev], ts[i]);
    }
    prev = i;
  }
  return out;
}

std::int64_t count_sign_changes(double a, double b, double step, const ZEvaluator& evaluator) {
  return sweep_sign_changes(a, b, step, evaluator ? evaluator : fast_evaluator()).changes;
}

std::vector<ZeroLocation> locate_zeros(double a, double b, double step, const ZEvaluator& evaluator) {
  const SignSweep sweep = sweep_sign_changes(a, b, step, evaluator);
  std::vector<ZeroLocation> zeros;
  zeros.reserve(sweep.brackets.size());
  for (const auto& [lo, hi] : sweep.brackets) zeros.push_back(bisect_zero(lo, hi, evaluator));
  std::sort(zeros.begin(), zeros.end(), [](const auto& x, const auto& y) { return x.t0 < y.t0; });
  return zeros;
}

}  // namespace zerolab
