#include "zerolab/mesh.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "zerolab/special.hpp"

namespace zerolab {

ZEvaluator fast_evaluator() {
  return [](double t) { return rs_z(t, kDefaultCorrectionOrder).z; };
}

MeshRow build_row(const GridPoint& p, const WindowSpec& w, int depth, const ZEvaluator& z) {
  MeshRow row;
  row.point = p;
  row.z.reserve(static_cast<std::size_t>(depth) + 1);
  row.theta.reserve(static_cast<std::size_t>(depth) + 1);
  for (int k = 0; k <= depth; ++k) {
    const double t = mesh_abscissa(p, w, k);
    row.z.push_back(z(t));
    row.theta.push_back(theta_mod_2pi(t));
  }
  return row;
}

std::vector<MeshRow> build_rows(std::span<const GridPoint> points, const WindowSpec& w, int depth,
                                const ZEvaluator& z, int workers) {
  const ZEvaluator eval = z ? z : fast_evaluator();
  std::vector<MeshRow> rows(points.size());
  const std::size_t n_threads =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), 1, std::max<std::size_t>(points.size(), 1));
  if (n_threads == 1) {
    for (std::size_t i = 0; i < points.size(); ++i) rows[i] = build_row(points[i], w, depth, eval);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (std::size_t i = 0; i < n_threads; ++i) {
      pool.emplace_back([&] {
        try {
          for (std::size_t j = next++; j < points.size(); j = next++) rows[j] = build_row(points[j], w, depth, eval);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = points.size();
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
  return rows;
}

WindowMesh build_mesh(const WindowSpec& w, int depth, const ZEvaluator& z, int workers) {
  const auto points = grid_points_in_window(w);
  return {w, depth, build_rows(points, w, depth, z, workers)};
}

}  // namespace zerolab
