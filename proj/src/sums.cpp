#include "zerolab/sums.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "zerolab/error.hpp"
#include "zerolab/segments.hpp"
#include "zerolab/special.hpp"
#include "zerolab/summation.hpp"

namespace zerolab {

namespace {

void check_depth(const WindowMesh& mesh, int M) {
  if (M < 1) throw ParameterError("sums: M must be at least 1");
  if (mesh.depth < M) throw ParameterError("sums: mesh depth is below M");
}

// Per-row values reduced across rows with pairwise summation.
template <class F>
double reduce_rows(const WindowMesh& mesh, F&& per_row) {
  std::vector<double> values;
  values.reserve(mesh.rows.size());
  for (const auto& row : mesh.rows) values.push_back(per_row(row));
  return pairwise_sum(values);
}

}  // namespace

PointSums point_sums(const MeshRow& row, int M) {
  if (M < 1) throw ParameterError("point_sums: M must be at least 1");
  if (row.depth() < M) throw ParameterError("point_sums: mesh row is too shallow");
  PointSums s;
  s.nu = row.point.nu;
  const auto count = static_cast<std::size_t>(M) + 1;
  const std::span<const double> z(row.z.data(), count);
  const double tol = sign_threshold(z);
  bool any_pos = false;
  bool any_neg = false;
  for (std::size_t k = 0; k < count; ++k) {
    const double zk = z[k];
    const double th = row.theta[k];
    s.J_nu += zk;
    s.L_nu += std::abs(zk);
    s.K_nu += std::complex<double>(zk * std::cos(th) - 1.0, -zk * std::sin(th));
    if (std::abs(zk) < tol) {
      s.ambiguous = true;
    } else if (zk > 0.0) {
      any_pos = true;
    } else {
      any_neg = true;
    }
  }
  s.sign_preserving = !s.ambiguous && (any_pos != any_neg);
  return s;
}

PointSums point_sums(std::int64_t nu, const WindowSpec& w, int M, const ZEvaluator& evaluator) {
  const GridPoint p = solve_tbar(nu);
  return point_sums(build_row(p, w, M, evaluator ? evaluator : fast_evaluator()), M);
}

JSums sum_J(const WindowMesh& mesh, int M) {
  check_depth(mesh, M);
  JSums out;
  out.literal = reduce_rows(mesh, [M](const MeshRow& row) {
    double acc = 0.0;
    for (int k = 0; k <= M; ++k) {
      for (int l = 0; l <= M; ++l) acc += row.z[k] * row.z[l];
    }
    return acc;
  });
  out.squares = reduce_rows(mesh, [M](const MeshRow& row) {
    const double j = point_sums(row, M).J_nu;
    return j * j;
  });
  out.residual = std::abs(out.literal - out.squares) / std::max(1.0, std::abs(out.squares));
  return out;
}

double sum_N(const WindowMesh& mesh, int M) {
  check_depth(mesh, M);
  return reduce_rows(mesh, [M](const MeshRow& row) { return std::norm(point_sums(row, M).K_nu); });
}

std::array<double, 4> w_decomposition(const WindowMesh& mesh, int M) {
  check_depth(mesh, M);
  const auto count = static_cast<std::size_t>(M) + 1;
  std::array<std::vector<double>, 4> per_row;
  for (auto& v : per_row) v.reserve(mesh.rows.size());

  std::vector<double> zbar(count);
  std::vector<double> c(count);
  for (const auto& row : mesh.rows) {
    for (std::size_t k = 0; k < count; ++k) {
      c[k] = std::cos(row.theta[k]);
      zbar[k] = row.z[k] - 2.0 * c[k];
    }
    std::array<double, 4> acc{};
    for (std::size_t k = 0; k < count; ++k) {
      for (std::size_t l = 0; l < count; ++l) {
        const double ckl = std::cos(row.theta[k] - row.theta[l]);
        acc[0] += zbar[k] * zbar[l] * ckl;
        acc[1] += 4.0 * zbar[k] * c[l] * ckl;
        acc[2] += -2.0 * zbar[k] * c[k];
        acc[3] += 4.0 * c[k] * c[l] * ckl - 4.0 * c[k] * c[k] + 1.0;
      }
    }
    for (std::size_t i = 0; i < 4; ++i) per_row[i].push_back(acc[i]);
  }
  std::array<double, 4> w{};
  for (std::size_t i = 0; i < 4; ++i) w[i] = pairwise_sum(per_row[i]);
  return w;
}

double k1_direct(double zk, double zl, double theta_k, double theta_l) {
  const std::complex<double> a = std::polar(zk, -theta_k) - 1.0;
  const std::complex<double> b = std::polar(zl, theta_l) - 1.0;
  return (a * b).real();
}

double k1_expanded(double zk, double zl, double theta_k, double theta_l) {
  return zk * zl * std::cos(theta_k - theta_l) - zk * std::cos(theta_k) - zl * std::cos(theta_l) + 1.0;
}

double k1_split(double zk, double zl, double theta_k, double theta_l) {
  const double ck = std::cos(theta_k);
  const double cl = std::cos(theta_l);
  const double ckl = std::cos(theta_k - theta_l);
  const double bk = zk - 2.0 * ck;
  const double bl = zl - 2.0 * cl;
  return bk * bl * ckl + 2.0 * bk * cl * ckl + 2.0 * bl * ck * ckl - bk * ck - bl * cl + 4.0 * ck * cl * ckl -
         2.0 * ck * ck - 2.0 * cl * cl + 1.0;
}

TrigCheck trig_identity_check(int samples, std::uint64_t seed) {
  if (samples < 1) throw ParameterError("trig_identity_check: samples must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  TrigCheck out;
  for (int i = 0; i < samples; ++i) {
    const double a = angle(rng);
    const double b = angle(rng);
    const double lhs = 4.0 * std::cos(a) * std::cos(b) * std::cos(a - b);
    const double rhs = 1.0 + std::cos(2.0 * (a - b)) + std::cos(2.0 * a) + std::cos(2.0 * b);
    out.product_identity = std::max(out.product_identity, std::abs(lhs - rhs));
    const double sq = -4.0 * std::cos(a) * std::cos(a);
    out.square_identity = std::max(out.square_identity, std::abs(sq - (-2.0 - 2.0 * std::cos(2.0 * a))));
  }
  return out;
}

RCount count_R_and_mu(const WindowMesh& mesh, int M) {
  check_depth(mesh, M);
  RCount out;
  out.q1 = static_cast<std::int64_t>(mesh.rows.size());
  if (out.q1 < 2 * static_cast<std::int64_t>(M)) {
    throw DegenerateInputError("count_R_and_mu: window has fewer than 2M grid points");
  }
  std::vector<bool> preserving;
  preserving.reserve(mesh.rows.size());
  for (const auto& row : mesh.rows) {
    const PointSums s = point_sums(row, M);
    preserving.push_back(s.sign_preserving);
    if (s.sign_preserving) ++out.R;
    if (s.ambiguous) ++out.ambiguous;
  }
  // Pairs (j1, j2) of abutting runs of M points in nu order; the final j2
  // absorbs the remainder. Only the j1 runs enter mu.
  out.parts = out.q1 / (2 * M);
  for (std::int64_t p = 0; p < out.parts; ++p) {
    const std::int64_t begin = 2 * p * M;
    bool all = true;
    for (std::int64_t i = begin; i < begin + M; ++i) all = all && preserving[static_cast<std::size_t>(i)];
    if (all) ++out.mu;
  }
  return out;
}

SumReport compute_sum_report(const WindowMesh& mesh, int M) {
  check_depth(mesh, M);
  SumReport r;
  r.window = mesh.window;
  r.M = M;
  const JSums j = sum_J(mesh, M);
  r.J = j.squares;
  r.J_literal = j.literal;
  r.J_residual = j.residual;
  r.N = sum_N(mesh, M);
  r.Q1_exact = static_cast<std::int64_t>(mesh.rows.size());
  r.Q1_formula = q1_formula(mesh.window);
  const RCount rc = count_R_and_mu(mesh, M);
  r.R = rc.R;
  r.mu = rc.mu;
  r.parts = rc.parts;
  r.ambiguous = rc.ambiguous;
  r.w = w_decomposition(mesh, M);
  const double total = ((r.w[0] + r.w[1]) + r.w[2]) + r.w[3];
  r.w_residual = std::abs(r.N - total) / std::max(1.0, std::abs(r.N));
  return r;
}

}  // namespace zerolab
