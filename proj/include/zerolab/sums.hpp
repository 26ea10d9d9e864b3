#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>

#include "zerolab/grid.hpp"
#include "zerolab/mesh.hpp"

namespace zerolab {

/// Per-grid-point sums over k = 0..M.
struct PointSums {
  std::int64_t nu = 0;
  double J_nu = 0.0;              // sum_k Z_k
  double L_nu = 0.0;              // sum_k |Z_k|
  std::complex<double> K_nu;      // sum_k (e^{-i theta_k} Z_k - 1)
  bool sign_preserving = false;   // every Z_k has one strict sign
  bool ambiguous = false;         // some |Z_k| fell below the sign threshold
};

/// Requires row depth >= M and M >= 1.
PointSums point_sums(const MeshRow& row, int M);

/// Evaluates the row for `nu` and returns its sums. An empty evaluator
/// selects fast_evaluator().
PointSums point_sums(std::int64_t nu, const WindowSpec& w, int M, const ZEvaluator& evaluator = {});

/// J by the literal triple sum and by sum_nu J_nu^2.
struct JSums {
  double literal = 0.0;
  double squares = 0.0;
  double residual = 0.0;  // |literal - squares| / max(1, |squares|)
};

JSums sum_J(const WindowMesh& mesh, int M);

/// sum_nu |K_nu|^2
double sum_N(const WindowMesh& mesh, int M);

/// w1..w4 with Zbar_k = Z_k - 2cos(theta_k) taken from the cached mesh.
std::array<double, 4> w_decomposition(const WindowMesh& mesh, int M);

/// Re{(e^{-i a} zk - 1)(e^{i b} zl - 1)} evaluated as a complex product.
double k1_direct(double zk, double zl, double theta_k, double theta_l);

/// Zk Zl cos(a - b) - Zk cos a - Zl cos b + 1
double k1_expanded(double zk, double zl, double theta_k, double theta_l);

/// The same quantity split with Zk = 2cos(a) + Zbar_k term by term.
double k1_split(double zk, double zl, double theta_k, double theta_l);

struct TrigCheck {
  double product_identity = 0.0;  // 4cos a cos b cos(a-b) = 1 + cos 2(a-b) + cos 2a + cos 2b
  double square_identity = 0.0;    // -4cos^2 a = -2 - 2cos 2a
};

/// Max residuals over `samples` random angle pairs. Throws ParameterError for samples < 1.
TrigCheck trig_identity_check(int samples, std::uint64_t seed = 1);

struct RCount {
  std::int64_t R = 0;
  std::int64_t parts = 0;
  std::int64_t mu = 0;
  std::int64_t q1 = 0;
  std::int64_t ambiguous = 0;  // grid points flagged ambiguous

  std::int64_t parts_minus_mu() const { return parts - mu; }
};

/// Throws DegenerateInputError when the window holds fewer than 2M grid points.
RCount count_R_and_mu(const WindowMesh& mesh, int M);

struct SumReport {
  WindowSpec window;
  int M = 0;
  double J = 0.0;
  double J_literal = 0.0;
  double J_residual = 0.0;
  double N = 0.0;
  std::int64_t Q1_exact = 0;
  double Q1_formula = 0.0;
  std::int64_t R = 0;
  std::int64_t mu = 0;
  std::int64_t parts = 0;
  std::int64_t ambiguous = 0;
  std::array<double, 4> w{};
  double w_residual = 0.0;
};

/// All window-level quantities from one cached mesh of depth >= M.
SumReport compute_sum_report(const WindowMesh& mesh, int M);

}  // namespace zerolab
