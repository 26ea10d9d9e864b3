#include <doctest.h>

#include <cmath>
#include <random>

#include "zerolab/error.hpp"
#include "zerolab/oracle.hpp"
#include "zerolab/special.hpp"
#include "zerolab/sums.hpp"

using namespace zerolab;

namespace {

constexpr int kM = 10;

const WindowSpec& window_1e5() {
  static const WindowSpec w = make_window(1e5, 1.2, PsiMode::kExplicit, 50.0);
  return w;
}

const WindowMesh& mesh_1e5() {
  static const WindowMesh m = build_mesh(window_1e5(), kM);
  return m;
}

MeshRow row_of(std::int64_t nu, std::vector<double> z) {
  MeshRow r;
  r.point = {nu, 1e4 + static_cast<double>(nu), 0.0};
  r.theta.assign(z.size(), 0.0);
  r.z = std::move(z);
  return r;
}

}  // namespace

TEST_CASE("point sums bound each other") {
  for (const auto& row : mesh_1e5().rows) {
    const PointSums s = point_sums(row, kM);
    CHECK(std::abs(s.J_nu) <= s.L_nu * (1 + 1e-15));
    // |K + (M+1)| = |sum e^{-i theta} Z| <= L
    CHECK(s.L_nu >= (kM + 1) - std::abs(s.K_nu) - 1e-12);
    double sq = 0;
    for (int k = 0; k <= kM; ++k) sq += row.z[k] * row.z[k];
    CHECK(s.J_nu * s.J_nu <= (kM + 1) * sq * (1 + 1e-12));
  }
}

TEST_CASE("K components against the oracle") {
  const auto& w = window_1e5();
  const auto points = grid_points_in_window(w);
  REQUIRE(points.size() >= 100);
  for (std::size_t i = 0; i < 100; i += 11) {
    const PointSums s = point_sums(points[i].nu, w, kM);
    double re = 0, im = 0, j = 0;
    for (int k = 0; k <= kM; ++k) {
      const double t = mesh_abscissa(points[i], w, k);
      const double z = oracle::em_z(t);
      const long double th = oracle::theta_lngamma(t);
      re += z * static_cast<double>(std::cos(th)) - 1.0;
      im -= z * static_cast<double>(std::sin(th));
      j += z;
    }
    CHECK(std::abs(s.K_nu.real() - re) <= 1e-5);
    CHECK(std::abs(s.K_nu.imag() - im) <= 1e-5);
    CHECK(std::abs(s.J_nu - j) <= 1e-5);
  }
}

TEST_CASE("J by both routes") {
  const JSums j = sum_J(mesh_1e5(), kM);
  CHECK(j.squares >= 0.0);
  CHECK(j.literal >= -1e-9 * std::abs(j.squares));
  CHECK(j.residual <= 1e-9);
}

TEST_CASE("N equals the w decomposition") {
  const SumReport r = compute_sum_report(mesh_1e5(), kM);
  CHECK(r.N >= 0.0);
  CHECK(r.w_residual <= 1e-9);
  CHECK(r.Q1_exact == static_cast<std::int64_t>(mesh_1e5().rows.size()));
  CHECK(std::abs(static_cast<double>(r.Q1_exact) - r.Q1_formula) <= 2.0 + 50.0 * 50.0 / 1e5);
}

TEST_CASE("K1 algebraic identity") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> z(-5.0, 5.0);
  std::uniform_real_distribution<double> a(-kPi, kPi);
  for (int i = 0; i < 1000; ++i) {
    const double zk = z(rng), zl = z(rng), tk = a(rng), tl = a(rng);
    const double d = k1_direct(zk, zl, tk, tl);
    REQUIRE(std::abs(d - k1_expanded(zk, zl, tk, tl)) <= 1e-12);
    REQUIRE(std::abs(d - k1_split(zk, zl, tk, tl)) <= 1e-12);
  }
  // Z_k = e^{i theta_k} and Z_l = e^{-i theta_l} would zero each factor; on
  // the real line the degenerate case is theta = 0, Z = 1.
  CHECK(k1_direct(1.0, 1.0, 0.0, 0.0) == 0.0);
  CHECK(k1_expanded(1.0, 1.0, 0.0, 0.0) == 0.0);
  CHECK(k1_split(1.0, 1.0, 0.0, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("trigonometric identities") {
  const TrigCheck c = trig_identity_check(10000, 3);
  CHECK(c.product_identity <= 1e-12);
  CHECK(c.square_identity <= 1e-12);
  CHECK_THROWS_AS(trig_identity_check(0), ParameterError);
}

TEST_CASE("Z replaced by 2cos(theta) leaves only w4") {
  const ZEvaluator two_cos = [](double t) { return 2.0 * std::cos(theta_mod_2pi(t)); };
  const WindowMesh mesh = build_mesh(window_1e5(), kM, two_cos);
  const auto w = w_decomposition(mesh, kM);
  CHECK(w[0] == 0.0);
  CHECK(w[1] == 0.0);
  CHECK(w[2] == 0.0);
  const double n = sum_N(mesh, kM);
  CHECK(std::abs(n - w[3]) <= 1e-9 * std::max(1.0, n));
}

TEST_CASE("a sign-preserving evaluator saturates R and mu") {
  const ZEvaluator positive = [](double t) { return std::abs(rs_z(t).z) + 0.5; };
  const WindowMesh mesh = build_mesh(window_1e5(), kM, positive);
  for (const auto& row : mesh.rows) {
    const PointSums s = point_sums(row, kM);
    CHECK(s.J_nu == doctest::Approx(s.L_nu).epsilon(1e-15));
    CHECK(s.sign_preserving);
  }
  const RCount rc = count_R_and_mu(mesh, kM);
  CHECK(rc.R == rc.q1);
  CHECK(rc.mu == rc.parts);
  CHECK(rc.parts == rc.q1 / (2 * kM));
}

TEST_CASE("mu only looks at the first run of each pair") {
  WindowMesh mesh;
  mesh.window = make_window(1e4, 1.2, PsiMode::kExplicit, 10.0);
  mesh.depth = 2;
  const std::vector<double> pos{1, 2, 3}, neg{-1, -2, -3}, mixed{1, -2, 3};
  // M = 2, 9 rows: pairs start at rows 0 and 4; row 8 is left over.
  const std::vector<std::vector<double>> z{pos, neg, mixed, mixed, pos, mixed, pos, pos, pos};
  for (std::size_t i = 0; i < z.size(); ++i) mesh.rows.push_back(row_of(static_cast<std::int64_t>(i), z[i]));
  const RCount rc = count_R_and_mu(mesh, 2);
  CHECK(rc.q1 == 9);
  CHECK(rc.parts == 2);
  CHECK(rc.mu == 1);
  CHECK(rc.R == 6);
  CHECK(rc.parts_minus_mu() == 1);

  mesh.rows.resize(3);
  CHECK_THROWS_AS(count_R_and_mu(mesh, 2), DegenerateInputError);
}

TEST_CASE("ambiguous values block sign preservation") {
  const PointSums s = point_sums(row_of(1, {1.0, 0.0, 2.0}), 2);
  CHECK(s.ambiguous);
  CHECK_FALSE(s.sign_preserving);
}

TEST_CASE("parts minus mu is bounded by sign-change candidates") {
  // A j1 run that is not sign preserving holds a strict sign change within
  // depth M, so parts - mu cannot exceed the number of such rows.
  const RCount rc = count_R_and_mu(mesh_1e5(), kM);
  CHECK(rc.parts_minus_mu() <= rc.q1 - rc.R);
  CHECK(rc.parts_minus_mu() >= 0);
}

TEST_CASE("J and N scale with the window") {
  const WindowMesh m6 = build_mesh(make_window(1e6, 1.2, PsiMode::kExplicit, 50.0), kM);
  const SumReport r5 = compute_sum_report(mesh_1e5(), kM);
  const SumReport r6 = compute_sum_report(m6, kM);
  // Per grid point, both sums change only by a power of log T, so a decade in
  // T moves them by a small factor.
  const double j5 = r5.J / r5.Q1_exact, j6 = r6.J / r6.Q1_exact;
  const double n5 = r5.N / r5.Q1_exact, n6 = r6.N / r6.Q1_exact;
  MESSAGE("J/Q1 " << j5 << " -> " << j6 << ", N/Q1 " << n5 << " -> " << n6);
  CHECK(j6 / j5 > 0.5);
  CHECK(j6 / j5 < 4.0);
  CHECK(n6 / n5 > 0.5);
  CHECK(n6 / n5 < 4.0);
  CHECK(r6.w_residual <= 1e-9);
}
