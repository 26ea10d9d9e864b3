#include "zerolab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "zerolab/error.hpp"
#include "zerolab/grid.hpp"
#include "zerolab/mesh.hpp"
#include "zerolab/oracle.hpp"
#include "zerolab/special.hpp"
#include "zerolab/sums.hpp"

namespace zerolab {

namespace {

constexpr std::uint64_t kSeed = 20240611;

VerifyCheck check(std::string name, double residual, double tol) {
  return {std::move(name), residual, tol, residual <= tol};
}

VerifyResult identities() {
  VerifyResult r{"identities", {}};
  const TrigCheck trig = trig_identity_check(10000, kSeed);
  r.checks.push_back(check("trig_product", trig.product_identity, 1e-12));
  r.checks.push_back(check("trig_square", trig.square_identity, 1e-12));

  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> zdist(-4.0, 4.0);
  std::uniform_real_distribution<double> adist(-kPi, kPi);
  double k1 = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double zk = zdist(rng), zl = zdist(rng), a = adist(rng), b = adist(rng);
    const double direct = k1_direct(zk, zl, a, b);
    k1 = std::max({k1, std::abs(direct - k1_expanded(zk, zl, a, b)), std::abs(direct - k1_split(zk, zl, a, b))});
  }
  r.checks.push_back(check("k1_expansion", k1, 1e-12));

  std::uniform_real_distribution<double> tdist(1e3, 1e5);
  double zbar = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t = tdist(rng);
    zbar = std::max(zbar, std::abs(zbar_exact(t) + 2.0 * std::cos(theta(t).theta) - rs_z(t).z));
  }
  r.checks.push_back(check("zbar_definition", zbar, 1e-12));

  const int M = 10;
  const WindowMesh mesh = build_mesh(make_window(1e5, 1.2, PsiMode::kExplicit, 50.0), M);
  const SumReport sums = compute_sum_report(mesh, M);
  r.checks.push_back(check("J_two_routes", sums.J_residual, 1e-9));
  r.checks.push_back(check("N_w_decomposition", sums.w_residual, 1e-9));
  return r;
}

VerifyResult oracle_suite() {
  VerifyResult r{"oracle", {}};
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> tdist(50.0, 1e5);
  double o4 = 0.0, o2_high = 0.0, o0 = 0.0, th = 0.0, self = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t = tdist(rng);
    const double ref = oracle::em_z(t);
    o4 = std::max(o4, std::abs(rs_z(t, 4).z - ref));
    o0 = std::max(o0, std::abs(rs_z(t, 0).z - ref));
    if (t >= 1e4) o2_high = std::max(o2_high, std::abs(rs_z(t, 2).z - ref));
    th = std::max(th, static_cast<double>(std::abs(static_cast<long double>(theta(t).theta) -
                                                   oracle::theta_lngamma(t))));
    if (i % 10 == 0) {
      const long terms = std::max(static_cast<long>(std::ceil(t)), 100L);
      self = std::max(self, std::abs(ref - oracle::em_z_terms(t, 2 * terms)));
    }
  }
  r.checks.push_back(check("rs_order4_vs_em", o4, 1e-6));
  r.checks.push_back(check("rs_order2_vs_em_t_ge_1e4", o2_high, 1e-6));
  r.checks.push_back(check("rs_order0_vs_em", o0, 0.05));
  r.checks.push_back(check("theta_series_vs_lngamma", th, 1e-8));
  r.checks.push_back(check("em_self_consistency", self, 1e-10));
  return r;
}

VerifyResult grid_suite() {
  VerifyResult r{"grid", {}};
  const std::int64_t nu0 = first_nu_at_or_above(1e5);
  const auto points = grid_points_range(nu0, nu0 + 1000);
  double res = 0.0;
  double violations = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    res = std::max(res, tbar_residual(points[i].nu, points[i].tbar));
    if (i > 0 && !(points[i].tbar > points[i - 1].tbar)) violations += 1.0;
  }
  r.checks.push_back(check("tbar_residual", res, kGridResidualTol));
  r.checks.push_back(check("tbar_monotone_violations", violations, 0.0));

  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> logt(std::log(1e3), std::log(1e9));
  double omega = 0.0;
  for (int i = 0; i < 100; ++i) {
    const WindowSpec w = make_window(std::exp(logt(rng)), 1.2, PsiMode::kExplicit, 1.0);
    omega = std::max(omega, std::abs(2.0 * w.omega * std::log(w.P0) - kPi));
  }
  r.checks.push_back(check("two_omega_log_p0", omega, 1e-12));

  const WindowSpec w = make_window(1e5, 1.2, PsiMode::kExplicit, 50.0);
  const auto count = static_cast<double>(grid_points_in_window(w).size());
  r.checks.push_back(check("q1_count", std::abs(count - q1_formula(w)), 2.0 + w.U * w.U / w.T));
  return r;
}

}  // namespace

bool VerifyResult::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.pass; });
}

nlohmann::json VerifyResult::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    arr.push_back({{"check", c.name}, {"max_residual", c.max_residual}, {"tolerance", c.tolerance}, {"pass", c.pass}});
  }
  return {{"suite", suite}, {"pass", pass()}, {"checks", arr}};
}

VerifySuite parse_suite(const std::string& name) {
  if (name == "identities") return VerifySuite::kIdentities;
  if (name == "oracle") return VerifySuite::kOracle;
  if (name == "grid") return VerifySuite::kGrid;
  throw ParameterError("unknown suite '" + name + "' (expected identities, oracle or grid)");
}

VerifyResult run_verify(VerifySuite suite) {
  switch (suite) {
    case VerifySuite::kIdentities:
      return identities();
    case VerifySuite::kOracle:
      return oracle_suite();
    case VerifySuite::kGrid:
      return grid_suite();
  }
  throw ParameterError("unknown suite");
}

}  // namespace zerolab
