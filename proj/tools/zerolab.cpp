// Command-line front end: scan, verify, zeros.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "zerolab/error.hpp"
#include "zerolab/oracle.hpp"
#include "zerolab/scan.hpp"
#include "zerolab/segments.hpp"
#include "zerolab/special.hpp"
#include "zerolab/verify.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIncomplete = 3;
constexpr int kExitCheckpoint = 4;

struct ScanFlags {
  std::string config_path;
  double T = 0.0;
  double U = 0.0;
  double delta = 0.0;
  std::string psi_mode;
  int M = 0;
  bool confirm = false;
  int workers = 1;
  int chunk = 0;
  std::string out;
  std::string checkpoint;
  bool csv = false;
  int max_chunks = 0;
};

struct ZerosFlags {
  double a = 0.0;
  double b = 0.0;
  double step = 0.05;
  bool oracle = false;
  std::string out;
};

int run_scan_command(const ScanFlags& f, CLI::App& cmd) {
  zerolab::ScanConfig c;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw zerolab::ParameterError("cannot read config " + f.config_path);
    c = zerolab::apply_config_json(c, nlohmann::json::parse(in));
  }
  // Flags override the config file.
  if (cmd.count("--T")) c.T = f.T;
  if (cmd.count("--U")) c.U = f.U;
  if (cmd.count("--delta")) c.delta = f.delta;
  if (cmd.count("--psi-mode")) {
    c = zerolab::apply_config_json(c, {{"psi_mode", f.psi_mode}});
    if (c.psi_mode == zerolab::PsiMode::kLogLog && !cmd.count("--U")) c.U.reset();
  }
  if (cmd.count("--M")) c.M = f.M;
  if (cmd.count("--confirm")) c.confirm = f.confirm;
  if (cmd.count("--workers")) c.workers = f.workers;
  if (cmd.count("--chunk")) c.chunk = f.chunk;
  if (cmd.count("--out")) c.out = f.out;
  if (cmd.count("--checkpoint")) c.checkpoint = f.checkpoint;
  if (cmd.count("--csv")) c.csv = f.csv;
  if (cmd.count("--max-chunks")) c.max_chunks = f.max_chunks;
  if (c.T == 0.0) throw zerolab::ParameterError("scan needs --T (flag or config file)");

  const zerolab::ScanOutcome outcome = zerolab::run_scan(c);
  if (!outcome.complete) {
    std::cerr << "stopped after " << outcome.chunks_done << " of " << outcome.chunks_total
              << " chunks; rerun with the same --checkpoint to resume\n";
    return kExitIncomplete;
  }
  if (c.out.empty()) std::cout << outcome.report.dump(2) << "\n";
  return 0;
}

int run_verify_command(const std::string& suite) {
  const zerolab::VerifyResult r = zerolab::run_verify(zerolab::parse_suite(suite));
  std::cout << r.to_json().dump() << "\n";
  return r.pass() ? 0 : kExitFailure;
}

int run_zeros_command(const ZerosFlags& f) {
  if (!(f.a < f.b)) throw zerolab::ParameterError("zeros needs --a < --b");
  zerolab::ZEvaluator eval;
  std::string name;
  if (f.oracle) {
    if (!(f.a > 0.0 && f.b <= zerolab::oracle::kMaxT)) {
      throw zerolab::ParameterError("oracle sweep needs 0 < a and b <= 1e7");
    }
    eval = [](double t) { return zerolab::oracle::em_z(t); };
    name = "oracle";
  } else {
    if (!(f.a >= zerolab::kRiemannSiegelMinT)) {
      throw zerolab::ParameterError("fast sweep needs a >= 50; pass --oracle for small t");
    }
    eval = zerolab::fast_evaluator();
    name = "riemann-siegel";
  }
  const auto zeros = zerolab::locate_zeros(f.a, f.b, f.step, eval);
  std::ostringstream csv;
  csv << "t0,bracket_width,evaluator\n";
  for (const auto& z : zeros) {
    csv << zerolab::format_real(z.t0) << ',' << zerolab::format_real(z.width()) << ',' << name << '\n';
  }
  if (f.out.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(f.out, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + f.out);
    out << csv.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sign changes of the Hardy Z-function on the discrete mesh tbar_nu + k omega"};
  app.set_version_flag("--version", zerolab::version());
  app.require_subcommand(1);

  ScanFlags sf;
  auto* scan = app.add_subcommand("scan", "Detect good segments and compute window sums");
  scan->add_option("--config", sf.config_path, "JSON config file; flags override its keys");
  scan->add_option("--T", sf.T, "Window base T (>= 1e3)");
  scan->add_option("--U", sf.U, "Explicit window length (selects explicit psi mode)");
  scan->add_option("--delta", sf.delta, "delta > 1; M1 = floor(delta ln T)");
  scan->add_option("--psi-mode", sf.psi_mode, "loglog or explicit")->check(CLI::IsMember({"loglog", "explicit"}));
  scan->add_option("--M", sf.M, "Mesh depth for the sums (default M1)");
  scan->add_flag("--confirm", sf.confirm, "Bisect a zero inside every good segment");
  scan->add_option("--workers", sf.workers, "Worker threads");
  scan->add_option("--chunk", sf.chunk, "Grid points per checkpoint chunk (default 512)");
  scan->add_option("--out", sf.out, "JSON report path (stdout if omitted)");
  scan->add_option("--checkpoint", sf.checkpoint, "Checkpoint file; resumed if present");
  scan->add_flag("--csv", sf.csv, "Also write <out>_segments.csv and <out>_sums.csv");
  scan->add_option("--max-chunks", sf.max_chunks, "Stop after this many new chunks (exit 3)");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run an invariant suite");
  verify->add_option("--suite", suite, "identities, oracle or grid")
      ->required()
      ->check(CLI::IsMember({"identities", "oracle", "grid"}));

  ZerosFlags zf;
  auto* zeros = app.add_subcommand("zeros", "Locate sign changes of Z on [a, b]");
  zeros->add_option("--a", zf.a, "Left end")->required();
  zeros->add_option("--b", zf.b, "Right end")->required();
  zeros->add_option("--step", zf.step, "Sweep step (default 0.05)");
  zeros->add_flag("--oracle", zf.oracle, "Use the Euler-Maclaurin oracle (any t > 0)");
  zeros->add_option("--out", zf.out, "CSV path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version exit 0; every other parse failure is a usage error.
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*scan) return run_scan_command(sf, *scan);
    if (*verify) return run_verify_command(suite);
    if (*zeros) return run_zeros_command(zf);
  } catch (const zerolab::CheckpointMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckpoint;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return 0;
}
