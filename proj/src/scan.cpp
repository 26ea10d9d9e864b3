#include "zerolab/scan.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "zerolab/error.hpp"

#ifndef ZEROLAB_VERSION
#define ZEROLAB_VERSION "0.0.0"
#endif

namespace zerolab {

using nlohmann::json;

namespace {

const char* psi_mode_name(PsiMode m) { return m == PsiMode::kLogLog ? "loglog" : "explicit"; }

PsiMode psi_mode_from(const std::string& s) {
  if (s == "loglog") return PsiMode::kLogLog;
  if (s == "explicit") return PsiMode::kExplicit;
  throw ParameterError("unknown psi mode '" + s + "' (expected loglog or explicit)");
}

int sums_depth(const ScanConfig& c, const WindowSpec& w) { return c.M.value_or(w.M1); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string sibling_path(const std::string& out, const std::string& suffix) {
  std::filesystem::path p(out);
  const std::string stem = p.stem().string();
  return (p.parent_path() / (stem + suffix)).string();
}

}  // namespace

std::string version() { return ZEROLAB_VERSION; }

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ScanConfig apply_config_json(ScanConfig c, const json& j) {
  if (!j.is_object()) throw ParameterError("config: expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "T") {
      c.T = value.get<double>();
    } else if (key == "U") {
      if (value.is_null()) {
        c.U.reset();
      } else {
        c.U = value.get<double>();
      }
    } else if (key == "delta") {
      c.delta = value.get<double>();
    } else if (key == "psi_mode") {
      c.psi_mode = psi_mode_from(value.get<std::string>());
    } else if (key == "M") {
      if (value.is_null()) {
        c.M.reset();
      } else {
        c.M = value.get<int>();
      }
    } else if (key == "confirm") {
      c.confirm = value.get<bool>();
    } else if (key == "workers") {
      c.workers = value.get<int>();
    } else if (key == "chunk") {
      c.chunk = value.get<int>();
    } else if (key == "out") {
      c.out = value.get<std::string>();
    } else if (key == "checkpoint") {
      c.checkpoint = value.get<std::string>();
    } else if (key == "csv") {
      c.csv = value.get<bool>();
    } else {
      throw ParameterError("config: unknown key '" + key + "'");
    }
  }
  return c;
}

WindowSpec resolve_window(const ScanConfig& c) {
  const PsiMode mode = c.U ? PsiMode::kExplicit : c.psi_mode;
  if (mode == PsiMode::kExplicit && !c.U) throw ParameterError("explicit psi mode needs --U");
  return make_window(c.T, c.delta, mode, c.U);
}

json canonical_config(const ScanConfig& c) {
  const WindowSpec w = resolve_window(c);
  return json{
      {"T", c.T},
      {"U", w.U},
      {"delta", c.delta},
      {"psi_mode", psi_mode_name(w.psi_mode)},
      {"M", sums_depth(c, w)},
      {"confirm", c.confirm},
      {"chunk", c.chunk},
  };
}

std::string config_hash(const ScanConfig& c) {
  const std::string s = canonical_config(c).dump();
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

json window_to_json(const WindowSpec& w) {
  return json{
      {"T", w.T},       {"U", w.U},       {"delta", w.delta}, {"M1", w.M1},
      {"omega", w.omega}, {"P0", w.P0},   {"psi", w.psi},     {"psi_mode", psi_mode_name(w.psi_mode)},
  };
}

json mesh_row_to_json(const MeshRow& row) {
  return json{
      {"nu", row.point.nu},
      {"tbar", row.point.tbar},
      {"residual", row.point.residual},
      {"z", row.z},
      {"theta", row.theta},
  };
}

MeshRow mesh_row_from_json(const json& j) {
  MeshRow row;
  row.point.nu = j.at("nu").get<std::int64_t>();
  row.point.tbar = j.at("tbar").get<double>();
  row.point.residual = j.at("residual").get<double>();
  row.z = j.at("z").get<std::vector<double>>();
  row.theta = j.at("theta").get<std::vector<double>>();
  if (row.z.size() != row.theta.size() || row.z.empty()) throw std::runtime_error("checkpoint: malformed mesh row");
  return row;
}

json checkpoint_to_json(const ScanCheckpoint& cp) {
  json chunks = json::array();
  for (const auto& [b, e] : cp.completed_chunks) chunks.push_back(json::array({b, e}));
  return json{
      {"config_hash", cp.config_hash},
      {"window", window_to_json(cp.window)},
      {"completed_chunks", chunks},
      {"partial", cp.partial},
  };
}

ScanCheckpoint checkpoint_from_json(const json& j) {
  ScanCheckpoint cp;
  cp.config_hash = j.at("config_hash").get<std::string>();
  const json& w = j.at("window");
  cp.window.T = w.at("T").get<double>();
  cp.window.U = w.at("U").get<double>();
  cp.window.delta = w.at("delta").get<double>();
  cp.window.M1 = w.at("M1").get<int>();
  cp.window.omega = w.at("omega").get<double>();
  cp.window.P0 = w.at("P0").get<double>();
  cp.window.psi = w.at("psi").get<double>();
  cp.window.psi_mode = psi_mode_from(w.at("psi_mode").get<std::string>());
  for (const auto& c : j.at("completed_chunks")) {
    cp.completed_chunks.emplace_back(c.at(0).get<std::int64_t>(), c.at(1).get<std::int64_t>());
  }
  for (const auto& p : j.at("partial")) cp.partial.push_back(p);
  if (cp.partial.size() != cp.completed_chunks.size()) {
    throw std::runtime_error("checkpoint: chunk and partial counts differ");
  }
  for (std::size_t i = 0; i < cp.completed_chunks.size(); ++i) {
    const auto [b, e] = cp.completed_chunks[i];
    if (e < b || (i > 0 && b < cp.completed_chunks[i - 1].second)) {
      throw std::runtime_error("checkpoint: chunks are not sorted and disjoint");
    }
  }
  return cp;
}

void save_checkpoint(const std::string& path, const ScanCheckpoint& cp) {
  const std::string tmp = path + ".tmp";
  write_file(tmp, checkpoint_to_json(cp).dump());
  std::filesystem::rename(tmp, path);
}

std::optional<ScanCheckpoint> load_checkpoint(const std::string& path) {
  if (!std::filesystem::exists(path)) return std::nullopt;
  return checkpoint_from_json(json::parse(read_file(path)));
}

json build_report(const ScanConfig& c, const SegmentReport& seg, const SumReport& sums) {
  json items = json::array();
  for (const auto& s : seg.segments) {
    json zero = nullptr;
    if (s.zero) {
      zero = json{{"t0", s.zero->t0},
                  {"a", s.zero->bracket.first},
                  {"b", s.zero->bracket.second},
                  {"residual", s.zero->residual}};
    }
    items.push_back(json{{"nu", s.nu},
                         {"k", s.k},
                         {"left", s.left},
                         {"right", s.right},
                         {"z_left", s.z_left},
                         {"z_right", s.z_right},
                         {"zero", zero}});
  }
  return json{
      {"tool", "zerolab"},
      {"version", version()},
      {"config", canonical_config(c)},
      {"window", window_to_json(seg.window)},
      {"segments",
       {{"G", seg.G},
        {"n_grid", seg.n_grid},
        {"candidates", seg.candidates},
        {"ambiguous", seg.ambiguous},
        {"items", items}}},
      {"sums",
       {{"M", sums.M},
        {"J", sums.J},
        {"J_literal", sums.J_literal},
        {"J_residual", sums.J_residual},
        {"N", sums.N},
        {"Q1_exact", sums.Q1_exact},
        {"Q1_formula", sums.Q1_formula},
        {"R", sums.R},
        {"mu", sums.mu},
        {"parts", sums.parts},
        {"parts_minus_mu", sums.parts - sums.mu},
        {"ambiguous", sums.ambiguous},
        {"w", sums.w},
        {"w_residual", sums.w_residual}}},
  };
}

std::string segments_to_csv(const SegmentReport& report) {
  std::string out = "nu,k,left,right,z_left,z_right,zero_t0\n";
  for (const auto& s : report.segments) {
    out += std::to_string(s.nu) + ',' + std::to_string(s.k) + ',' + format_real(s.left) + ',' +
           format_real(s.right) + ',' + format_real(s.z_left) + ',' + format_real(s.z_right) + ',' +
           (s.zero ? format_real(s.zero->t0) : std::string()) + '\n';
  }
  return out;
}

std::string sums_to_csv(const SumReport& r) {
  std::string out =
      "T,U,delta,M,J,J_literal,J_residual,N,Q1_exact,Q1_formula,R,mu,parts,w1,w2,w3,w4,w_residual\n";
  const std::vector<std::string> fields = {
      format_real(r.window.T), format_real(r.window.U), format_real(r.window.delta),
      std::to_string(r.M),     format_real(r.J),        format_real(r.J_literal),
      format_real(r.J_residual), format_real(r.N),      std::to_string(r.Q1_exact),
      format_real(r.Q1_formula), std::to_string(r.R),   std::to_string(r.mu),
      std::to_string(r.parts), format_real(r.w[0]),     format_real(r.w[1]),
      format_real(r.w[2]),     format_real(r.w[3]),     format_real(r.w_residual),
  };
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ',';
    out += fields[i];
  }
  out += '\n';
  return out;
}

ScanOutcome run_scan(const ScanConfig& c) {
  if (c.workers < 1) throw ParameterError("--workers must be at least 1");
  if (c.chunk < 1) throw ParameterError("--chunk must be at least 1");
  if (c.max_chunks && *c.max_chunks < 0) throw ParameterError("max chunks must be nonnegative");
  const WindowSpec w = resolve_window(c);
  const int M = sums_depth(c, w);
  if (M < 1) throw ParameterError("--M must be at least 1");
  const int depth = std::max(w.M1 + 1, M);
  const std::string hash = config_hash(c);

  const NuRange range = window_nu_range(w);
  if (range.size() < 2 * static_cast<std::int64_t>(M)) {
    throw ParameterError("window holds " + std::to_string(range.size()) + " grid points, fewer than 2M = " +
                         std::to_string(2 * M) + "; widen U or lower M");
  }
  std::vector<std::pair<std::int64_t, std::int64_t>> plan;
  for (std::int64_t b = range.begin; b < range.end; b += c.chunk) plan.emplace_back(b, std::min(range.end, b + c.chunk));

  ScanCheckpoint cp;
  cp.window = w;
  cp.config_hash = hash;
  if (!c.checkpoint.empty()) {
    if (auto loaded = load_checkpoint(c.checkpoint)) {
      if (loaded->config_hash != hash) {
        throw CheckpointMismatch("checkpoint " + c.checkpoint + " was written for config " + loaded->config_hash +
                                 ", current config is " + hash);
      }
      if (loaded->completed_chunks.size() > plan.size() ||
          !std::equal(loaded->completed_chunks.begin(), loaded->completed_chunks.end(), plan.begin())) {
        throw CheckpointMismatch("checkpoint " + c.checkpoint + " does not match the chunk plan");
      }
      cp = std::move(*loaded);
    }
  }

  ScanOutcome outcome;
  outcome.chunks_total = plan.size();
  std::vector<MeshRow> rows;
  for (const auto& part : cp.partial) {
    for (const auto& r : part) rows.push_back(mesh_row_from_json(r));
  }

  int fresh = 0;
  for (std::size_t i = cp.completed_chunks.size(); i < plan.size(); ++i) {
    if (c.max_chunks && fresh >= *c.max_chunks) {
      outcome.chunks_done = cp.completed_chunks.size();
      return outcome;
    }
    const auto points = grid_points_range(plan[i].first, plan[i].second);
    std::vector<MeshRow> chunk_rows = build_rows(points, w, depth, fast_evaluator(), c.workers);
    json part = json::array();
    for (const auto& r : chunk_rows) part.push_back(mesh_row_to_json(r));
    cp.completed_chunks.push_back(plan[i]);
    cp.partial.push_back(std::move(part));
    rows.insert(rows.end(), std::make_move_iterator(chunk_rows.begin()), std::make_move_iterator(chunk_rows.end()));
    if (!c.checkpoint.empty()) save_checkpoint(c.checkpoint, cp);
    ++fresh;
  }
  outcome.chunks_done = cp.completed_chunks.size();

  WindowMesh mesh{w, depth, std::move(rows)};
  const SegmentReport seg = assemble_segment_report(w, mesh.rows, c.confirm, fast_evaluator(), c.workers);
  const SumReport sums = compute_sum_report(mesh, M);

  outcome.complete = true;
  outcome.report = build_report(c, seg, sums);
  outcome.segments_csv = segments_to_csv(seg);
  outcome.sums_csv = sums_to_csv(sums);

  if (!c.out.empty()) {
    write_file(c.out, outcome.report.dump(2) + "\n");
    if (c.csv) {
      write_file(sibling_path(c.out, "_segments.csv"), outcome.segments_csv);
      write_file(sibling_path(c.out, "_sums.csv"), outcome.sums_csv);
    }
  }
  return outcome;
}

}  // namespace zerolab
