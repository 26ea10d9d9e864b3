#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "zerolab/grid.hpp"
#include "zerolab/mesh.hpp"
#include "zerolab/segments.hpp"
#include "zerolab/sums.hpp"

namespace zerolab {

std::string version();

/// Resolved settings of one `scan` run.
struct ScanConfig {
  double T = 0.0;
  std::optional<double> U;  // explicit window length; otherwise the loglog rule
  double delta = 1.2;
  PsiMode psi_mode = PsiMode::kLogLog;
  std::optional<int> M;  // sums depth; defaults to M1
  bool confirm = false;
  int workers = 1;
  int chunk = 512;
  std::string out;
  std::string checkpoint;
  bool csv = false;
  std::optional<int> max_chunks;  // stop after this many new chunks (staged runs)
};

/// Reads the keys of a JSON config file into `base`. Unknown keys are
/// rejected with ParameterError.
ScanConfig apply_config_json(ScanConfig base, const nlohmann::json& j);

/// Result-affecting part of the config in canonical form. Workers, paths and
/// stop points are excluded.
nlohmann::json canonical_config(const ScanConfig& config);

/// FNV-1a 64 of the canonical config, as 16 hex digits.
std::string config_hash(const ScanConfig& config);

WindowSpec resolve_window(const ScanConfig& config);

nlohmann::json window_to_json(const WindowSpec& w);
nlohmann::json mesh_row_to_json(const MeshRow& row);
MeshRow mesh_row_from_json(const nlohmann::json& j);

/// Checkpoint resuming with a different configuration.
class CheckpointMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Resumable record of completed nu-chunks.
struct ScanCheckpoint {
  WindowSpec window;
  std::vector<std::pair<std::int64_t, std::int64_t>> completed_chunks;  // [begin, end), sorted
  std::vector<nlohmann::json> partial;                                  // rows of each chunk
  std::string config_hash;
};

nlohmann::json checkpoint_to_json(const ScanCheckpoint& cp);
ScanCheckpoint checkpoint_from_json(const nlohmann::json& j);
/// Written to a temporary file and renamed into place.
void save_checkpoint(const std::string& path, const ScanCheckpoint& cp);
std::optional<ScanCheckpoint> load_checkpoint(const std::string& path);

struct ScanOutcome {
  bool complete = false;
  std::size_t chunks_total = 0;
  std::size_t chunks_done = 0;
  nlohmann::json report;  // null unless complete
  std::string segments_csv;
  std::string sums_csv;
};

/// Runs detection and sums over the window in nu-chunks, checkpointing after
/// each chunk when a checkpoint path is set. Files are written only when
/// `config.out` is set. Throws CheckpointMismatch for a foreign checkpoint.
ScanOutcome run_scan(const ScanConfig& config);

nlohmann::json build_report(const ScanConfig& config, const SegmentReport& segments, const SumReport& sums);
std::string segments_to_csv(const SegmentReport& report);
std::string sums_to_csv(const SumReport& report);

/// 17 significant digits.
std::string format_real(double v);

}  // namespace zerolab
