#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hrod/experiments/config.hpp"

namespace hrod::experiments {

using Progress = std::function<void(const std::string&)>;

/// Output root: $HROD_OUT_ROOT when set, else ./hrod-out.
std::filesystem::path default_output_root();

struct Crest {
  double U = 0.0;
  double y = 0.0;
};
/// Cell with the largest U (first one on ties).
Crest find_crest(const LagrangianState& state);

struct RunOutcome {
  std::filesystem::path dir;
  LagrangianState final_state;
  std::vector<DiagnosticsRow> rows;
  double min_q = 0.0;  // over every step, not only output times
  double min_h = 0.0;
  double max_inv_drift = 0.0;
  bool monotonicity_fallback = false;
  std::vector<std::filesystem::path> snapshots;
};

/// Integrates config from its initial data without touching the disk.
RunOutcome simulate(const ExperimentConfig& config);

/// simulate() plus artifacts in `dir`: manifest.json, diagnostics.csv,
/// energy_density.csv, graph_NNNNN.csv snapshots and snapshots.csv
/// (index,t,file).
RunOutcome cmd_run(const ExperimentConfig& config, const std::filesystem::path& dir,
                   const Progress& progress = {});

struct CompareRow {
  Scheme scheme = Scheme::Strang;
  bool ok = false;
  std::string error;
  double reference_error = 0.0;  // sup_graph_error against the reference run
  std::optional<double> exact_error;  // peakon data only
  double max_inv_drift = 0.0;
  double min_q = 0.0;
  double min_h = 0.0;
  Crest crest;
};

/// Runs every scheme (config.schemes, or all four when empty) from the same
/// initial data into dir/<scheme>/, a reference into dir/reference/, and
/// writes dir/summary.csv.
std::vector<CompareRow> cmd_compare(const ExperimentConfig& config,
                                    const std::filesystem::path& dir,
                                    const Progress& progress = {});

struct ConvergenceReport {
  Scheme scheme = Scheme::Strang;
  std::string mode;  // "time" or "space"
  std::vector<ConvergencePoint> points;
  double slope = 0.0;
};

/// Sweeps dt (fixed grid) or dxi per config.sweep for every scheme in
/// config.schemes (config.stepper.scheme when empty). Errors are measured
/// in distance_f against a fine-dt run in a time sweep, by
/// exact_peakon_error for an exact-peakon reference, and otherwise by
/// sup_graph_error_nearest against the finest member of a space sweep.
/// Writes dir/converge.csv and dir/order.json.
std::vector<ConvergenceReport> cmd_converge(const ExperimentConfig& config,
                                            const std::filesystem::path& dir,
                                            const Progress& progress = {});

/// Gnuplot scripts for the run or compare artifacts found in `dir`:
/// overlay.gp, energy_density.gp and, with more than two snapshots,
/// waterfall.gp. Throws Error when no artifacts are found.
std::vector<std::filesystem::path> cmd_emit_plots(const std::filesystem::path& dir);

/// Runs independent tasks on a pool of at most `workers` threads
/// (hardware concurrency when 0). Rethrows the first failure after all
/// tasks finish.
void run_parallel(std::vector<std::function<void()>> tasks, unsigned workers = 0);

}  // namespace hrod::experiments
