#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "hrod/experiments/config.hpp"

namespace hrod::experiments {

inline constexpr const char* kGraphHeader = "xi,y,U,q,w,h,I";
inline constexpr const char* kDiagnosticsHeader =
    "t,total_energy,min_q,min_h,max_inv_drift,fp_iters_max";
inline constexpr const char* kEnergyDensityHeader = "t,max_h_over_q";

/// Shortest text that reads back to the same double (%.17g).
std::string format_double(double x);

void write_graph_csv(std::ostream& out, const LagrangianState& state);
void write_diagnostics_csv(std::ostream& out, std::span<const DiagnosticsRow> rows);
void write_energy_density_csv(std::ostream& out, std::span<const DiagnosticsRow> rows);

/// Writes `text` to `path`, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

/// Version string fixed at configure time (git describe when available).
std::string version();

nlohmann::json make_manifest(const ExperimentConfig& config, double wall_time_s,
                             const nlohmann::json& extra = nlohmann::json::object());

/// Parsed graph file: one row per cell in the column order of kGraphHeader.
struct GraphTable {
  std::vector<std::array<double, 7>> rows;
};
GraphTable read_graph_csv(std::istream& in);

}  // namespace hrod::experiments
