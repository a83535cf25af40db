#include "hrod/experiments/artifacts.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hrod::experiments {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_graph_csv(std::ostream& out, const LagrangianState& state) {
  const auto inv = invariants(state);
  out << kGraphHeader << '\n';
  for (std::size_t k = 0; k < state.U.size(); ++k) {
    out << format_double(state.grid.xi(k)) << ',' << format_double(state.y(k)) << ','
        << format_double(state.U[k]) << ',' << format_double(state.q(k)) << ','
        << format_double(state.w[k]) << ',' << format_double(state.h[k]) << ','
        << format_double(inv[k]) << '\n';
  }
}

void write_diagnostics_csv(std::ostream& out, std::span<const DiagnosticsRow> rows) {
  out << kDiagnosticsHeader << '\n';
  for (const auto& r : rows) {
    out << format_double(r.t) << ',' << format_double(r.total_energy) << ','
        << format_double(r.min_q) << ',' << format_double(r.min_h) << ','
        << format_double(r.max_inv_drift) << ',' << r.fp_iters_max << '\n';
  }
}

void write_energy_density_csv(std::ostream& out, std::span<const DiagnosticsRow> rows) {
  out << kEnergyDensityHeader << '\n';
  for (const auto& r : rows)
    out << format_double(r.t) << ',' << format_double(r.max_energy_density) << '\n';
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string version() { return HROD_VERSION_STRING; }

nlohmann::json make_manifest(const ExperimentConfig& config, double wall_time_s,
                             const nlohmann::json& extra) {
  nlohmann::json m = {
      {"config", to_json(config)},
      {"version", version()},
      {"wall_time_s", wall_time_s},
      {"schema",
       {{"graph", kGraphHeader},
        {"diagnostics", kDiagnosticsHeader},
        {"energy_density", kEnergyDensityHeader}}},
  };
  for (const auto& item : extra.items()) m[item.key()] = item.value();
  return m;
}

GraphTable read_graph_csv(std::istream& in) {
  GraphTable t;
  std::string line;
  if (!std::getline(in, line) || line != kGraphHeader)
    throw Error("graph file does not start with '" + std::string(kGraphHeader) + "'");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::array<double, 7> row{};
    std::istringstream ss(line);
    std::string cell;
    for (auto& v : row) {
      if (!std::getline(ss, cell, ',')) throw Error("short row in graph file: " + line);
      v = std::stod(cell);
    }
    t.rows.push_back(row);
  }
  return t;
}

}  // namespace hrod::experiments
