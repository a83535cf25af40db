#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hrod/hrod.hpp"

namespace hrod::experiments {

class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Pipeline { Projected, Relabeled };

/// Either a built-in wave or a two-column profile table.
struct InitialDataConfig {
  std::optional<TravelingWaveSpec> wave;
  std::string profile_path;  // resolved against the config file directory
  Pipeline pipeline = Pipeline::Projected;
  int m_ref = 16;
};

enum class ReferenceKind { None, Fine, ExactPeakon };

/// Reference solution for compare and converge. Fine means the same
/// grid integrated with Strang at `dt`.
struct ReferenceConfig {
  ReferenceKind kind = ReferenceKind::Fine;
  double dt = 1e-3;
};

/// A sweep changes dxi (space) or dt (time). In a space sweep
/// dt = dt_over_dxi * dxi when dt_over_dxi > 0, else stepper.dt.
struct SweepConfig {
  std::vector<double> dxi;
  std::vector<double> dt;
  double dt_over_dxi = 0.0;
};

struct ExperimentConfig {
  std::string name;
  std::string description;
  InitialDataConfig initial;
  Parameters params;
  double radius = 25.0;
  double dxi = 0.1;
  StepperConfig stepper;
  double T = 1.0;
  std::size_t stride = 1;           // diagnostics every `stride` steps
  std::size_t snapshot_stride = 0;  // graph file every n diagnostics rows; 0 = first and last only
  std::vector<Scheme> schemes;      // compare list
  ReferenceConfig reference;
  SweepConfig sweep;

  GridSpec grid() const { return GridSpec::from_radius(radius, dxi); }
  /// Throws ConfigError; warns when T is not a multiple of dt.
  void validate() const;
};

nlohmann::json to_json(const ExperimentConfig& config);
/// Accepts a config or a run manifest (its "config" member). Relative
/// profile paths are resolved against `base_dir`.
ExperimentConfig config_from_json(const nlohmann::json& j,
                                  const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// Directory holding the bundled *.json configs.
std::filesystem::path bundled_config_dir();
std::vector<std::string> bundled_config_names();
/// A path to an existing file, or the name of a bundled config.
std::filesystem::path resolve_config_path(const std::string& name_or_path);

LagrangianState make_initial_state(const ExperimentConfig& config);
LagrangianState make_initial_state(const ExperimentConfig& config, const GridSpec& grid);

std::string to_string(Pipeline p);
std::string to_string(ReferenceKind k);

}  // namespace hrod::experiments
