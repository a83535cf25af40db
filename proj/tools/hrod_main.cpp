// hrod: runs the bundled hyperelastic-rod experiments from config files.

#include <cstdio>
#include <iostream>
#include <string>
#include <typeinfo>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hrod/experiments/artifacts.hpp"
#include "hrod/experiments/commands.hpp"
#include "hrod/experiments/config.hpp"

namespace fs = std::filesystem;
namespace ex = hrod::experiments;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kConfig = 2, kSolver = 3, kPartial = 4 };

struct Options {
  std::string config;
  std::string out;
  std::vector<std::string> schemes;
  bool quiet = false;
};

std::string error_type(const std::exception& e) {
  if (dynamic_cast<const ex::ConfigError*>(&e)) return "ConfigError";
  if (dynamic_cast<const hrod::InvalidArgument*>(&e)) return "InvalidArgument";
  if (dynamic_cast<const hrod::NonMonotoneY*>(&e)) return "NonMonotoneY";
  if (dynamic_cast<const hrod::FixedPointDiverged*>(&e)) return "FixedPointDiverged";
  if (dynamic_cast<const hrod::StepSizeUnderflow*>(&e)) return "StepSizeUnderflow";
  if (dynamic_cast<const hrod::RootBracketFailure*>(&e)) return "RootBracketFailure";
  if (dynamic_cast<const hrod::ProfileBlowup*>(&e)) return "ProfileBlowup";
  if (dynamic_cast<const hrod::NonMonotoneConstruction*>(&e)) return "NonMonotoneConstruction";
  if (dynamic_cast<const hrod::GridMismatch*>(&e)) return "GridMismatch";
  if (dynamic_cast<const hrod::DegenerateFit*>(&e)) return "DegenerateFit";
  if (dynamic_cast<const hrod::Error*>(&e)) return "Error";
  return "std::exception";
}

int report_error(const std::string& command, const std::exception& e, int code) {
  const nlohmann::json report = {
      {"error", {{"command", command}, {"type", error_type(e)}, {"message", e.what()}}}};
  std::cerr << report.dump() << std::endl;
  return code;
}

ex::ExperimentConfig load(const Options& o) {
  if (o.config.empty()) throw ex::ConfigError("--config is required");
  auto config = ex::load_config(ex::resolve_config_path(o.config));
  if (!o.schemes.empty()) {
    config.schemes.clear();
    for (const auto& s : o.schemes) {
      try {
        config.schemes.push_back(hrod::parse_scheme(s));
      } catch (const hrod::InvalidArgument& e) {
        throw ex::ConfigError(e.what());
      }
    }
    config.stepper.scheme = config.schemes.front();
  }
  return config;
}

fs::path out_dir(const Options& o, const ex::ExperimentConfig& config) {
  return o.out.empty() ? ex::default_output_root() / config.name : fs::path(o.out);
}

ex::Progress progress(const Options& o) {
  if (o.quiet) return {};
  return [](const std::string& msg) { std::cout << msg << std::endl; };
}

void add_common(CLI::App* cmd, Options& o, bool schemes) {
  cmd->add_option("--config", o.config, "config file, run manifest, or bundled experiment name");
  cmd->add_option("--out", o.out, "output directory (default $HROD_OUT_ROOT/<name>)");
  if (schemes)
    cmd->add_option("--scheme", o.schemes, "strang, lie-trotter, euler, adaptive-rk")
        ->delimiter(',');
  cmd->add_flag("--quiet", o.quiet, "no progress output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conservative Lagrangian solver for the hyperelastic rod wave equation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ex::version());

  Options o;
  auto* run = app.add_subcommand("run", "integrate one experiment and write its artifacts");
  add_common(run, o, true);
  auto* compare = app.add_subcommand("compare", "run several schemes from the same data");
  add_common(compare, o, true);
  auto* converge = app.add_subcommand("converge", "fit convergence orders over a sweep");
  add_common(converge, o, true);
  auto* plots = app.add_subcommand("emit-plots", "write gnuplot scripts for an artifacts dir");
  std::string plot_dir;
  plots->add_option("dir", plot_dir, "artifacts directory");
  plots->add_option("--out", o.out, "artifacts directory");
  plots->add_flag("--quiet", o.quiet, "no progress output");
  auto* list = app.add_subcommand("list-experiments", "show the bundled configs");
  list->add_flag("--quiet", o.quiet, "names only");

  CLI11_PARSE(app, argc, argv);

  if (o.quiet) {
    hrod::set_log_sink([](hrod::LogLevel level, std::string_view msg) {
      if (level == hrod::LogLevel::Warning) std::cerr << "warning: " << msg << '\n';
    });
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (*list) {
      hrod::set_log_sink({});  // parameter warnings belong to runs, not to the listing
      for (const auto& name : ex::bundled_config_names()) {
        if (o.quiet) {
          std::cout << name << '\n';
          continue;
        }
        const auto c = ex::load_config(ex::resolve_config_path(name));
        std::cout << name << "  " << c.description << '\n';
      }
      return kOk;
    }
    if (*plots) {
      const fs::path dir = !plot_dir.empty() ? fs::path(plot_dir) : fs::path(o.out);
      if (dir.empty()) throw ex::ConfigError("emit-plots needs an artifacts directory");
      for (const auto& p : ex::cmd_emit_plots(dir))
        if (!o.quiet) std::cout << p.string() << '\n';
      return kOk;
    }

    const auto config = load(o);
    const auto dir = out_dir(o, config);
    if (*run) {
      if (o.schemes.size() > 1) throw ex::ConfigError("run takes one scheme; use compare");
      ex::cmd_run(config, dir, progress(o));
      return kOk;
    }
    if (*compare) {
      const auto rows = ex::cmd_compare(config, dir, progress(o));
      if (!o.quiet) std::cout << ex::read_text_file(dir / "summary.csv");
      for (const auto& r : rows)
        if (!r.ok) return kPartial;
      return kOk;
    }
    if (*converge) {
      ex::cmd_converge(config, dir, progress(o));
      return kOk;
    }
  } catch (const ex::ConfigError& e) {
    return report_error(command, e, kConfig);
  } catch (const hrod::Error& e) {
    return report_error(command, e, kSolver);
  } catch (const std::exception& e) {
    return report_error(command, e, kFailure);
  }
  return kFailure;
}
