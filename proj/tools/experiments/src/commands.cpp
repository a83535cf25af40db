#include "hrod/experiments/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "hrod/experiments/artifacts.hpp"

namespace hrod::experiments {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::size_t kFinalOnly = std::numeric_limits<std::size_t>::max();

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void say(const Progress& progress, const std::string& msg) {
  if (progress) progress(msg);
}

std::string short_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::string snapshot_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "graph_%05zu.csv", index);
  return buf;
}

using SnapshotSink = std::function<void(std::size_t index, double t, const LagrangianState&)>;

RunOutcome simulate_impl(const ExperimentConfig& config, const SnapshotSink& sink) {
  config.validate();
  const LagrangianState initial = make_initial_state(config);
  DiagnosticsRecorder recorder;
  std::vector<Observer> observers{recorder.observer()};

  std::size_t calls = 0;
  double last_snapshot_t = -1.0;
  if (sink) {
    observers.push_back([&](double t, const LagrangianState& s, const StepReport&) {
      const std::size_t n = calls++;
      const bool take = n == 0 || (config.snapshot_stride > 0 && n % config.snapshot_stride == 0);
      if (take) {
        sink(n, t, s);
        last_snapshot_t = t;
      }
    });
  }
  EvolveResult result = evolve(initial, config.T, config.stepper, observers, config.stride);
  if (sink && last_snapshot_t != result.output_times.back())
    sink(calls - 1, result.output_times.back(), result.final_state);

  RunOutcome out;
  out.final_state = std::move(result.final_state);
  out.rows = recorder.rows();
  out.min_q = std::min(recorder.min_q(), result.totals.min_q);
  out.min_h = std::min(recorder.min_h(), result.totals.min_h);
  out.max_inv_drift = recorder.max_inv_drift();
  out.monotonicity_fallback = result.totals.monotonicity_fallback;
  return out;
}

ExperimentConfig quiet_copy(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  c.stride = kFinalOnly;
  c.snapshot_stride = 0;
  return c;
}

LagrangianState reference_state(const ExperimentConfig& config) {
  ExperimentConfig ref = quiet_copy(config);
  ref.stepper.scheme = Scheme::Strang;
  ref.stepper.dt = config.reference.dt;
  return simulate_impl(ref, {}).final_state;
}

std::vector<Scheme> schemes_or(const ExperimentConfig& config, std::vector<Scheme> fallback) {
  return config.schemes.empty() ? fallback : config.schemes;
}

std::string csv_value(std::optional<double> v) { return v ? format_double(*v) : ""; }

}  // namespace

fs::path default_output_root() {
  if (const char* env = std::getenv("HROD_OUT_ROOT"); env && *env) return env;
  return "hrod-out";
}

Crest find_crest(const LagrangianState& state) {
  Crest c{-std::numeric_limits<double>::infinity(), 0.0};
  for (std::size_t k = 0; k < state.U.size(); ++k) {
    if (state.U[k] > c.U) c = {state.U[k], state.y(k)};
  }
  return c;
}

void run_parallel(std::vector<std::function<void()>> tasks, unsigned workers) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(tasks.size()));
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

RunOutcome simulate(const ExperimentConfig& config) { return simulate_impl(config, {}); }

RunOutcome cmd_run(const ExperimentConfig& config, const fs::path& dir, const Progress& progress) {
  const auto t0 = std::chrono::steady_clock::now();
  say(progress, "run " + config.name + " [" + std::string(to_string(config.stepper.scheme)) +
                    "] T=" + format_double(config.T) + " -> " + dir.string());
  fs::create_directories(dir);

  std::ostringstream index;
  index << "index,t,file\n";
  std::vector<fs::path> snapshots;
  auto sink = [&](std::size_t n, double t, const LagrangianState& s) {
    const auto name = snapshot_name(n);
    std::ostringstream csv;
    write_graph_csv(csv, s);
    write_text_file(dir / name, csv.str());
    index << n << ',' << format_double(t) << ',' << name << '\n';
    snapshots.push_back(dir / name);
  };
  RunOutcome out = simulate_impl(config, sink);
  out.dir = dir;
  out.snapshots = std::move(snapshots);

  std::ostringstream diag, dens;
  write_diagnostics_csv(diag, out.rows);
  write_energy_density_csv(dens, out.rows);
  write_text_file(dir / "diagnostics.csv", diag.str());
  write_text_file(dir / "energy_density.csv", dens.str());
  write_text_file(dir / "snapshots.csv", index.str());

  const double wall = seconds_since(t0);
  const json extra = {{"scheme", std::string(to_string(config.stepper.scheme))},
                      {"min_q", out.min_q},
                      {"min_h", out.min_h},
                      {"max_inv_drift", out.max_inv_drift},
                      {"monotonicity_fallback", out.monotonicity_fallback}};
  write_text_file(dir / "manifest.json", make_manifest(config, wall, extra).dump(2) + "\n");
  say(progress, "  " + config.name + " [" + std::string(to_string(config.stepper.scheme)) +
                    "] done in " + short_double(wall) + " s, min q " + short_double(out.min_q) +
                    ", invariant drift " + short_double(out.max_inv_drift));
  return out;
}

std::vector<CompareRow> cmd_compare(const ExperimentConfig& config, const fs::path& dir,
                                    const Progress& progress) {
  config.validate();
  const auto schemes = schemes_or(config, {Scheme::ExplicitEuler, Scheme::LieTrotter,
                                           Scheme::Strang, Scheme::AdaptiveRK});
  std::vector<CompareRow> rows(schemes.size());
  std::optional<LagrangianState> reference;
  std::mutex say_mutex;
  auto locked_say = [&](const std::string& msg) {
    std::lock_guard lock(say_mutex);
    say(progress, msg);
  };

  std::vector<std::function<void()>> tasks;
  if (config.reference.kind == ReferenceKind::Fine) {
    tasks.push_back([&] {
      ExperimentConfig ref = config;
      ref.stepper.scheme = Scheme::Strang;
      ref.stepper.dt = config.reference.dt;
      ref.stride = kFinalOnly;
      ref.snapshot_stride = 0;
      reference = cmd_run(ref, dir / "reference", locked_say).final_state;
    });
  }
  std::vector<std::optional<RunOutcome>> outcomes(schemes.size());
  for (std::size_t i = 0; i < schemes.size(); ++i) {
    tasks.push_back([&, i] {
      rows[i].scheme = schemes[i];
      ExperimentConfig c = config;
      c.stepper.scheme = schemes[i];
      try {
        outcomes[i] = cmd_run(c, dir / std::string(to_string(schemes[i])), locked_say);
        rows[i].ok = true;
      } catch (const std::exception& e) {
        rows[i].error = e.what();
        locked_say("  " + std::string(to_string(schemes[i])) + " failed: " + e.what());
      }
    });
  }
  run_parallel(std::move(tasks));

  const auto& wave = config.initial.wave;
  const bool peakon = wave && wave->kind == WaveKind::Peakon;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!outcomes[i]) continue;
    const auto& o = *outcomes[i];
    auto& r = rows[i];
    r.max_inv_drift = o.max_inv_drift;
    r.min_q = o.min_q;
    r.min_h = o.min_h;
    r.crest = find_crest(o.final_state);
    if (peakon) r.exact_error = exact_peakon_error(o.final_state, config.T, wave->c, wave->x0);
    if (reference) {
      r.reference_error = sup_graph_error(o.final_state, *reference);
    } else if (r.exact_error) {
      r.reference_error = *r.exact_error;
    } else {
      r.reference_error = std::numeric_limits<double>::quiet_NaN();
    }
  }

  std::ostringstream csv;
  csv << "scheme,status,reference_error,exact_error,max_inv_drift,min_q,min_h,negative_q,crest_U,"
         "crest_y\n";
  for (const auto& r : rows) {
    csv << to_string(r.scheme) << ',' << (r.ok ? "ok" : "failed");
    if (r.ok) {
      csv << ',' << format_double(r.reference_error) << ',' << csv_value(r.exact_error) << ','
          << format_double(r.max_inv_drift) << ',' << format_double(r.min_q) << ','
          << format_double(r.min_h) << ',' << (r.min_q < 0.0 ? 1 : 0) << ','
          << format_double(r.crest.U) << ',' << format_double(r.crest.y);
    } else {
      csv << ",,,,,,,,";
    }
    csv << '\n';
  }
  write_text_file(dir / "summary.csv", csv.str());
  return rows;
}

std::vector<ConvergenceReport> cmd_converge(const ExperimentConfig& config, const fs::path& dir,
                                            const Progress& progress) {
  config.validate();
  const bool space = !config.sweep.dxi.empty();
  if (space == !config.sweep.dt.empty())
    throw ConfigError("converge needs exactly one of sweep.dxi and sweep.dt");
  const auto& values = space ? config.sweep.dxi : config.sweep.dt;
  if (values.size() < 3) throw ConfigError("a sweep needs at least three values");
  const bool exact = config.reference.kind == ReferenceKind::ExactPeakon;
  if (!exact && config.reference.kind != ReferenceKind::Fine)
    throw ConfigError("converge needs a fine or exact-peakon reference");
  const auto schemes = schemes_or(config, {config.stepper.scheme});

  auto member = [&](Scheme scheme, double value) {
    ExperimentConfig c = quiet_copy(config);
    c.stepper.scheme = scheme;
    if (space) {
      c.dxi = value;
      if (config.sweep.dt_over_dxi > 0.0) c.stepper.dt = config.sweep.dt_over_dxi * value;
    } else {
      c.stepper.dt = value;
    }
    return c;
  };

  std::optional<LagrangianState> time_reference;
  std::vector<std::vector<std::optional<LagrangianState>>> finals(
      schemes.size(), std::vector<std::optional<LagrangianState>>(values.size()));
  std::mutex say_mutex;
  std::vector<std::function<void()>> tasks;
  if (!space && !exact) tasks.push_back([&] { time_reference = reference_state(config); });
  for (std::size_t s = 0; s < schemes.size(); ++s) {
    for (std::size_t v = 0; v < values.size(); ++v) {
      tasks.push_back([&, s, v] {
        finals[s][v] = simulate_impl(member(schemes[s], values[v]), {}).final_state;
        std::lock_guard lock(say_mutex);
        say(progress, "  " + std::string(to_string(schemes[s])) + (space ? " dxi=" : " dt=") +
                          format_double(values[v]) + " done");
      });
    }
  }
  run_parallel(std::move(tasks));

  // In a space sweep without an exact solution the finest member is the
  // reference and is left out of the fit.
  std::size_t finest = 0;
  for (std::size_t v = 1; v < values.size(); ++v)
    if (values[v] < values[finest]) finest = v;

  std::vector<ConvergenceReport> reports;
  std::ostringstream csv;
  csv << "scheme,mode,resolution,error\n";
  json order = json::object();
  const auto& wave = config.initial.wave;
  for (std::size_t s = 0; s < schemes.size(); ++s) {
    ConvergenceReport rep{schemes[s], space ? "space" : "time", {}, 0.0};
    for (std::size_t v = 0; v < values.size(); ++v) {
      const auto& st = *finals[s][v];
      double err = 0.0;
      if (exact) {
        err = exact_peakon_error(st, config.T, wave->c, wave->x0);
      } else if (!space) {
        err = distance_f(st, *time_reference);
      } else {
        if (v == finest) continue;
        err = sup_graph_error_nearest(st, *finals[s][finest]);
      }
      rep.points.push_back({values[v], err});
      csv << to_string(schemes[s]) << ',' << rep.mode << ',' << format_double(values[v]) << ','
          << format_double(err) << '\n';
    }
    try {
      rep.slope = convergence_order(rep.points);
    } catch (const DegenerateFit&) {
      rep.slope = std::numeric_limits<double>::quiet_NaN();
    }
    order[std::string(to_string(schemes[s]))] =
        std::isnan(rep.slope) ? json(nullptr) : json(rep.slope);
    say(progress, std::string(to_string(schemes[s])) + " " + rep.mode +
                      " order: " + short_double(rep.slope));
    reports.push_back(std::move(rep));
  }
  write_text_file(dir / "converge.csv", csv.str());
  const json report = {{"config", to_json(config)},
                       {"version", version()},
                       {"mode", space ? "space" : "time"},
                       {"reference", to_string(config.reference.kind)},
                       {"order", order}};
  write_text_file(dir / "order.json", report.dump(2) + "\n");
  return reports;
}

// ---------------------------------------------------------------------------
// Plot scripts

namespace {

struct SnapshotEntry {
  std::size_t index;
  double t;
  std::string file;
};

std::vector<SnapshotEntry> read_snapshots(const fs::path& run_dir) {
  std::istringstream in(read_text_file(run_dir / "snapshots.csv"));
  std::vector<SnapshotEntry> out;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string a, b, c;
    std::getline(ss, a, ',');
    std::getline(ss, b, ',');
    std::getline(ss, c, ',');
    out.push_back({std::stoul(a), std::stod(b), c});
  }
  if (out.empty()) throw Error("no snapshots listed in " + (run_dir / "snapshots.csv").string());
  return out;
}

std::string header(const std::string& output, const std::string& xlabel,
                   const std::string& ylabel) {
  std::ostringstream s;
  s << "set datafile separator ','\n"
    << "set terminal pngcairo size 1000,640\n"
    << "set output '" << output << "'\n"
    << "set xlabel '" << xlabel << "'\n"
    << "set ylabel '" << ylabel << "'\n"
    << "set key outside right\n";
  return s.str();
}

// Energy density h/q, undefined where q is below the floor.
constexpr const char* kDensityExpr = "($4 > 1e-8 ? $6/$4 : 1/0)";

bool is_run_dir(const fs::path& d) {
  return fs::is_regular_file(d / "manifest.json") && fs::is_regular_file(d / "snapshots.csv");
}

}  // namespace

std::vector<fs::path> cmd_emit_plots(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error("no artifacts directory '" + dir.string() + "'");
  std::vector<fs::path> written;

  if (fs::is_regular_file(dir / "converge.csv")) {
    std::istringstream in(read_text_file(dir / "converge.csv"));
    std::vector<std::string> schemes;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      const auto name = line.substr(0, line.find(','));
      if (!name.empty() && std::find(schemes.begin(), schemes.end(), name) == schemes.end())
        schemes.push_back(name);
    }
    std::ostringstream s;
    s << header("converge.png", "resolution", "error") << "set logscale xy\n"
      << "set format y '%.0e'\nplot ";
    for (std::size_t i = 0; i < schemes.size(); ++i) {
      s << (i ? ", \\\n     " : "") << "'converge.csv' using 3:(strcol(1) eq '" << schemes[i]
        << "' ? $4 : 1/0) with linespoints title '" << schemes[i] << "'";
    }
    s << '\n';
    write_text_file(dir / "converge.gp", s.str());
    written.push_back(dir / "converge.gp");
    return written;
  }

  // A run directory, or a compare directory holding one run per scheme.
  std::vector<std::pair<std::string, fs::path>> runs;
  if (is_run_dir(dir)) {
    runs.emplace_back("", dir);
  } else {
    std::vector<fs::path> subdirs;
    for (const auto& e : fs::directory_iterator(dir))
      if (e.is_directory() && is_run_dir(e.path())) subdirs.push_back(e.path());
    std::sort(subdirs.begin(), subdirs.end());
    for (const auto& p : subdirs) runs.emplace_back(p.filename().string(), p);
  }
  if (runs.empty()) throw Error("no run artifacts in '" + dir.string() + "'");

  auto rel = [&](const fs::path& run, const std::string& file) {
    return (run == dir ? fs::path(file) : run.lexically_relative(dir) / file).generic_string();
  };

  std::ostringstream overlay;
  overlay << header("overlay.png", "x", "u") << "plot ";
  std::ostringstream density;
  density << header("energy_density.png", "x", "h/q") << "plot ";
  bool first = true;
  for (const auto& [label, run] : runs) {
    const auto snaps = read_snapshots(run);
    const auto& last = snaps.back();
    const std::string title =
        (label.empty() ? std::string() : label + " ") + "t=" + format_double(last.t);
    const std::string sep = first ? "" : ", \\\n     ";
    if (runs.size() == 1) {
      overlay << "'" << rel(run, snaps.front().file) << "' using 2:3 with lines title 't="
              << format_double(snaps.front().t) << "', \\\n     ";
    }
    overlay << sep << "'" << rel(run, last.file) << "' using 2:3 with linespoints title '"
            << title << "'";
    density << sep << "'" << rel(run, last.file) << "' using 2:" << kDensityExpr
            << " with points title '" << title << "'";
    first = false;
  }
  overlay << '\n';
  density << '\n';
  write_text_file(dir / "overlay.gp", overlay.str());
  write_text_file(dir / "energy_density.gp", density.str());
  written.push_back(dir / "overlay.gp");
  written.push_back(dir / "energy_density.gp");

  // Waterfall of the first run with enough snapshots.
  for (const auto& [label, run] : runs) {
    const auto snaps = read_snapshots(run);
    if (snaps.size() <= 2) continue;
    std::ostringstream s;
    s << header("waterfall.png", "x", "t") << "set zlabel 'u'\n"
      << "set view 60,30\nunset key\nsplot ";
    for (std::size_t i = 0; i < snaps.size(); ++i) {
      s << (i ? ", \\\n      " : "") << "'" << rel(run, snaps[i].file) << "' using 2:("
        << format_double(snaps[i].t) << "):3 with lines lc rgb 'black'";
    }
    s << "\n\nset output 'waterfall_density.png'\nset zlabel 'h/q'\nsplot ";
    for (std::size_t i = 0; i < snaps.size(); ++i) {
      s << (i ? ", \\\n      " : "") << "'" << rel(run, snaps[i].file) << "' using 2:("
        << format_double(snaps[i].t) << "):" << kDensityExpr << " with lines lc rgb 'black'";
    }
    s << '\n';
    write_text_file(dir / "waterfall.gp", s.str());
    written.push_back(dir / "waterfall.gp");
    break;
  }
  return written;
}

}  // namespace hrod::experiments
