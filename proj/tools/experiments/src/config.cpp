#include "hrod/experiments/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace hrod::experiments {

using nlohmann::json;

namespace {

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

std::optional<double> get_opt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return get_or<double>(j, key, 0.0);
}

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

Pipeline parse_pipeline(const std::string& s) {
  if (s == "projected") return Pipeline::Projected;
  if (s == "relabeled") return Pipeline::Relabeled;
  throw ConfigError("unknown pipeline '" + s + "' (expected projected or relabeled)");
}

ReferenceKind parse_reference(const std::string& s) {
  if (s == "none") return ReferenceKind::None;
  if (s == "fine") return ReferenceKind::Fine;
  if (s == "exact-peakon") return ReferenceKind::ExactPeakon;
  throw ConfigError("unknown reference '" + s + "' (expected none, fine or exact-peakon)");
}

void reject_unknown(const json& j, std::initializer_list<const char*> known, const char* where) {
  for (const auto& item : j.items()) {
    if (std::none_of(known.begin(), known.end(),
                     [&](const char* k) { return item.key() == k; })) {
      throw ConfigError(std::string("unknown key '") + item.key() + "' in " + where);
    }
  }
}

}  // namespace

std::string to_string(Pipeline p) { return p == Pipeline::Projected ? "projected" : "relabeled"; }

std::string to_string(ReferenceKind k) {
  switch (k) {
    case ReferenceKind::None: return "none";
    case ReferenceKind::Fine: return "fine";
    case ReferenceKind::ExactPeakon: return "exact-peakon";
  }
  return "none";
}

void ExperimentConfig::validate() const {
  if (name.empty()) throw ConfigError("config needs a name");
  if (!(radius > 0.0) || !(dxi > 0.0)) throw ConfigError("grid radius and dxi must be positive");
  if (!(T >= 0.0) || !std::isfinite(T)) throw ConfigError("T must be a finite non-negative time");
  if (stride == 0) throw ConfigError("output stride must be at least 1");
  if (initial.m_ref < 1) throw ConfigError("m_ref must be at least 1");
  if (initial.wave) {
    try {
      initial.wave->validate();
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
    if (initial.wave->gamma != params.gamma)
      throw ConfigError("initial_data gamma differs from the model gamma");
  } else {
    if (initial.profile_path.empty()) throw ConfigError("initial_data needs a kind or a path");
    if (!std::filesystem::exists(initial.profile_path))
      throw ConfigError("profile table '" + initial.profile_path + "' does not exist");
  }
  try {
    stepper.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  if (reference.kind == ReferenceKind::Fine && !(reference.dt > 0.0))
    throw ConfigError("reference dt must be positive");
  if (reference.kind == ReferenceKind::ExactPeakon &&
      !(initial.wave && initial.wave->kind == WaveKind::Peakon))
    throw ConfigError("exact-peakon reference needs peakon initial data");
  for (double d : sweep.dxi)
    if (!(d > 0.0)) throw ConfigError("sweep dxi values must be positive");
  for (double d : sweep.dt)
    if (!(d > 0.0)) throw ConfigError("sweep dt values must be positive");
  const double n = T / stepper.dt;
  if (std::abs(n - std::round(n)) > 1e-9 * std::max(1.0, n)) {
    log_warning("T = " + std::to_string(T) + " is not a multiple of dt = " +
                std::to_string(stepper.dt) + "; the last step is shortened");
  }
  hrod::validate(params);
}

json to_json(const ExperimentConfig& c) {
  json init;
  if (c.initial.wave) {
    const auto& w = *c.initial.wave;
    init = {{"kind", hrod::to_string(w.kind)},
            {"c", w.c},
            {"M", w.M},
            {"m", w.m},
            {"x0", w.x0},
            {"blend_a", opt_json(w.blend_a)},
            {"blend_b", opt_json(w.blend_b)},
            {"crest_offset", w.crest_offset},
            {"m_ref", c.initial.m_ref}};
  } else {
    init = {{"kind", "profile"},
            {"path", c.initial.profile_path},
            {"pipeline", to_string(c.initial.pipeline)},
            {"m_ref", c.initial.m_ref}};
  }
  json schemes = json::array();
  for (auto s : c.schemes) schemes.push_back(std::string(hrod::to_string(s)));
  return {
      {"name", c.name},
      {"description", c.description},
      {"gamma", c.params.gamma},
      {"initial_data", init},
      {"grid", {{"radius", c.radius}, {"dxi", c.dxi}}},
      {"stepper",
       {{"dt", c.stepper.dt},
        {"scheme", std::string(hrod::to_string(c.stepper.scheme))},
        {"fp_tol", c.stepper.fp_tol},
        {"fp_max_iter", c.stepper.fp_max_iter},
        {"rk_rel_tol", c.stepper.rk_rel_tol},
        {"rk_abs_tol", c.stepper.rk_abs_tol}}},
      {"T", c.T},
      {"output", {{"stride", c.stride}, {"snapshot_stride", c.snapshot_stride}}},
      {"schemes", schemes},
      {"reference", {{"kind", to_string(c.reference.kind)}, {"dt", c.reference.dt}}},
      {"sweep",
       {{"dxi", c.sweep.dxi}, {"dt", c.sweep.dt}, {"dt_over_dxi", c.sweep.dt_over_dxi}}},
  };
}

ExperimentConfig config_from_json(const json& input, const std::filesystem::path& base_dir) {
  if (!input.is_object()) throw ConfigError("config must be a JSON object");
  const json& j = input.contains("config") && input.at("config").is_object() ? input.at("config")
                                                                              : input;
  reject_unknown(j,
                 {"name", "description", "gamma", "initial_data", "grid", "stepper", "T",
                  "output", "schemes", "reference", "sweep"},
                 "config");
  ExperimentConfig c;
  c.name = get_or<std::string>(j, "name", "");
  c.description = get_or<std::string>(j, "description", "");
  c.params.gamma = get_or<double>(j, "gamma", 1.0);
  c.T = get_or<double>(j, "T", c.T);

  if (!j.contains("initial_data")) throw ConfigError("config needs an initial_data section");
  const json& init = j.at("initial_data");
  reject_unknown(init,
                 {"kind", "c", "M", "m", "x0", "blend_a", "blend_b", "crest_offset", "m_ref",
                  "path", "pipeline"},
                 "initial_data");
  const auto kind = get_or<std::string>(init, "kind", "");
  c.initial.m_ref = get_or<int>(init, "m_ref", 16);
  if (kind == "profile") {
    auto path = std::filesystem::path(get_or<std::string>(init, "path", ""));
    if (path.empty()) throw ConfigError("profile initial data needs a path");
    if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
    c.initial.profile_path = path.lexically_normal().string();
    c.initial.pipeline = parse_pipeline(get_or<std::string>(init, "pipeline", "projected"));
  } else {
    TravelingWaveSpec w;
    try {
      w.kind = parse_wave_kind(kind);
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
    w.gamma = c.params.gamma;
    w.c = get_or<double>(init, "c", w.c);
    w.M = get_or<double>(init, "M", w.M);
    w.m = get_or<double>(init, "m", w.m);
    w.x0 = get_or<double>(init, "x0", w.x0);
    w.blend_a = get_opt(init, "blend_a");
    w.blend_b = get_opt(init, "blend_b");
    w.crest_offset = get_or<double>(init, "crest_offset", w.crest_offset);
    c.initial.wave = w;
  }

  if (j.contains("grid")) {
    const json& g = j.at("grid");
    reject_unknown(g, {"radius", "dxi"}, "grid");
    c.radius = get_or<double>(g, "radius", c.radius);
    c.dxi = get_or<double>(g, "dxi", c.dxi);
  }
  if (j.contains("stepper")) {
    const json& s = j.at("stepper");
    reject_unknown(s, {"dt", "scheme", "fp_tol", "fp_max_iter", "rk_rel_tol", "rk_abs_tol"},
                   "stepper");
    c.stepper.dt = get_or<double>(s, "dt", c.stepper.dt);
    try {
      c.stepper.scheme = parse_scheme(get_or<std::string>(s, "scheme", "strang"));
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
    c.stepper.fp_tol = get_or<double>(s, "fp_tol", c.stepper.fp_tol);
    c.stepper.fp_max_iter = get_or<int>(s, "fp_max_iter", c.stepper.fp_max_iter);
    c.stepper.rk_rel_tol = get_or<double>(s, "rk_rel_tol", c.stepper.rk_rel_tol);
    c.stepper.rk_abs_tol = get_or<double>(s, "rk_abs_tol", c.stepper.rk_abs_tol);
  }
  if (j.contains("output")) {
    const json& o = j.at("output");
    reject_unknown(o, {"stride", "snapshot_stride"}, "output");
    c.stride = get_or<std::size_t>(o, "stride", c.stride);
    c.snapshot_stride = get_or<std::size_t>(o, "snapshot_stride", c.snapshot_stride);
  }
  for (const auto& name : get_or<std::vector<std::string>>(j, "schemes", {})) {
    try {
      c.schemes.push_back(parse_scheme(name));
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
  }
  if (j.contains("reference")) {
    const json& r = j.at("reference");
    reject_unknown(r, {"kind", "dt"}, "reference");
    c.reference.kind = parse_reference(get_or<std::string>(r, "kind", "fine"));
    c.reference.dt = get_or<double>(r, "dt", c.reference.dt);
  }
  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    reject_unknown(s, {"dxi", "dt", "dt_over_dxi"}, "sweep");
    c.sweep.dxi = get_or<std::vector<double>>(s, "dxi", {});
    c.sweep.dt = get_or<std::vector<double>>(s, "dt", {});
    c.sweep.dt_over_dxi = get_or<double>(s, "dt_over_dxi", 0.0);
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError("cannot parse '" + path.string() + "': " + e.what());
  }
  return config_from_json(j, path.parent_path());
}

std::filesystem::path bundled_config_dir() {
  if (const char* env = std::getenv("HROD_CONFIG_DIR"); env && *env) return env;
  return HROD_BUNDLED_CONFIG_DIR;
}

std::vector<std::string> bundled_config_names() {
  std::vector<std::string> names;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(bundled_config_dir(), ec)) {
    if (entry.path().extension() == ".json") names.push_back(entry.path().stem().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

std::filesystem::path resolve_config_path(const std::string& name_or_path) {
  std::filesystem::path p(name_or_path);
  if (std::filesystem::is_regular_file(p)) return p;
  auto bundled = bundled_config_dir() / (name_or_path + ".json");
  if (std::filesystem::is_regular_file(bundled)) return bundled;
  throw ConfigError("no config file or bundled experiment named '" + name_or_path + "'");
}

LagrangianState make_initial_state(const ExperimentConfig& config) {
  return make_initial_state(config, config.grid());
}

LagrangianState make_initial_state(const ExperimentConfig& config, const GridSpec& grid) {
  const FineGrid fine{config.initial.m_ref};
  if (config.initial.wave) return hrod::make_initial_state(*config.initial.wave, grid, fine);
  const auto profile = load_profile_table(config.initial.profile_path);
  if (config.initial.pipeline == Pipeline::Relabeled)
    return relabeled_from_profile(profile, grid, config.params);
  return project_profile(profile, grid, config.params, fine);
}

}  // namespace hrod::experiments
