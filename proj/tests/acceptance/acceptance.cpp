// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria. `--update-golden` rewrites the pinned
// experiment summaries instead of comparing against them.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "hrod/experiments/artifacts.hpp"
#include "hrod/experiments/commands.hpp"
#include "hrod/experiments/config.hpp"
#include "hrod/hrod.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace hrod;
using namespace hrod::experiments;

namespace {

bool g_update_golden = false;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ExperimentConfig bundled(const std::string& name) { return load_config(resolve_config_path(name)); }

ExperimentConfig with_scheme(ExperimentConfig c, Scheme s) {
  c.stepper.scheme = s;
  return c;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("hrod-acceptance-" + name);
  fs::remove_all(dir);
  return dir;
}

Verdict oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> ug(-2.0, 3.0);
  const std::size_t sizes[] = {8, 32, 256};
  double worst = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    const auto s = testing::random_admissible_state(rng, sizes[rep % 3], 0.1, ug(rng));
    const auto fast = source_terms_fast(s);
    const auto direct = source_terms_direct(s);
    for (std::size_t k = 0; k < fast.P.size(); ++k) {
      const double sp = std::max(std::abs(direct.P[k]), 1e-300);
      const double sq = std::max(std::abs(direct.Q[k]), 1e-300);
      worst = std::max({worst, std::abs(fast.P[k] - direct.P[k]) / sp,
                        direct.Q[k] == 0.0 ? std::abs(fast.Q[k])
                                           : std::abs(fast.Q[k] - direct.Q[k]) / sq});
    }
  }
  const double wall = seconds_since(t0);
  return {worst <= 1e-12 && wall < 5.0,
          fmt("max relative entry difference %.3g over 200 states, %.2f s", worst, wall)};
}

Verdict invariant_preservation() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto base = bundled("peakon");
  const double lt = simulate(with_scheme(base, Scheme::LieTrotter)).max_inv_drift;
  const double st = simulate(with_scheme(base, Scheme::Strang)).max_inv_drift;
  const double eu = simulate(with_scheme(base, Scheme::ExplicitEuler)).max_inv_drift;
  const double wall = seconds_since(t0);
  return {lt <= 2.5e-9 && st <= 2.5e-9 && eu > 1e-6 && wall < 30.0,
          fmt("drift lie-trotter %.3g, strang %.3g (bound 2.5e-9), euler %.3g; %.1f s", lt, st,
              eu, wall)};
}

Verdict positivity() {
  const auto base = bundled("peakon_antipeakon_gamma5");
  const auto lt = simulate(with_scheme(base, Scheme::LieTrotter));
  const auto st = simulate(with_scheme(base, Scheme::Strang));
  const auto rk = simulate(with_scheme(base, Scheme::AdaptiveRK));
  const bool split_ok =
      std::min({lt.min_q, lt.min_h, st.min_q, st.min_h}) >= -1e-10;
  return {split_ok && rk.min_q < 0.0,
          fmt("min q/h lie-trotter %.3g/%.3g, strang %.3g/%.3g; adaptive-rk min q %.3g",
              lt.min_q, lt.min_h, st.min_q, st.min_h, rk.min_q)};
}

double slope_of(const std::vector<ConvergenceReport>& reports, Scheme s) {
  for (const auto& r : reports)
    if (r.scheme == s) return r.slope;
  return std::nan("");
}

Verdict time_order() {
  const auto t0 = std::chrono::steady_clock::now();
  auto cfg = bundled("peakon_time_sweep");
  cfg.schemes = {Scheme::Strang, Scheme::LieTrotter};
  const auto dir = scratch("time");
  const auto reports = cmd_converge(cfg, dir);
  fs::remove_all(dir);
  const double wall = seconds_since(t0);
  const double st = slope_of(reports, Scheme::Strang);
  const double lt = slope_of(reports, Scheme::LieTrotter);
  return {st >= 1.8 && st <= 2.2 && lt >= 0.8 && lt <= 1.2 && wall < 60.0,
          fmt("slope strang %.3f, lie-trotter %.3f; %.1f s", st, lt, wall)};
}

Verdict space_convergence() {
  const auto t0 = std::chrono::steady_clock::now();
  auto cfg = bundled("peakon_space_sweep");
  cfg.schemes = {Scheme::Strang};
  const auto dir = scratch("space");
  const auto reports = cmd_converge(cfg, dir);
  fs::remove_all(dir);
  const double wall = seconds_since(t0);
  const auto& pts = reports.at(0).points;
  bool monotone = true;
  std::string errs;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    errs += fmt("%s%.4g", i ? " " : "", pts[i].error);
    if (i > 0 && !(pts[i].error < pts[i - 1].error)) monotone = false;
  }
  const double slope = reports.at(0).slope;
  return {monotone && slope >= 0.45 && wall < 120.0,
          fmt("errors [%s], monotone %s, slope %.3f; %.1f s", errs.c_str(),
              monotone ? "yes" : "no", slope, wall)};
}

Verdict initial_data_identities() {
  double projected_qh = 0.0, projected_I = -1e300, relabeled_h = 0.0, relabeled_q = 0.0;
  auto projected = [&](const LagrangianState& s) {
    const auto I = invariants(s);
    for (std::size_t k = 0; k < s.U.size(); ++k) {
      projected_qh = std::max(projected_qh, std::abs(s.q(k) + s.h[k] - 1.0));
      projected_I = std::max(projected_I, I[k]);
    }
  };
  auto relabeled = [&](const LagrangianState& s) {
    for (std::size_t k = 0; k < s.U.size(); ++k) {
      relabeled_q = std::max(relabeled_q, std::abs(s.q(k) - 1.0));
      relabeled_h = std::max(relabeled_h, std::abs(s.h[k] - (s.U[k] * s.U[k] + s.w[k] * s.w[k])));
    }
  };
  const auto grid = GridSpec::from_radius(25.0, 0.1);
  projected(make_gaussian_derivative(grid, {0.8}));
  projected(project_profile(peakon_profile(1.0, 0.0), grid, {1.0}));
  projected(project_profile(peakon_antipeakon_profile(), grid, {5.0}));
  relabeled(make_peakon(1.0, 0.0, grid));
  relabeled(make_peakon_antipeakon(grid, {1.0}));
  TravelingWaveSpec smooth;
  smooth.kind = WaveKind::Smooth;
  smooth.gamma = 0.2;
  relabeled(make_smooth_tw(smooth, GridSpec::from_radius(25.0, 0.25)));
  return {projected_qh <= 1e-14 && projected_I <= 1e-12 && relabeled_q == 0.0 &&
              relabeled_h <= 1e-14,
          fmt("projected |q+h-1| %.2g, max I %.2g; relabeled |q-1| %.2g, |h-U^2-w^2| %.2g",
              projected_qh, projected_I, relabeled_q, relabeled_h)};
}

// Rises then falls: interior peak at least twice the start and end values.
bool rises_then_falls(const std::vector<DiagnosticsRow>& rows, double* peak, double* t_peak) {
  std::size_t best = 0;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].max_energy_density > rows[best].max_energy_density) best = i;
  *peak = rows[best].max_energy_density;
  *t_peak = rows[best].t;
  return best > 0 && best + 1 < rows.size() &&
         *peak >= 2.0 * rows.front().max_energy_density &&
         *peak >= 2.0 * rows.back().max_energy_density;
}

nlohmann::json summary_of(const RunOutcome& r) {
  const auto crest = find_crest(r.final_state);
  double peak_density = 0.0;
  for (const auto& row : r.rows) peak_density = std::max(peak_density, row.max_energy_density);
  return {{"T", r.rows.back().t},
          {"total_energy", r.rows.back().total_energy},
          {"crest_U", crest.U},
          {"crest_y", crest.y},
          {"peak_energy_density", peak_density},
          {"min_q", r.min_q}};
}

// Relative 1e-6 with an absolute floor for quantities that sit near zero.
bool matches_golden(const nlohmann::json& got, const nlohmann::json& want, std::string* why) {
  for (const auto& [key, value] : want.items()) {
    const double a = got.at(key).get<double>(), b = value.get<double>();
    if (std::abs(a - b) > 1e-6 * std::max(std::abs(b), 1e-3)) {
      *why += fmt(" %s %.9g vs golden %.9g;", key.c_str(), a, b);
      return false;
    }
  }
  return true;
}

Verdict experiment_reproduction() {
  const std::vector<std::string> names{"smooth_gamma02", "peakon", "cuspon_gamma5",
                                       "peakon_antipeakon", "collision_smooth"};
  bool ok = true;
  std::string detail;
  for (const auto& name : names) {
    const auto cfg = bundled(name);
    RunOutcome r;
    try {
      r = simulate(cfg);
    } catch (const std::exception& e) {
      ok = false;
      detail += " " + name + " failed: " + e.what() + ";";
      continue;
    }
    const auto crest = find_crest(r.final_state);
    if (name == "smooth_gamma02") {
      const double c = cfg.initial.wave->c;
      const double target = cfg.initial.wave->x0 + c * cfg.T;
      const bool good = std::abs(crest.U - 1.0) <= 0.02 &&
                        std::abs(crest.y - target) <= cfg.dxi + c * cfg.stepper.dt;
      ok = ok && good;
      detail += fmt(" smooth crest %.4f at %.3f (target %.3f);", crest.U, crest.y, target);
    } else if (name == "cuspon_gamma5") {
      const double top = cfg.initial.wave->c / cfg.initial.wave->gamma;
      const bool good = std::abs(crest.U - top) <= 0.05 * top;
      ok = ok && good;
      detail += fmt(" cuspon crest %.4f;", crest.U);
    } else if (name == "peakon_antipeakon" || name == "collision_smooth") {
      double peak = 0.0, t_peak = 0.0;
      const bool good = rises_then_falls(r.rows, &peak, &t_peak);
      ok = ok && good;
      detail += fmt(" %s max h/q %.3g -> %.3g at t=%.2f -> %.3g;", name.c_str(),
                    r.rows.front().max_energy_density, peak, t_peak,
                    r.rows.back().max_energy_density);
    }

    const auto golden = fs::path(HROD_GOLDEN_DIR) / (name + ".json");
    const auto got = summary_of(r);
    if (g_update_golden) {
      write_text_file(golden, got.dump(2) + "\n");
    } else if (!fs::exists(golden)) {
      ok = false;
      detail += " missing golden " + golden.filename().string() + ";";
    } else if (!matches_golden(got, nlohmann::json::parse(read_text_file(golden)), &detail)) {
      ok = false;
      detail += " " + name + " differs from golden;";
    }
  }
  if (!detail.empty()) detail.erase(0, 1);
  return {ok, detail};
}

Verdict profile_oracles() {
  TravelingWaveSpec smooth;
  smooth.kind = WaveKind::Smooth;
  smooth.gamma = 0.2;
  const auto p = compute_smooth_profile(smooth, 0.25 / 32.0, 25.0);
  double residual = 0.0;
  for (std::size_t k = 0; k < p.u.size(); ++k)
    residual = std::max(residual, std::abs(p.ux[k] * p.ux[k] - tw_F(smooth, p.u[k])));

  TravelingWaveSpec cuspon;
  cuspon.kind = WaveKind::Cuspon;
  cuspon.gamma = 5.0;
  const double c = cuspon.c, M = cuspon.M, g = cuspon.gamma;
  const double closed = 2.0 * c / (g * g) * std::sqrt(M * g - c);
  const double h0 = cuspon_sample(cuspon, 0.0).h;
  return {residual <= 1e-8 && std::abs(h0 - closed) <= 1e-10,
          fmt("smooth |u'^2 - F(u)| %.3g; cuspon h(0) %.12f vs %.12f", residual, h0, closed)};
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--update-golden") g_update_golden = true;
  set_log_sink({});

  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"source-term oracle equivalence", oracle_equivalence},
      {"invariant preservation", invariant_preservation},
      {"positivity", positivity},
      {"time order", time_order},
      {"space convergence", space_convergence},
      {"initial-data identities", initial_data_identities},
      {"experiment reproduction", experiment_reproduction},
      {"profile oracles", profile_oracles},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += v.pass ? 0 : 1;
    std::printf("%s criterion %zu (%s): %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                v.detail.c_str());
    std::fflush(stdout);
  }
  return failed;
}
