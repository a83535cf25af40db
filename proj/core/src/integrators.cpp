#include "hrod/integrators.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>

#include "hrod/errors.hpp"
#include "hrod/norms.hpp"
#include "hrod/source_terms.hpp"

namespace hrod {

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::LieTrotter: return "lie-trotter";
    case Scheme::Strang: return "strang";
    case Scheme::ExplicitEuler: return "euler";
    case Scheme::AdaptiveRK: return "adaptive-rk";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  std::string n(name);
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) {
    return c == '_' ? '-' : static_cast<char>(std::tolower(c));
  });
  if (n == "lie-trotter" || n == "lietrotter" || n == "lie") return Scheme::LieTrotter;
  if (n == "strang") return Scheme::Strang;
  if (n == "euler" || n == "explicit-euler" || n == "expliciteuler") return Scheme::ExplicitEuler;
  if (n == "adaptive-rk" || n == "adaptiverk" || n == "rk45" || n == "ode45")
    return Scheme::AdaptiveRK;
  throw InvalidArgument("unknown scheme '" + std::string(name) + "'");
}

void StepperConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be positive");
  if (!(fp_tol > 0.0)) throw InvalidArgument("fp_tol must be positive");
  if (fp_max_iter < 1) throw InvalidArgument("fp_max_iter must be at least 1");
  if (!(rk_rel_tol > 0.0) || !(rk_abs_tol > 0.0))
    throw InvalidArgument("adaptive tolerances must be positive");
}

int StepReport::max_iterations() const {
  return fp_iterations.empty() ? 0 : *std::max_element(fp_iterations.begin(), fp_iterations.end());
}

void StepReport::merge(const StepReport& other) {
  fp_iterations.insert(fp_iterations.end(), other.fp_iterations.begin(),
                       other.fp_iterations.end());
  residual = std::max(residual, other.residual);
  monotonicity_fallback = monotonicity_fallback || other.monotonicity_fallback;
  accepted += other.accepted;
  rejected += other.rejected;
  min_q = std::min(min_q, other.min_q);
  min_h = std::min(min_h, other.min_h);
}

namespace {

void record_extremes(StepReport& report, const LagrangianState& s) {
  for (std::size_t k = 0; k < s.U.size(); ++k) {
    report.min_q = std::min(report.min_q, s.q(k));
    report.min_h = std::min(report.min_h, s.h[k]);
  }
}

void set_midpoint(LagrangianState& mid, const LagrangianState& a, const LagrangianState& b) {
  for (auto member : FieldSet::kMembers) {
    auto& m = mid.*member;
    const auto& x = a.*member;
    const auto& y = b.*member;
    for (std::size_t k = 0; k < m.size(); ++k) m[k] = 0.5 * (x[k] + y[k]);
  }
}

}  // namespace

StepResult midpoint_substep(const LagrangianState& state, double dt, SubSystem which,
                            const StepperConfig& cfg) {
  check_shape(state);
  StepReport report;
  LagrangianState current = state;
  LagrangianState mid = state;
  double residual = std::numeric_limits<double>::infinity();
  for (int iter = 1; iter <= cfg.fp_max_iter; ++iter) {
    set_midpoint(mid, current, state);
    bool fallback = false;
    const SourceTerms terms = source_terms(mid, &fallback);
    report.monotonicity_fallback = report.monotonicity_fallback || fallback;

    LagrangianState next = state;
    axpy(next, dt, vector_field(mid, terms, which));
    residual = distance_f(next, current);
    current = std::move(next);
    if (!std::isfinite(residual)) throw FixedPointDiverged(iter, residual);
    if (residual <= cfg.fp_tol) {
      report.fp_iterations.push_back(iter);
      report.residual = residual;
      record_extremes(report, current);
      return {std::move(current), std::move(report)};
    }
  }
  throw FixedPointDiverged(cfg.fp_max_iter, residual);
}

StepResult step_lie_trotter(const LagrangianState& state, const StepperConfig& cfg) {
  StepResult first = midpoint_substep(state, cfg.dt, SubSystem::G1, cfg);
  StepResult second = midpoint_substep(first.state, cfg.dt, SubSystem::G2, cfg);
  first.report.merge(second.report);
  return {std::move(second.state), std::move(first.report)};
}

StepResult step_strang(const LagrangianState& state, const StepperConfig& cfg) {
  const double half = 0.5 * cfg.dt;
  StepResult a = midpoint_substep(state, half, SubSystem::G1, cfg);
  StepResult b = midpoint_substep(a.state, cfg.dt, SubSystem::G2, cfg);
  StepResult c = midpoint_substep(b.state, half, SubSystem::G1, cfg);
  a.report.merge(b.report);
  a.report.merge(c.report);
  return {std::move(c.state), std::move(a.report)};
}

StepResult step_explicit_euler(const LagrangianState& state, const StepperConfig& cfg) {
  check_shape(state);
  StepReport report;
  const SourceTerms terms = source_terms(state, &report.monotonicity_fallback);
  LagrangianState next = state;
  axpy(next, cfg.dt, vector_field_full(state, terms));
  record_extremes(report, next);
  return {std::move(next), std::move(report)};
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr std::array<double, 7> kC = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
// Fifth-order weights equal the last row of kA; error weights are b5 - b4.
constexpr std::array<double, 7> kE = {71.0 / 57600,      0.0, -71.0 / 16695, 71.0 / 1920,
                                      -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

Tangent full_field(const LagrangianState& s, StepReport& report) {
  bool fallback = false;
  const SourceTerms terms = source_terms(s, &fallback);
  report.monotonicity_fallback = report.monotonicity_fallback || fallback;
  return vector_field_full(s, terms);
}

double error_norm(const LagrangianState& y0, const LagrangianState& y1, const FieldSet& err,
                  double rtol, double atol) {
  double sum = 0.0;
  std::size_t count = 0;
  for (auto member : FieldSet::kMembers) {
    const auto& a = y0.*member;
    const auto& b = y1.*member;
    const auto& e = err.*member;
    for (std::size_t k = 0; k < e.size(); ++k) {
      const double scale = atol + rtol * std::max(std::abs(a[k]), std::abs(b[k]));
      const double r = e[k] / scale;
      sum += r * r;
    }
    count += e.size();
  }
  return count == 0 ? 0.0 : std::sqrt(sum / static_cast<double>(count));
}

}  // namespace

LagrangianState DenseSegment::at(double t) const {
  // Shampine's interpolation weights for the Dormand-Prince pair, as
  // polynomials in s = (t - t0)/h with coefficients of s, s^2, s^3, s^4.
  static constexpr double kBI[7][4] = {
      {1.0, -183.0 / 64, 37.0 / 12, -145.0 / 128},
      {0.0, 0.0, 0.0, 0.0},
      {0.0, 1500.0 / 371, -1000.0 / 159, 1000.0 / 371},
      {0.0, -125.0 / 32, 125.0 / 12, -375.0 / 64},
      {0.0, 9477.0 / 3392, -729.0 / 106, 25515.0 / 6784},
      {0.0, -11.0 / 7, 11.0 / 3, -55.0 / 28},
      {0.0, 3.0 / 2, -4.0, 5.0 / 2},
  };
  if (!start || !k) throw InvalidArgument("empty dense segment");
  const double s = h == 0.0 ? 0.0 : (t - t0) / h;
  LagrangianState out = *start;
  for (int j = 0; j < 7; ++j) {
    const double b = s * (kBI[j][0] + s * (kBI[j][1] + s * (kBI[j][2] + s * kBI[j][3])));
    if (b != 0.0) axpy(out, h * b, (*k)[j]);
  }
  return out;
}

namespace {

StepResult adaptive_core(const LagrangianState& state, double t_span, const StepperConfig& cfg,
                         const AcceptedStepObserver& on_accept, const DenseObserver& on_dense) {
  check_shape(state);
  StepReport report;
  LagrangianState y = state;
  if (t_span <= 0.0) {
    record_extremes(report, y);
    return {std::move(y), std::move(report)};
  }

  constexpr double kSafety = 0.9;
  constexpr double kBeta = 0.04;
  constexpr double kExpo = 0.2 - 0.75 * kBeta;
  constexpr double kFacMin = 0.2;  // h_new >= 0.2 h
  constexpr double kFacMax = 10.0;  // h_new <= 10 h
  double fac_old = 1e-4;

  double t = 0.0;
  double h = std::min(cfg.dt, t_span);
  std::array<Tangent, 7> k;
  k[0] = full_field(y, report);
  bool last_rejected = false;

  while (t < t_span) {
    if (h < 1e-14 * std::max(1.0, t_span)) throw StepSizeUnderflow(t, h);
    const bool finishing = t + h >= t_span * (1.0 - 1e-14);
    if (finishing) h = t_span - t;

    LagrangianState stage = y;
    for (int s = 1; s < 7; ++s) {
      stage = y;
      for (int j = 0; j < s; ++j) {
        if (kA[s][j] != 0.0) axpy(stage, h * kA[s][j], k[j]);
      }
      k[s] = full_field(stage, report);
    }
    // stage now holds the fifth-order solution (row 6 of kA).
    FieldSet err = FieldSet::zeros(y.U.size());
    for (int j = 0; j < 7; ++j) {
      if (kE[j] != 0.0) axpy(err, h * kE[j], k[j]);
    }
    const double e = error_norm(y, stage, err, cfg.rk_rel_tol, cfg.rk_abs_tol);
    if (!std::isfinite(e)) {
      ++report.rejected;
      h *= kFacMin;
      last_rejected = true;
      continue;
    }

    double fac = std::pow(std::max(e, 1e-300), kExpo) / std::pow(fac_old, kBeta);
    fac = std::clamp(fac / kSafety, 1.0 / kFacMax, 1.0 / kFacMin);
    double h_new = h / fac;

    if (e <= 1.0) {
      fac_old = std::max(e, 1e-4);
      ++report.accepted;
      record_extremes(report, stage);
      if (on_dense) on_dense(DenseSegment{t, h, &y, &k}, stage, report);
      t = finishing ? t_span : t + h;
      y = std::move(stage);
      k[0] = std::move(k[6]);
      if (on_accept) on_accept(t, y);
      if (last_rejected) h_new = std::min(h_new, h);
      last_rejected = false;
      h = h_new;
    } else {
      ++report.rejected;
      h = h / std::min(1.0 / kFacMin, std::pow(e, kExpo) / kSafety);
      last_rejected = true;
    }
  }
  return {std::move(y), std::move(report)};
}

}  // namespace

StepResult step_adaptive_rk(const LagrangianState& state, double t_span, const StepperConfig& cfg,
                            const AcceptedStepObserver& on_accept) {
  return adaptive_core(state, t_span, cfg, on_accept, {});
}

StepResult step_adaptive_rk_dense(const LagrangianState& state, double t_span,
                                  const StepperConfig& cfg, const DenseObserver& on_accept) {
  return adaptive_core(state, t_span, cfg, {}, on_accept);
}

StepResult step(const LagrangianState& state, const StepperConfig& cfg) {
  switch (cfg.scheme) {
    case Scheme::LieTrotter: return step_lie_trotter(state, cfg);
    case Scheme::Strang: return step_strang(state, cfg);
    case Scheme::ExplicitEuler: return step_explicit_euler(state, cfg);
    case Scheme::AdaptiveRK: return step_adaptive_rk(state, cfg.dt, cfg);
  }
  throw InvalidArgument("unknown scheme");
}

EvolveResult evolve(const LagrangianState& initial, double T, const StepperConfig& cfg,
                    std::span<const Observer> observers, std::size_t stride) {
  cfg.validate();
  check_shape(initial);
  if (!(T >= 0.0) || !std::isfinite(T)) throw InvalidArgument("final time must be >= 0");
  if (stride == 0) stride = 1;

  auto n_exact = static_cast<std::size_t>(std::llround(T / cfg.dt));
  std::size_t n_full = n_exact;
  double remainder = 0.0;
  if (std::abs(static_cast<double>(n_exact) * cfg.dt - T) > 1e-9 * std::max(1.0, T)) {
    n_full = static_cast<std::size_t>(std::floor(T / cfg.dt));
    remainder = T - static_cast<double>(n_full) * cfg.dt;
  }
  const std::size_t n_steps = n_full + (remainder > 0.0 ? 1 : 0);

  EvolveResult result{initial, 0, {}, {}};
  auto notify = [&](double t, const StepReport& report) {
    result.output_times.push_back(t);
    for (const auto& obs : observers) {
      if (obs) obs(t, result.final_state, report);
    }
  };

  StepReport initial_report;
  record_extremes(initial_report, initial);
  result.totals = initial_report;
  notify(0.0, initial_report);

  if (cfg.scheme == Scheme::AdaptiveRK && n_steps > 0) {
    auto output_time = [&](std::size_t j) {
      return j > n_full || (j == n_full && remainder == 0.0) ? T : static_cast<double>(j) * cfg.dt;
    };
    std::size_t next = 1;
    StepReport interval;
    int seen_accepted = 0;
    int seen_rejected = 0;
    auto on_dense = [&](const DenseSegment& seg, const LagrangianState& end,
                        const StepReport& running) {
      record_extremes(interval, end);
      const double t_end = seg.t0 + seg.h;
      const double slack = 1e-12 * std::max(1.0, T);
      while (next <= n_steps && output_time(next) <= t_end + slack) {
        const double t = output_time(next);
        result.final_state = std::abs(t - t_end) <= slack ? end : seg.at(t);
        record_extremes(interval, result.final_state);
        interval.accepted = running.accepted - seen_accepted;
        interval.rejected = running.rejected - seen_rejected;
        interval.monotonicity_fallback = running.monotonicity_fallback;
        seen_accepted = running.accepted;
        seen_rejected = running.rejected;
        result.totals.merge(interval);
        result.steps = next;
        if (next % stride == 0 || next == n_steps) notify(t, interval);
        interval = StepReport{};
        ++next;
      }
    };
    StepResult r = step_adaptive_rk_dense(initial, T, cfg, on_dense);
    result.final_state = std::move(r.state);
    return result;
  }

  StepperConfig step_cfg = cfg;
  for (std::size_t j = 1; j <= n_steps; ++j) {
    const bool partial = j > n_full;
    step_cfg.dt = partial ? remainder : cfg.dt;
    StepResult r = step(result.final_state, step_cfg);
    result.final_state = std::move(r.state);
    result.totals.merge(r.report);
    result.steps = j;
    const double t = partial ? T : (j == n_full && remainder == 0.0 ? T : j * cfg.dt);
    if (j % stride == 0 || j == n_steps) notify(t, r.report);
  }
  return result;
}

}  // namespace hrod
