#pragma once

#include <array>
#include <functional>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "hrod/state.hpp"
#include "hrod/vector_field.hpp"

namespace hrod {

enum class Scheme { LieTrotter, Strang, ExplicitEuler, AdaptiveRK };

std::string_view to_string(Scheme scheme);
/// Accepts "lie-trotter", "strang", "euler", "adaptive-rk" (and the enum
/// spellings). Throws InvalidArgument otherwise.
Scheme parse_scheme(std::string_view name);

struct StepperConfig {
  double dt = 0.1;
  Scheme scheme = Scheme::Strang;
  double fp_tol = 1e-12;
  int fp_max_iter = 50;
  double rk_rel_tol = 1e-6;
  double rk_abs_tol = 1e-9;

  void validate() const;
};

struct StepReport {
  std::vector<int> fp_iterations;  // one entry per implicit sub-step
  double residual = 0.0;           // largest final fixed-point residual
  bool monotonicity_fallback = false;
  int accepted = 0;  // adaptive only
  int rejected = 0;  // adaptive only
  double min_q = std::numeric_limits<double>::infinity();
  double min_h = std::numeric_limits<double>::infinity();

  int max_iterations() const;
  void merge(const StepReport& other);
};

struct StepResult {
  LagrangianState state;
  StepReport report;
};

/// Implicit midpoint step Z = Y + dt G_k((Z + Y)/2) for one sub-system,
/// solved by fixed-point iteration from Z^0 = Y with P, Q recomputed at
/// every midpoint iterate. Converged when distance_f between successive
/// iterates is <= cfg.fp_tol. Throws FixedPointDiverged otherwise.
StepResult midpoint_substep(const LagrangianState& state, double dt, SubSystem which,
                            const StepperConfig& cfg);

/// Phi^2_dt o Phi^1_dt with implicit midpoint sub-flows. First order.
StepResult step_lie_trotter(const LagrangianState& state, const StepperConfig& cfg);

/// Phi^1_{dt/2} o Phi^2_dt o Phi^1_{dt/2}. Symmetric, second order.
StepResult step_strang(const LagrangianState& state, const StepperConfig& cfg);

/// Y + dt G(Y). Does not preserve the invariants.
StepResult step_explicit_euler(const LagrangianState& state, const StepperConfig& cfg);

using AcceptedStepObserver = std::function<void(double t, const LagrangianState&)>;

/// Integrates the full system over a time span with the Dormand-Prince
/// 5(4) pair and a PI step-size controller. cfg.dt is the initial step
/// guess. Throws StepSizeUnderflow.
StepResult step_adaptive_rk(const LagrangianState& state, double t_span,
                            const StepperConfig& cfg,
                            const AcceptedStepObserver& on_accept = {});

/// One accepted Dormand-Prince step on [t0, t0 + h] with its stage slopes.
struct DenseSegment {
  double t0 = 0.0;
  double h = 0.0;
  const LagrangianState* start = nullptr;
  const std::array<Tangent, 7>* k = nullptr;

  /// Fourth-order continuous extension, exact at both ends.
  LagrangianState at(double t) const;
};

using DenseObserver = std::function<void(const DenseSegment& segment, const LagrangianState& end,
                                         const StepReport& running)>;

/// Same integration as step_adaptive_rk with access to the interpolant of
/// every accepted step.
StepResult step_adaptive_rk_dense(const LagrangianState& state, double t_span,
                                  const StepperConfig& cfg, const DenseObserver& on_accept);

/// One step of cfg.scheme over cfg.dt.
StepResult step(const LagrangianState& state, const StepperConfig& cfg);

using Observer =
    std::function<void(double t, const LagrangianState& state, const StepReport& report)>;

struct EvolveResult {
  LagrangianState final_state;
  std::size_t steps = 0;
  StepReport totals;
  std::vector<double> output_times;
};

/// Runs round-down(T/dt) uniform steps plus one shortened step for any
/// remainder. Observers see t = 0, every `stride`-th step and the final
/// time. AdaptiveRK integrates [0, T] in one pass with its own step
/// sizes; dt is the initial step guess and states at the output times come
/// from the dense interpolant.
EvolveResult evolve(const LagrangianState& initial, double T, const StepperConfig& cfg,
                    std::span<const Observer> observers = {}, std::size_t stride = 1);

}  // namespace hrod
