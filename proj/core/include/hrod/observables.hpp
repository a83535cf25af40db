#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "hrod/integrators.hpp"
#include "hrod/invariants.hpp"
#include "hrod/state.hpp"

namespace hrod {

inline constexpr double kDefaultQFloor = 1e-8;

struct GraphPoint {
  double x;
  double u;
  bool concentrated;  // q below the floor: part of a vertical segment
};

/// The points (y_i, U_i), one per cell, no interpolation.
struct EulerianGraph {
  std::vector<GraphPoint> points;
};

EulerianGraph to_graph(const LagrangianState& state, double q_floor = kDefaultQFloor);

/// value is empty where q_i < q_floor (energy concentration).
struct DensityPoint {
  double x;
  std::optional<double> value;

  bool concentrated() const noexcept { return !value.has_value(); }
};

/// (y_i, h_i / q_i): the energy density u^2 + u_x^2 at the particle.
std::vector<DensityPoint> energy_density_points(const LagrangianState& state,
                                                double q_floor = kDefaultQFloor);

/// (y_i, 1 / q_i): the particle density.
std::vector<DensityPoint> particle_density_points(const LagrangianState& state,
                                                  double q_floor = kDefaultQFloor);

/// dxi * sum_i h_i.
double total_energy(const LagrangianState& state);

/// Largest non-concentrated h/q, or 0 when every cell is concentrated.
double max_energy_density(const LagrangianState& state, double q_floor = kDefaultQFloor);

/// max_i |(y_i, U_i)_a - (y_i, U_i)_b| (Euclidean per point). Same grid only.
double sup_graph_error(const LagrangianState& a, const LagrangianState& b);

/// Cross-grid variant: every cell of `coarse` is matched to the cell of
/// `fine` with the nearest xi.
double sup_graph_error_nearest(const LagrangianState& coarse, const LagrangianState& fine);

/// max_i |U_i - c e^{-|y_i - x0 - c t|}|.
double exact_peakon_error(const LagrangianState& state, double t, double c, double x0);

struct ConvergencePoint {
  double resolution;
  double error;
};

/// Least-squares slope of log(error) against log(resolution). Needs at
/// least three points with positive entries and distinct resolutions.
double convergence_order(std::span<const ConvergencePoint> points);

struct DiagnosticsRow {
  double t = 0.0;
  double total_energy = 0.0;
  double min_q = 0.0;  // over the output state and every step since the last row
  double min_h = 0.0;
  double max_inv_drift = 0.0;
  int fp_iters_max = 0;
  double max_energy_density = 0.0;
};

/// Observer recording one DiagnosticsRow per call, with invariant drift
/// measured against the first state it sees.
class DiagnosticsRecorder {
 public:
  explicit DiagnosticsRecorder(double q_floor = kDefaultQFloor);

  Observer observer();
  const std::vector<DiagnosticsRow>& rows() const { return data_->rows; }

  /// Extremes across every row, including stage minima from StepReport.
  double min_q() const;
  double min_h() const;
  double max_inv_drift() const;

 private:
  struct Data {
    double q_floor;
    std::optional<InvariantVector> initial;
    std::vector<DiagnosticsRow> rows;
    double report_min_q = std::numeric_limits<double>::infinity();
    double report_min_h = std::numeric_limits<double>::infinity();
  };
  std::shared_ptr<Data> data_;
};

}  // namespace hrod
