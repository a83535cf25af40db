#include "hrod/observables.hpp"

#include <algorithm>
#include <cmath>

#include "hrod/errors.hpp"

namespace hrod {

EulerianGraph to_graph(const LagrangianState& state, double q_floor) {
  EulerianGraph g;
  g.points.reserve(state.U.size());
  for (std::size_t k = 0; k < state.U.size(); ++k) {
    g.points.push_back({state.y(k), state.U[k], state.q(k) < q_floor});
  }
  return g;
}

std::vector<DensityPoint> energy_density_points(const LagrangianState& state, double q_floor) {
  std::vector<DensityPoint> out;
  out.reserve(state.U.size());
  for (std::size_t k = 0; k < state.U.size(); ++k) {
    const double q = state.q(k);
    if (q >= q_floor) {
      out.push_back({state.y(k), state.h[k] / q});
    } else {
      out.push_back({state.y(k), std::nullopt});
    }
  }
  return out;
}

std::vector<DensityPoint> particle_density_points(const LagrangianState& state, double q_floor) {
  std::vector<DensityPoint> out;
  out.reserve(state.U.size());
  for (std::size_t k = 0; k < state.U.size(); ++k) {
    const double q = state.q(k);
    if (q >= q_floor) {
      out.push_back({state.y(k), 1.0 / q});
    } else {
      out.push_back({state.y(k), std::nullopt});
    }
  }
  return out;
}

double total_energy(const LagrangianState& state) {
  double s = 0.0;
  for (double h : state.h) s += h;
  return state.grid.dxi() * s;
}

double max_energy_density(const LagrangianState& state, double q_floor) {
  double m = 0.0;
  for (const auto& p : energy_density_points(state, q_floor)) {
    if (p.value) m = std::max(m, *p.value);
  }
  return m;
}

double sup_graph_error(const LagrangianState& a, const LagrangianState& b) {
  if (!(a.grid == b.grid)) throw GridMismatch();
  double m = 0.0;
  for (std::size_t k = 0; k < a.U.size(); ++k) {
    m = std::max(m, std::hypot(a.y(k) - b.y(k), a.U[k] - b.U[k]));
  }
  return m;
}

double sup_graph_error_nearest(const LagrangianState& coarse, const LagrangianState& fine) {
  const GridSpec& gf = fine.grid;
  double m = 0.0;
  for (std::size_t k = 0; k < coarse.U.size(); ++k) {
    const double xi = coarse.grid.xi(k);
    const long i = std::lround(xi / gf.dxi());
    const long lo = -static_cast<long>(gf.n_half());
    const long hi = static_cast<long>(gf.n_half()) - 1;
    const auto kf = static_cast<std::size_t>(std::clamp(i, lo, hi) - lo);
    m = std::max(m, std::hypot(coarse.y(k) - fine.y(kf), coarse.U[k] - fine.U[kf]));
  }
  return m;
}

double exact_peakon_error(const LagrangianState& state, double t, double c, double x0) {
  double m = 0.0;
  for (std::size_t k = 0; k < state.U.size(); ++k) {
    const double exact = c * std::exp(-std::abs(state.y(k) - x0 - c * t));
    m = std::max(m, std::abs(state.U[k] - exact));
  }
  return m;
}

double convergence_order(std::span<const ConvergencePoint> points) {
  if (points.size() < 3) throw DegenerateFit("convergence fit needs at least three points");
  double sx = 0.0, sy = 0.0;
  for (const auto& p : points) {
    if (!(p.resolution > 0.0) || !(p.error > 0.0))
      throw DegenerateFit("convergence fit needs positive resolutions and errors");
    sx += std::log(p.resolution);
    sy += std::log(p.error);
  }
  const double n = static_cast<double>(points.size());
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& p : points) {
    const double dx = std::log(p.resolution) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(p.error) - my);
  }
  if (sxx < 1e-24) throw DegenerateFit("resolutions must not all coincide");
  return sxy / sxx;
}

DiagnosticsRecorder::DiagnosticsRecorder(double q_floor) : data_(std::make_shared<Data>()) {
  data_->q_floor = q_floor;
}

Observer DiagnosticsRecorder::observer() {
  return [data = data_](double t, const LagrangianState& s, const StepReport& report) {
    const InvariantVector I = invariants(s);
    if (!data->initial) data->initial = I;
    DiagnosticsRow row;
    row.t = t;
    row.total_energy = total_energy(s);
    row.min_q = report.min_q;
    row.min_h = report.min_h;
    for (std::size_t k = 0; k < s.U.size(); ++k) {
      row.min_q = std::min(row.min_q, s.q(k));
      row.min_h = std::min(row.min_h, s.h[k]);
    }
    row.max_inv_drift = max_abs_difference(I, *data->initial);
    row.fp_iters_max = report.max_iterations();
    row.max_energy_density = max_energy_density(s, data->q_floor);
    data->report_min_q = std::min(data->report_min_q, report.min_q);
    data->report_min_h = std::min(data->report_min_h, report.min_h);
    data->rows.push_back(row);
  };
}

double DiagnosticsRecorder::min_q() const {
  double m = data_->report_min_q;
  for (const auto& r : data_->rows) m = std::min(m, r.min_q);
  return m;
}

double DiagnosticsRecorder::min_h() const {
  double m = data_->report_min_h;
  for (const auto& r : data_->rows) m = std::min(m, r.min_h);
  return m;
}

double DiagnosticsRecorder::max_inv_drift() const {
  double m = 0.0;
  for (const auto& r : data_->rows) m = std::max(m, r.max_inv_drift);
  return m;
}

}  // namespace hrod
