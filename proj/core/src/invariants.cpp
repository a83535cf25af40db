#include "hrod/invariants.hpp"

#include <algorithm>
#include <cmath>

#include "hrod/errors.hpp"

namespace hrod {

InvariantVector invariants(const LagrangianState& state) {
  InvariantVector I(state.U.size());
  for (std::size_t k = 0; k < I.size(); ++k) {
    const double q = state.q(k);
    const double Uq = state.U[k] * q;
    I[k] = Uq * Uq + state.w[k] * state.w[k] - q * state.h[k];
  }
  return I;
}

double max_abs_difference(const InvariantVector& a, const InvariantVector& b) {
  if (a.size() != b.size()) throw InvalidArgument("invariant vectors differ in length");
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::NegativeQ: return "negative-q";
    case ViolationKind::NegativeH: return "negative-h";
    case ViolationKind::Floor: return "floor";
    case ViolationKind::Invariant: return "invariant";
  }
  return "unknown";
}

std::size_t AdmissibilityReport::count(ViolationKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      violations.begin(), violations.end(), [kind](const Violation& v) { return v.kind == kind; }));
}

AdmissibilityReport check_admissible(const LagrangianState& state, double c_floor, double tol) {
  if (!(c_floor > 0.0)) throw InvalidArgument("c_floor must be positive");
  AdmissibilityReport report;
  for (std::size_t k = 0; k < state.U.size(); ++k) {
    const double q = state.q(k);
    const double h = state.h[k];
    if (q < -tol) report.violations.push_back({ViolationKind::NegativeQ, k, q});
    if (h < -tol) report.violations.push_back({ViolationKind::NegativeH, k, h});
    if (q + h < c_floor - tol) report.violations.push_back({ViolationKind::Floor, k, q + h});
    const double Uq = state.U[k] * q;
    const double slack = q * h - Uq * Uq - state.w[k] * state.w[k];
    if (slack < -tol) report.violations.push_back({ViolationKind::Invariant, k, slack});
  }
  return report;
}

}  // namespace hrod
