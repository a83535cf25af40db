#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "hrod/state.hpp"

namespace hrod {

/// I_i = U_i^2 q_i^2 + w_i^2 - q_i h_i per cell. Conserved by the
/// semi-discrete flow and by each split sub-flow.
using InvariantVector = std::vector<double>;

InvariantVector invariants(const LagrangianState& state);

/// max_i |a_i - b_i|.
double max_abs_difference(const InvariantVector& a, const InvariantVector& b);

enum class ViolationKind { NegativeQ, NegativeH, Floor, Invariant };

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::size_t index;  // storage position
  double value;       // the offending quantity (q, h, q+h, or qh - U^2q^2 - w^2)
};

struct AdmissibilityReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  std::size_t count(ViolationKind kind) const;
};

inline constexpr double kDefaultAdmissibilityTol = 1e-10;

/// Report-only check of q >= -tol, h >= -tol, q + h >= c_floor - tol and
/// q h >= U^2 q^2 + w^2 - tol per cell.
AdmissibilityReport check_admissible(const LagrangianState& state, double c_floor,
                                     double tol = kDefaultAdmissibilityTol);

}  // namespace hrod
