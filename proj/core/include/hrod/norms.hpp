#pragma once

#include "hrod/state.hpp"

namespace hrod {

/// |zeta|_inf + |U|_inf + |H|_inf + sqrt(dxi) (|U|_2 + |v|_2 + |w|_2 + |h|_2)
/// + |zeta_-| + |zeta_+| + |H_+|.
double norm_f(const LagrangianState& state);

/// norm_f(a - b). Throws GridMismatch for different grids.
double distance_f(const LagrangianState& a, const LagrangianState& b);

}  // namespace hrod
