#pragma once

#include "hrod/source_terms.hpp"
#include "hrod/state.hpp"

namespace hrod {

/// The two pieces of the split system. G1 moves (v, w, h) with
/// (zeta, U, H) frozen; G2 moves (zeta, U, H, h) with (v, w) frozen.
enum class SubSystem { G1, G2 };

Tangent vector_field_full(const LagrangianState& state, const SourceTerms& terms);
Tangent vector_field_g1(const LagrangianState& state, const SourceTerms& terms);
Tangent vector_field_g2(const LagrangianState& state, const SourceTerms& terms);

inline Tangent vector_field(const LagrangianState& state, const SourceTerms& terms,
                            SubSystem which) {
  return which == SubSystem::G1 ? vector_field_g1(state, terms)
                                : vector_field_g2(state, terms);
}

}  // namespace hrod
