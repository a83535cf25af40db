#pragma once

#include <optional>
#include <vector>

#include "hrod/state.hpp"

namespace hrod {

/// Per-cell values of the nonlocal Helmholtz-kernel integrals P and Q.
struct SourceTerms {
  std::vector<double> P;
  std::vector<double> Q;
};

/// a_j = (3 - 2 gamma)/2 U_j^2 q_j + gamma/2 h_j.
std::vector<double> integrand_a(const LagrangianState& state);

/// O(N^2) reference summation:
///   P_i =  dxi/2 (sum_{j<i} e^{-(y_i - y_j)} a_j + a_i + sum_{j>i} e^{-(y_j - y_i)} a_j)
///   Q_i = -dxi/2 (sum_{j<i} e^{-(y_i - y_j)} a_j - sum_{j>i} e^{-(y_j - y_i)} a_j)
/// The kernel sign follows the cell index, so the formula is also defined
/// when y is not monotone. The own cell carries sgn(0) = 0 in Q; counting it
/// on either side would shift Q_i by dxi/2 a_i and damp smooth waves.
SourceTerms source_terms_direct(const LagrangianState& state);

/// O(N) evaluation by one forward and one backward recursion with
/// incremental factors e^{-(y_k - y_{k-1})}. Both paths accumulate in long
/// double, so Q stays accurate where its two one-sided sums nearly cancel. Throws NonMonotoneY when y
/// decreases anywhere.
SourceTerms source_terms_fast(const LagrangianState& state);

/// First storage index k with y_k < y_{k-1}, if any.
std::optional<std::size_t> first_nonmonotone_index(const LagrangianState& state);

/// Fast path when y is monotone, direct summation otherwise. Sets
/// *used_fallback (when given) and logs once per fallback.
SourceTerms source_terms(const LagrangianState& state, bool* used_fallback = nullptr);

}  // namespace hrod
