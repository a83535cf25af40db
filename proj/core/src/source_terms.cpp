#include "hrod/source_terms.hpp"

#include <cmath>
#include <string>

#include "hrod/errors.hpp"
#include "hrod/log.hpp"

namespace hrod {

namespace {
// Q is a difference of two sums of similar size; extended accumulation keeps
// it accurate relative to its own magnitude.
using Wide = long double;
}  // namespace

std::vector<double> integrand_a(const LagrangianState& state) {
  const double gamma = state.params.gamma;
  const double cu = 0.5 * (3.0 - 2.0 * gamma);
  const double ch = 0.5 * gamma;
  std::vector<double> a(state.U.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double q = state.q(j);
    a[j] = cu * state.U[j] * state.U[j] * q + ch * state.h[j];
  }
  return a;
}

SourceTerms source_terms_direct(const LagrangianState& state) {
  const std::size_t n = state.U.size();
  const auto a = integrand_a(state);
  std::vector<Wide> y(n);
  for (std::size_t k = 0; k < n; ++k) y[k] = state.y(k);

  const Wide half = 0.5L * state.grid.dxi();
  SourceTerms out{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    Wide left = 0.0L;
    Wide right = 0.0L;
    for (std::size_t j = 0; j < i; ++j) left += std::exp(-(y[i] - y[j])) * a[j];
    for (std::size_t j = i + 1; j < n; ++j) right += std::exp(-(y[j] - y[i])) * a[j];
    out.P[i] = static_cast<double>(half * (left + a[i] + right));
    out.Q[i] = static_cast<double>(-half * (left - right));
  }
  return out;
}

std::optional<std::size_t> first_nonmonotone_index(const LagrangianState& state) {
  for (std::size_t k = 1; k < state.zeta.size(); ++k) {
    if (state.y(k) < state.y(k - 1)) return k;
  }
  return std::nullopt;
}

SourceTerms source_terms_fast(const LagrangianState& state) {
  const std::size_t n = state.U.size();
  if (auto bad = first_nonmonotone_index(state)) throw NonMonotoneY(*bad);
  const auto a = integrand_a(state);
  SourceTerms out{std::vector<double>(n), std::vector<double>(n)};
  if (n == 0) return out;

  // decay[k] = e^{-(y_k - y_{k-1})} <= 1.
  std::vector<Wide> decay(n, 0.0L);
  for (std::size_t k = 1; k < n; ++k)
    decay[k] = std::exp(-(static_cast<Wide>(state.y(k)) - state.y(k - 1)));

  // left[k] = sum_{j<k} e^{-(y_k - y_j)} a_j, right[k] = sum_{j>k} e^{-(y_j - y_k)} a_j.
  std::vector<Wide> left(n, 0.0L), right(n, 0.0L);
  for (std::size_t k = 1; k < n; ++k) left[k] = decay[k] * (left[k - 1] + a[k - 1]);
  for (std::size_t k = n - 1; k-- > 0;) right[k] = decay[k + 1] * (right[k + 1] + a[k + 1]);

  const Wide half = 0.5L * state.grid.dxi();
  for (std::size_t k = 0; k < n; ++k) {
    out.P[k] = static_cast<double>(half * (left[k] + a[k] + right[k]));
    out.Q[k] = static_cast<double>(-half * (left[k] - right[k]));
  }
  return out;
}

SourceTerms source_terms(const LagrangianState& state, bool* used_fallback) {
  if (auto bad = first_nonmonotone_index(state)) {
    if (used_fallback) *used_fallback = true;
    log_message(LogLevel::Info, "y decreases at storage index " + std::to_string(*bad) +
                                    "; using direct summation for P and Q");
    return source_terms_direct(state);
  }
  if (used_fallback) *used_fallback = false;
  return source_terms_fast(state);
}

}  // namespace hrod
