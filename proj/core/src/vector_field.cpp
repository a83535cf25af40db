#include "hrod/vector_field.hpp"

namespace hrod {

// Each component of the full field is assembled as (G2 part) + (G1 part)
// from the same expressions as the split fields, so g1 + g2 == full holds
// bitwise.
namespace {

struct Pieces {
  double zeta, U, H, v, w, h_g1, h_g2;
};

inline Pieces pieces(const LagrangianState& s, const SourceTerms& t, std::size_t k) {
  const double gamma = s.params.gamma;
  const double U = s.U[k];
  const double q = s.q(k);
  const double w = s.w[k];
  const double P = t.P[k];
  const double Q = t.Q[k];
  return Pieces{
      gamma * U,
      -Q,
      U * U * U - 2.0 * P * U,
      gamma * w,
      0.5 * gamma * s.h[k] + (0.5 * (3.0 - 2.0 * gamma) * U * U - P) * q,
      (3.0 * U * U - 2.0 * P) * w,
      -2.0 * Q * U * q,
  };
}

}  // namespace

Tangent vector_field_g1(const LagrangianState& state, const SourceTerms& terms) {
  Tangent d = Tangent::zeros(state.U.size());
  for (std::size_t k = 0; k < d.size(); ++k) {
    const Pieces p = pieces(state, terms, k);
    d.v[k] = p.v;
    d.w[k] = p.w;
    d.h[k] = p.h_g1;
  }
  return d;
}

Tangent vector_field_g2(const LagrangianState& state, const SourceTerms& terms) {
  Tangent d = Tangent::zeros(state.U.size());
  for (std::size_t k = 0; k < d.size(); ++k) {
    const Pieces p = pieces(state, terms, k);
    d.zeta[k] = p.zeta;
    d.U[k] = p.U;
    d.H[k] = p.H;
    d.h[k] = p.h_g2;
  }
  return d;
}

Tangent vector_field_full(const LagrangianState& state, const SourceTerms& terms) {
  Tangent d = Tangent::zeros(state.U.size());
  for (std::size_t k = 0; k < d.size(); ++k) {
    const Pieces p = pieces(state, terms, k);
    d.zeta[k] = p.zeta;
    d.U[k] = p.U;
    d.H[k] = p.H;
    d.v[k] = p.v;
    d.w[k] = p.w;
    d.h[k] = p.h_g1 + p.h_g2;
  }
  return d;
}

}  // namespace hrod
