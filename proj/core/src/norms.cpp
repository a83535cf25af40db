#include "hrod/norms.hpp"

#include <algorithm>
#include <cmath>

#include "hrod/errors.hpp"

namespace hrod {
namespace {

double sup(const std::vector<double>& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double l2(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double norm_of(const FieldSet& f, double dxi, double boundary) {
  return sup(f.zeta) + sup(f.U) + sup(f.H) +
         std::sqrt(dxi) * (l2(f.U) + l2(f.v) + l2(f.w) + l2(f.h)) + boundary;
}

}  // namespace

double norm_f(const LagrangianState& state) {
  return norm_of(state, state.grid.dxi(),
                 std::abs(state.zeta_minus) + std::abs(state.zeta_plus) + std::abs(state.H_plus));
}

double distance_f(const LagrangianState& a, const LagrangianState& b) {
  if (!(a.grid == b.grid)) throw GridMismatch();
  FieldSet diff = a;
  axpy(diff, -1.0, b);
  return norm_of(diff, a.grid.dxi(),
                 std::abs(a.zeta_minus - b.zeta_minus) + std::abs(a.zeta_plus - b.zeta_plus) +
                     std::abs(a.H_plus - b.H_plus));
}

}  // namespace hrod
