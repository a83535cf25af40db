#include "hrod/state.hpp"

#include <cmath>
#include <string>

#include "hrod/errors.hpp"
#include "hrod/log.hpp"

namespace hrod {

void validate(const Parameters& params) {
  if (!std::isfinite(params.gamma)) throw InvalidArgument("gamma must be finite");
  if (!params.in_physical_range()) {
    log_warning("gamma=" + std::to_string(params.gamma) +
                " lies outside the physical range [-29.4760, 3.4174]");
  }
}

GridSpec::GridSpec(std::size_t n_half, double dxi)
    : n_half_(n_half), dxi_(dxi), r_(static_cast<double>(n_half) * dxi) {
  if (!(dxi > 0.0) || !std::isfinite(dxi)) throw InvalidArgument("dxi must be positive");
  if (n_half == 0) throw InvalidArgument("grid needs at least one cell per half-line");
}

GridSpec GridSpec::from_radius(double r, double dxi) {
  if (!(dxi > 0.0) || !(r > 0.0)) throw InvalidArgument("radius and dxi must be positive");
  return GridSpec(static_cast<std::size_t>(std::llround(r / dxi)), dxi);
}

FieldSet FieldSet::zeros(std::size_t n) {
  FieldSet f;
  for (auto member : kMembers) (f.*member).assign(n, 0.0);
  return f;
}

FieldSet& FieldSet::operator+=(const FieldSet& other) {
  for (auto member : kMembers) {
    auto& a = this->*member;
    const auto& b = other.*member;
    for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
  }
  return *this;
}

FieldSet operator+(FieldSet a, const FieldSet& b) {
  a += b;
  return a;
}

void axpy(FieldSet& x, double alpha, const FieldSet& t) {
  for (auto member : FieldSet::kMembers) {
    auto& a = x.*member;
    const auto& b = t.*member;
    for (std::size_t k = 0; k < a.size(); ++k) a[k] += alpha * b[k];
  }
}

LagrangianState LagrangianState::zero(const GridSpec& grid, const Parameters& params) {
  LagrangianState s;
  static_cast<FieldSet&>(s) = FieldSet::zeros(grid.size());
  s.grid = grid;
  s.params = params;
  return s;
}

void LagrangianState::refresh_total_energy() {
  if (h.empty()) return;
  H_plus = H.back() + grid.dxi() * h.back();
}

void check_shape(const LagrangianState& state) {
  const std::size_t n = state.grid.size();
  for (auto member : FieldSet::kMembers) {
    if ((state.*member).size() != n) {
      throw InvalidArgument("state array length " + std::to_string((state.*member).size()) +
                            " does not match grid size " + std::to_string(n));
    }
  }
}

}  // namespace hrod
