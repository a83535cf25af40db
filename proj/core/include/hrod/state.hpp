#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace hrod {

/// Physical range of the material constant for compressible rods.
inline constexpr double kPhysicalGammaMin = -29.4760;
inline constexpr double kPhysicalGammaMax = 3.4174;

struct Parameters {
  double gamma = 1.0;

  bool in_physical_range() const {
    return gamma >= kPhysicalGammaMin && gamma <= kPhysicalGammaMax;
  }
};

/// Throws InvalidArgument for a non-finite gamma; logs a warning outside
/// the physical range.
void validate(const Parameters& params);

/// Uniform grid of 2N cells xi_i = i*dxi, i = -N..N-1, covering [-R, R).
/// Storage position k in [0, 2N) holds grid index i = k - N.
class GridSpec {
 public:
  GridSpec() = default;
  GridSpec(std::size_t n_half, double dxi);

  /// n_half = round(r / dxi); the stored radius is n_half * dxi.
  static GridSpec from_radius(double r, double dxi);

  std::size_t n_half() const noexcept { return n_half_; }
  double dxi() const noexcept { return dxi_; }
  double r() const noexcept { return r_; }
  std::size_t size() const noexcept { return 2 * n_half_; }

  long index(std::size_t k) const noexcept {
    return static_cast<long>(k) - static_cast<long>(n_half_);
  }
  /// Left endpoint of the cell at storage position k.
  double xi(std::size_t k) const noexcept { return static_cast<double>(index(k)) * dxi_; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  std::size_t n_half_ = 0;
  double dxi_ = 1.0;
  double r_ = 0.0;
};

/// The six per-cell arrays. Also used as the tangent of a state.
struct FieldSet {
  std::vector<double> zeta;
  std::vector<double> U;
  std::vector<double> H;
  std::vector<double> v;
  std::vector<double> w;
  std::vector<double> h;

  static constexpr std::array<std::vector<double> FieldSet::*, 6> kMembers = {
      &FieldSet::zeta, &FieldSet::U, &FieldSet::H, &FieldSet::v, &FieldSet::w, &FieldSet::h};

  static FieldSet zeros(std::size_t n);
  std::size_t size() const noexcept { return U.size(); }

  FieldSet& operator+=(const FieldSet& other);
  friend bool operator==(const FieldSet&, const FieldSet&) = default;
};

using Tangent = FieldSet;

FieldSet operator+(FieldSet a, const FieldSet& b);

/// x += alpha * t, field by field.
void axpy(FieldSet& x, double alpha, const FieldSet& t);

/// Discrete Lagrangian state (zeta, U, H, v, w, h) with q = 1 + v and
/// y = xi + zeta. Boundary constants carry no dynamics.
struct LagrangianState : FieldSet {
  GridSpec grid;
  Parameters params;
  double zeta_minus = 0.0;
  double zeta_plus = 0.0;
  double H_plus = 0.0;

  static LagrangianState zero(const GridSpec& grid, const Parameters& params);

  double y(std::size_t k) const { return grid.xi(k) + zeta[k]; }
  double q(std::size_t k) const { return 1.0 + v[k]; }

  /// Sets H_plus = H_{N-1} + dxi * h_{N-1} for reporting.
  void refresh_total_energy();

  friend bool operator==(const LagrangianState& a, const LagrangianState& b) {
    return static_cast<const FieldSet&>(a) == static_cast<const FieldSet&>(b) &&
           a.grid == b.grid && a.params.gamma == b.params.gamma &&
           a.zeta_minus == b.zeta_minus && a.zeta_plus == b.zeta_plus && a.H_plus == b.H_plus;
  }
};

/// Throws InvalidArgument unless every array has grid.size() entries.
void check_shape(const LagrangianState& state);

}  // namespace hrod
