#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hrod/state.hpp"

namespace hrod {

/// An Eulerian initial profile u0 with derivative u0_x. Derivative
/// evaluators should return the left limit at kinks.
struct EulerianProfile {
  std::function<double(double)> u;
  std::function<double(double)> ux;
  /// |x| beyond which the energy density is negligible.
  double support_radius = 25.0;
};

/// Reads a two-column numeric table "x u" (whitespace or comma separated).
/// The first non-blank line is a header and is skipped; '#' starts a
/// comment. Values are linearly interpolated and extended by zero;
/// derivatives use central differences of the samples.
EulerianProfile load_profile_table(std::istream& in);
EulerianProfile load_profile_table(const std::string& path);

struct FineGrid {
  int m_ref = 16;  // sub-nodes per dxi cell
};

/// Continuum Lagrangian data sampled at the midpoints of m_ref sub-cells
/// of every grid cell (storage position k, sub-node s at
/// k * m_ref + s).
struct FineLagrangianData {
  GridSpec grid;
  int m_ref = 16;
  std::vector<double> xi, y, U, H, q, w, h;
  double H_left = 0.0;   // energy to the left of -R
  double H_total = 0.0;  // total energy of the profile
};

/// Solves y + E(y) = xi on every fine node, E being the cumulative
/// trapezoid energy of the profile, then sets U = u0(y), H = xi - y,
/// q = 1 / (1 + e(y)), h = 1 - q, w = u0_x(y) q. Throws RootBracketFailure
/// when the profile has energy beyond its support radius.
FineLagrangianData eulerian_to_lagrangian(const EulerianProfile& profile, FineGrid fine,
                                          const GridSpec& grid);

/// Cell averages of v, w, h; U as the q^2-weighted average; H cumulative
/// from the left; zeta = -H. Cells with zero q^2 mass get U = 0.
LagrangianState project_to_grid(const FineLagrangianData& fine, const Parameters& params);

/// eulerian_to_lagrangian followed by project_to_grid.
LagrangianState project_profile(const EulerianProfile& profile, const GridSpec& grid,
                                const Parameters& params, FineGrid fine = {});

/// The y0 = xi relabeling: U = u0(xi), w = u0_x(xi), q = 1,
/// h = U^2 + w^2, H cumulative from the left.
LagrangianState relabeled_from_profile(const EulerianProfile& profile, const GridSpec& grid,
                                       const Parameters& params);

EulerianProfile peakon_profile(double c, double x0);
/// e^{-|x|} - e^{-|x-1|}.
EulerianProfile peakon_antipeakon_profile();
/// -x e^{-x^2/2}.
EulerianProfile gaussian_derivative_profile();

LagrangianState make_peakon(double c, double x0, const GridSpec& grid,
                            const Parameters& params = {1.0});
LagrangianState make_peakon_antipeakon(const GridSpec& grid, const Parameters& params);
LagrangianState make_gaussian_derivative(const GridSpec& grid, const Parameters& params,
                                         FineGrid fine = {});

enum class WaveKind { Smooth, Peakon, Cuspon, PeakonAntipeakon, GaussianDerivative };

std::string to_string(WaveKind kind);
WaveKind parse_wave_kind(const std::string& name);

struct TravelingWaveSpec {
  WaveKind kind = WaveKind::Peakon;
  double gamma = 1.0;
  double c = 1.0;
  double M = 1.0;
  double m = 0.0;
  double x0 = 0.0;
  /// Cuspon blend interval; defaults to (0.1, 0.4) * sqrt(c / gamma).
  std::optional<double> blend_a;
  std::optional<double> blend_b;
  /// Crest departure from u = M for the smooth profile integration.
  double crest_offset = 0.0;

  /// Checks the parameter regime of the kind. Throws InvalidArgument.
  void validate() const;
};

/// F(u) = (M - u)(u - m)(u - z) / (c - gamma u), z = c - M - m.
double tw_F(const TravelingWaveSpec& spec, double u);
double tw_dF(const TravelingWaveSpec& spec, double u);

/// Half profile x >= 0 of a smooth traveling wave with its crest at x = 0.
struct SmoothProfile {
  double dx = 0.0;
  std::vector<double> u;   // u(k dx)
  std::vector<double> ux;  // u'(k dx)

  double value(double x) const;       // even extension, cubic Hermite
  double derivative(double x) const;  // odd extension
};

/// Integrates u'' = F'(u)/2 from the crest outwards with classical RK4 on
/// step dx until u < M/2, then u' = -sqrt(F(u)) on the decaying branch
/// until x_max. Throws ProfileBlowup for a wrong parameter regime.
SmoothProfile compute_smooth_profile(const TravelingWaveSpec& spec, double dx, double x_max);

/// Smooth traveling wave (gamma < 1, c = M) on the y0 = xi relabeling.
LagrangianState make_smooth_tw(const TravelingWaveSpec& spec, const GridSpec& grid);

/// g(u) = int_u^{c/gamma} dz / sqrt(F(z)), by adaptive Gauss-Kronrod
/// quadrature (relative tolerance 1e-10).
double cuspon_g(const TravelingWaveSpec& spec, double u);

struct CusponSample {
  double U;  // U(xi)
  double y;  // g(U(xi)), before the x0 shift
  double w;  // U_xi
  double q;  // y_xi
  double h;  // H_xi = U^2 y_xi + U_xi^2 / y_xi
};

/// Construction at xi >= 0 with
/// U = chi1 (c/gamma - xi^2) + chi2 (c/gamma) e^{-sqrt(M/c) xi}.
CusponSample cuspon_sample(const TravelingWaveSpec& spec, double xi);

/// Cuspon (gamma > 1, c = M) by parity extension of cuspon_sample, crest
/// at spec.x0. Throws NonMonotoneConstruction if y_xi < 0 on the grid.
LagrangianState make_cuspon(const TravelingWaveSpec& spec, const GridSpec& grid);

/// Dispatch on spec.kind (PeakonAntipeakon and GaussianDerivative use
/// spec.gamma only).
LagrangianState make_initial_state(const TravelingWaveSpec& spec, const GridSpec& grid,
                                   FineGrid fine = {});

}  // namespace hrod
