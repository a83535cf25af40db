#include "hrod/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <memory>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hrod/errors.hpp"

namespace hrod {

// ---------------------------------------------------------------------------
// Profiles

namespace {

struct Table {
  std::vector<double> x, u, ux;

  // Index j with x[j] <= t < x[j+1]; requires x.front() <= t < x.back().
  std::size_t bracket(double t) const {
    auto it = std::upper_bound(x.begin(), x.end(), t);
    return static_cast<std::size_t>(std::distance(x.begin(), it)) - 1;
  }

  double interp(const std::vector<double>& f, double t) const {
    if (t < x.front() || t > x.back()) return 0.0;
    if (t == x.back()) return f.back();
    const std::size_t j = bracket(t);
    const double s = (t - x[j]) / (x[j + 1] - x[j]);
    return (1.0 - s) * f[j] + s * f[j + 1];
  }
};

std::vector<double> parse_numbers(const std::string& line) {
  std::string cleaned = line;
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream in(cleaned);
  std::vector<double> values;
  double v;
  while (in >> v) values.push_back(v);
  return values;
}

}  // namespace

EulerianProfile load_profile_table(std::istream& in) {
  auto table = std::make_shared<Table>();
  bool header_seen = false;
  bool has_derivative = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    const auto values = parse_numbers(line);
    if (values.size() < 2 || values.size() > 3) {
      throw InvalidArgument("profile table line " + std::to_string(line_no) +
                            ": expected 2 or 3 numeric columns");
    }
    if (table->x.empty()) has_derivative = values.size() == 3;
    if (has_derivative != (values.size() == 3)) {
      throw InvalidArgument("profile table line " + std::to_string(line_no) +
                            ": inconsistent column count");
    }
    if (!table->x.empty() && !(values[0] > table->x.back())) {
      throw InvalidArgument("profile table line " + std::to_string(line_no) +
                            ": x must be strictly increasing");
    }
    table->x.push_back(values[0]);
    table->u.push_back(values[1]);
    if (has_derivative) table->ux.push_back(values[2]);
  }
  const std::size_t n = table->x.size();
  if (n < 3) throw InvalidArgument("profile table needs at least three samples");
  if (!has_derivative) {
    table->ux.resize(n);
    const auto& x = table->x;
    const auto& u = table->u;
    table->ux[0] = (u[1] - u[0]) / (x[1] - x[0]);
    table->ux[n - 1] = (u[n - 1] - u[n - 2]) / (x[n - 1] - x[n - 2]);
    for (std::size_t j = 1; j + 1 < n; ++j) table->ux[j] = (u[j + 1] - u[j - 1]) / (x[j + 1] - x[j - 1]);
  }
  EulerianProfile p;
  p.u = [table](double x) { return table->interp(table->u, x); };
  p.ux = [table](double x) { return table->interp(table->ux, x); };
  p.support_radius = std::max(std::abs(table->x.front()), std::abs(table->x.back()));
  return p;
}

EulerianProfile load_profile_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open profile table '" + path + "'");
  return load_profile_table(in);
}

namespace {

// d/dx e^{-|x - x0|}, left limit at the kink.
double kink_slope(double x, double x0) {
  const double e = std::exp(-std::abs(x - x0));
  return x <= x0 ? e : -e;
}

}  // namespace

EulerianProfile peakon_profile(double c, double x0) {
  return {[c, x0](double x) { return c * std::exp(-std::abs(x - x0)); },
          [c, x0](double x) { return c * kink_slope(x, x0); }, 25.0};
}

EulerianProfile peakon_antipeakon_profile() {
  return {[](double x) { return std::exp(-std::abs(x)) - std::exp(-std::abs(x - 1.0)); },
          [](double x) { return kink_slope(x, 0.0) - kink_slope(x, 1.0); }, 30.0};
}

EulerianProfile gaussian_derivative_profile() {
  return {[](double x) { return -x * std::exp(-0.5 * x * x); },
          [](double x) { return (x * x - 1.0) * std::exp(-0.5 * x * x); }, 12.0};
}

// ---------------------------------------------------------------------------
// Eulerian -> Lagrangian

FineLagrangianData eulerian_to_lagrangian(const EulerianProfile& profile, FineGrid fine,
                                          const GridSpec& grid) {
  if (fine.m_ref < 1) throw InvalidArgument("m_ref must be at least 1");
  if (!profile.u || !profile.ux) throw InvalidArgument("profile needs u and u_x evaluators");
  const double L = profile.support_radius;
  if (!(L > 0.0)) throw InvalidArgument("profile support radius must be positive");

  // Cumulative energy E(x) = int_{-L}^{x} (u^2 + u_x^2) on a uniform x-grid.
  const double dx_target = std::min(1e-3, grid.dxi() / (2.0 * fine.m_ref));
  const auto nx = static_cast<std::size_t>(std::ceil(2.0 * L / dx_target));
  const double dx = 2.0 * L / static_cast<double>(nx);
  auto energy_density = [&](double x) {
    const double u = profile.u(x);
    const double ux = profile.ux(x);
    return u * u + ux * ux;
  };
  std::vector<double> cumulative(nx + 1, 0.0);
  double e_prev = energy_density(-L);
  double e_max = e_prev;
  for (std::size_t j = 1; j <= nx; ++j) {
    const double e = energy_density(-L + static_cast<double>(j) * dx);
    if (!std::isfinite(e)) throw InvalidArgument("profile energy density is not finite");
    cumulative[j] = cumulative[j - 1] + 0.5 * dx * (e_prev + e);
    e_prev = e;
    e_max = std::max(e_max, e);
  }
  const double edge = std::max(energy_density(-L), energy_density(L));
  if (edge > 1e-10 * (1.0 + e_max)) {
    throw RootBracketFailure("profile energy density " + std::to_string(edge) +
                             " at |x| = " + std::to_string(L) +
                             " exceeds the solver bracket; increase the support radius");
  }
  const double E_total = cumulative.back();

  auto E = [&](double y) {
    if (y <= -L) return 0.0;
    if (y >= L) return E_total;
    const double s = (y + L) / dx;
    auto j = static_cast<std::size_t>(s);
    if (j >= nx) return E_total;
    const double t = s - static_cast<double>(j);
    return (1.0 - t) * cumulative[j] + t * cumulative[j + 1];
  };

  FineLagrangianData out;
  out.grid = grid;
  out.m_ref = fine.m_ref;
  out.H_total = E_total;
  const std::size_t n = grid.size() * static_cast<std::size_t>(fine.m_ref);
  for (auto* v : {&out.xi, &out.y, &out.U, &out.H, &out.q, &out.w, &out.h}) v->resize(n);

  const double sub = grid.dxi() / fine.m_ref;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    for (int s = 0; s < fine.m_ref; ++s) {
      const std::size_t idx = k * static_cast<std::size_t>(fine.m_ref) + static_cast<std::size_t>(s);
      const double xi = grid.xi(k) + (static_cast<double>(s) + 0.5) * sub;
      // y + E(y) - xi is strictly increasing; this bracket always contains the root.
      double lo = xi - E_total - 1.0;
      double hi = xi + 1.0;
      double y = 0.5 * (lo + hi);
      for (int it = 0; it < 200; ++it) {
        y = 0.5 * (lo + hi);
        const double r = y + E(y) - xi;
        if (std::abs(r) <= 1e-13 || hi - lo <= 1e-15 * std::max(1.0, std::abs(y))) break;
        (r > 0.0 ? hi : lo) = y;
      }
      const double e = energy_density(y);
      const double q = 1.0 / (1.0 + e);
      out.xi[idx] = xi;
      out.y[idx] = y;
      out.U[idx] = profile.u(y);
      out.H[idx] = xi - y;
      out.q[idx] = q;
      out.h[idx] = 1.0 - q;
      out.w[idx] = profile.ux(y) * q;
    }
  }
  // Energy to the left of the first grid edge: H(-R) = -R - y(-R).
  {
    double lo = -grid.r() - E_total - 1.0, hi = -grid.r() + 1.0;
    for (int it = 0; it < 200; ++it) {
      const double y = 0.5 * (lo + hi);
      const double r = y + E(y) + grid.r();
      if (std::abs(r) <= 1e-13 || hi - lo <= 1e-15 * std::max(1.0, std::abs(y))) break;
      (r > 0.0 ? hi : lo) = y;
    }
    out.H_left = -grid.r() - 0.5 * (lo + hi);
  }
  return out;
}

LagrangianState project_to_grid(const FineLagrangianData& fine, const Parameters& params) {
  const GridSpec& grid = fine.grid;
  LagrangianState s = LagrangianState::zero(grid, params);
  const auto m = static_cast<std::size_t>(fine.m_ref);
  const double inv_m = 1.0 / static_cast<double>(m);
  double H = fine.H_left;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    double q_sum = 0.0, w_sum = 0.0, h_sum = 0.0, q2 = 0.0, q2U = 0.0;
    for (std::size_t j = k * m; j < (k + 1) * m; ++j) {
      const double q = fine.q[j];
      q_sum += q;
      w_sum += fine.w[j];
      h_sum += fine.h[j];
      q2 += q * q;
      q2U += q * q * fine.U[j];
    }
    const double q = q_sum * inv_m;
    s.v[k] = q - 1.0;
    s.w[k] = w_sum * inv_m;
    s.h[k] = h_sum * inv_m;
    s.U[k] = q2 > 0.0 ? q2U / q2 : 0.0;
    s.H[k] = H;
    s.zeta[k] = -H;
    H += grid.dxi() * s.h[k];
  }
  s.zeta_minus = -fine.H_left;
  s.zeta_plus = -H;
  s.H_plus = H;
  return s;
}

LagrangianState project_profile(const EulerianProfile& profile, const GridSpec& grid,
                                const Parameters& params, FineGrid fine) {
  return project_to_grid(eulerian_to_lagrangian(profile, fine, grid), params);
}

LagrangianState relabeled_from_profile(const EulerianProfile& profile, const GridSpec& grid,
                                       const Parameters& params) {
  LagrangianState s = LagrangianState::zero(grid, params);
  double H = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double xi = grid.xi(k);
    const double U = profile.u(xi);
    const double w = profile.ux(xi);
    s.U[k] = U;
    s.w[k] = w;
    s.h[k] = U * U + w * w;
    s.H[k] = H;
    H += grid.dxi() * s.h[k];
  }
  s.H_plus = H;
  return s;
}

LagrangianState make_peakon(double c, double x0, const GridSpec& grid, const Parameters& params) {
  return relabeled_from_profile(peakon_profile(c, x0), grid, params);
}

LagrangianState make_peakon_antipeakon(const GridSpec& grid, const Parameters& params) {
  return relabeled_from_profile(peakon_antipeakon_profile(), grid, params);
}

LagrangianState make_gaussian_derivative(const GridSpec& grid, const Parameters& params,
                                         FineGrid fine) {
  return project_profile(gaussian_derivative_profile(), grid, params, fine);
}

// ---------------------------------------------------------------------------
// Traveling waves

std::string to_string(WaveKind kind) {
  switch (kind) {
    case WaveKind::Smooth: return "smooth";
    case WaveKind::Peakon: return "peakon";
    case WaveKind::Cuspon: return "cuspon";
    case WaveKind::PeakonAntipeakon: return "peakon-antipeakon";
    case WaveKind::GaussianDerivative: return "gaussian-derivative";
  }
  return "unknown";
}

WaveKind parse_wave_kind(const std::string& name) {
  for (auto k : {WaveKind::Smooth, WaveKind::Peakon, WaveKind::Cuspon, WaveKind::PeakonAntipeakon,
                 WaveKind::GaussianDerivative}) {
    if (to_string(k) == name) return k;
  }
  throw InvalidArgument("unknown initial-data kind '" + name + "'");
}

void TravelingWaveSpec::validate() const {
  const auto same = [](double a, double b) { return std::abs(a - b) <= 1e-12 * (1 + std::abs(b)); };
  switch (kind) {
    case WaveKind::Smooth:
      if (!(gamma < 1.0)) throw InvalidArgument("smooth traveling waves with decay need gamma < 1");
      if (!same(c, M) || !(M > 0.0)) throw InvalidArgument("smooth traveling waves need c = M > 0");
      if (m != 0.0) throw InvalidArgument("decaying traveling waves need m = 0");
      break;
    case WaveKind::Peakon:
      if (gamma != 1.0) throw InvalidArgument("peakons need gamma = 1");
      break;
    case WaveKind::Cuspon:
      if (!(gamma > 1.0)) throw InvalidArgument("cuspons need gamma > 1");
      if (!same(c, M) || !(M > 0.0)) throw InvalidArgument("cuspons need c = M > 0");
      if (m != 0.0) throw InvalidArgument("decaying traveling waves need m = 0");
      break;
    case WaveKind::PeakonAntipeakon:
    case WaveKind::GaussianDerivative:
      break;
  }
  if (!std::isfinite(gamma)) throw InvalidArgument("gamma must be finite");
}

double tw_F(const TravelingWaveSpec& s, double u) {
  const double z = s.c - s.M - s.m;
  return (s.M - u) * (u - s.m) * (u - z) / (s.c - s.gamma * u);
}

double tw_dF(const TravelingWaveSpec& s, double u) {
  const double z = s.c - s.M - s.m;
  const double num = (s.M - u) * (u - s.m) * (u - z);
  const double dnum =
      -(u - s.m) * (u - z) + (s.M - u) * (u - z) + (s.M - u) * (u - s.m);
  const double den = s.c - s.gamma * u;
  return (dnum * den + s.gamma * num) / (den * den);
}

double SmoothProfile::value(double x) const {
  const double ax = std::abs(x);
  const double t = ax / dx;
  const auto j = static_cast<std::size_t>(t);
  if (j + 1 >= u.size()) return 0.0;
  const double s = t - static_cast<double>(j);
  // Cubic Hermite on [x_j, x_{j+1}].
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  const double h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s);
  const double h11 = s * s * (s - 1);
  return h00 * u[j] + h10 * dx * ux[j] + h01 * u[j + 1] + h11 * dx * ux[j + 1];
}

double SmoothProfile::derivative(double x) const {
  const double ax = std::abs(x);
  const double t = ax / dx;
  const auto j = static_cast<std::size_t>(t);
  if (j + 1 >= u.size()) return 0.0;
  const double s = t - static_cast<double>(j);
  const double d00 = 6 * s * s - 6 * s;
  const double d10 = 3 * s * s - 4 * s + 1;
  const double d01 = -d00;
  const double d11 = 3 * s * s - 2 * s;
  const double d = (d00 * u[j] + d01 * u[j + 1]) / dx + d10 * ux[j] + d11 * ux[j + 1];
  return x >= 0.0 ? d : -d;
}

SmoothProfile compute_smooth_profile(const TravelingWaveSpec& spec, double dx, double x_max) {
  if (!(dx > 0.0) || !(x_max > 0.0)) throw InvalidArgument("profile step and range must be positive");
  SmoothProfile p;
  p.dx = dx;
  const auto n = static_cast<std::size_t>(std::ceil(x_max / dx)) + 2;
  p.u.reserve(n);
  p.ux.reserve(n);

  double u = spec.M - spec.crest_offset;
  double du = 0.0;
  p.u.push_back(u);
  p.ux.push_back(du);
  auto check = [&](double value, double slope) {
    if (!std::isfinite(value) || !std::isfinite(slope) || value > spec.M + 1e-12 ||
        spec.c - spec.gamma * value <= 0.0) {
      throw ProfileBlowup("smooth traveling-wave integration left the admissible regime at x=" +
                          std::to_string(static_cast<double>(p.u.size()) * dx));
    }
  };

  // Crest region: u'' = F'(u)/2, classical RK4 on (u, u').
  while (p.u.size() < n && u >= 0.5 * spec.M) {
    const auto acc = [&](double uu) { return 0.5 * tw_dF(spec, uu); };
    const double k1u = du, k1p = acc(u);
    const double k2u = du + 0.5 * dx * k1p, k2p = acc(u + 0.5 * dx * k1u);
    const double k3u = du + 0.5 * dx * k2p, k3p = acc(u + 0.5 * dx * k2u);
    const double k4u = du + dx * k3p, k4p = acc(u + dx * k3u);
    u += dx / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
    du += dx / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p);
    check(u, du);
    if (du > 0.0) throw ProfileBlowup("smooth traveling-wave profile is not decreasing");
    p.u.push_back(u);
    p.ux.push_back(du);
  }
  // Decaying branch: u' = -sqrt(F(u)), Lipschitz away from the crest.
  const auto slope = [&](double uu) { return -std::sqrt(std::max(tw_F(spec, uu), 0.0)); };
  while (p.u.size() < n) {
    const double k1 = slope(u);
    const double k2 = slope(u + 0.5 * dx * k1);
    const double k3 = slope(u + 0.5 * dx * k2);
    const double k4 = slope(u + dx * k3);
    u += dx / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    check(u, 0.0);
    p.u.push_back(u);
    p.ux.push_back(slope(u));
  }
  return p;
}

LagrangianState make_smooth_tw(const TravelingWaveSpec& spec, const GridSpec& grid) {
  spec.validate();
  const double dx = grid.dxi() / 32.0;
  auto profile = std::make_shared<SmoothProfile>(
      compute_smooth_profile(spec, dx, grid.r() + std::abs(spec.x0) + 1.0));
  const double x0 = spec.x0;
  EulerianProfile eul{[profile, x0](double x) { return profile->value(x - x0); },
                      [profile, x0](double x) { return profile->derivative(x - x0); },
                      grid.r() + std::abs(x0)};
  return relabeled_from_profile(eul, grid, Parameters{spec.gamma});
}

namespace {

double gk_integrate(const auto& f, double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  double error = 0.0;
  return gauss_kronrod<double, 31>::integrate(f, a, b, 20, 1e-10, &error);
}

}  // namespace

double cuspon_g(const TravelingWaveSpec& spec, double u) {
  const double top = spec.c / spec.gamma;
  if (!(u > 0.0) || u > top) throw InvalidArgument("cuspon_g needs 0 < u <= c/gamma");
  if (u == top) return 0.0;
  const double sg = std::sqrt(spec.gamma);
  const double gap = spec.M - top;
  // z = top - s^2 removes the square-root behaviour at the crest.
  auto crest_part = [&](double lower) {
    const auto f = [&](double s) {
      const double s2 = s * s;
      return 2.0 * sg * s2 / ((top - s2) * std::sqrt(gap + s2));
    };
    return gk_integrate(f, 0.0, std::sqrt(top - lower));
  };
  const double split = 0.5 * top;
  if (u >= split) return crest_part(u);
  // z = e^t flattens the 1/z behaviour of the tail.
  const auto tail = [&](double t) {
    const double z = std::exp(t);
    return std::sqrt((spec.c - spec.gamma * z) / (spec.M - z));
  };
  return crest_part(split) + gk_integrate(tail, std::log(u), std::log(split));
}

CusponSample cuspon_sample(const TravelingWaveSpec& spec, double xi) {
  const double top = spec.c / spec.gamma;
  const double a = spec.blend_a.value_or(0.1 * std::sqrt(top));
  const double b = spec.blend_b.value_or(0.4 * std::sqrt(top));
  if (!(0.0 < a && a < b && b * b < top)) {
    throw InvalidArgument("cuspon blend interval needs 0 < a < b < sqrt(c/gamma)");
  }
  const double k = std::sqrt(spec.M / spec.c);
  const double x = std::abs(xi);

  double chi = 1.0, dchi = 0.0;
  if (x > b) {
    chi = 0.0;
  } else if (x >= a) {
    chi = (b - x) / (b - a);
    dchi = -1.0 / (b - a);
  }
  const double u1 = top - x * x, du1 = -2.0 * x;
  const double u2 = top * std::exp(-k * x), du2 = -k * u2;
  const double U = chi * u1 + (1.0 - chi) * u2;
  const double Uxi = dchi * (u1 - u2) + chi * du1 + (1.0 - chi) * du2;

  CusponSample out{};
  out.U = U;
  out.w = Uxi;
  out.y = cuspon_g(spec, U);
  if (x < a) {
    // c - gamma U = gamma xi^2 exactly here, which resolves 0/0 at the crest.
    const double root = std::sqrt(spec.M - U);
    out.q = 2.0 * std::sqrt(spec.gamma) * x * x / (U * root);
    out.h = U * U * out.q + 2.0 * U * root / std::sqrt(spec.gamma);
  } else {
    const double sF = U * std::sqrt((spec.M - U) / (spec.c - spec.gamma * U));
    out.q = -Uxi / sF;
    if (!(out.q > 0.0)) throw NonMonotoneConstruction(x, out.q);
    out.h = U * U * out.q + Uxi * Uxi / out.q;
  }
  return out;
}

LagrangianState make_cuspon(const TravelingWaveSpec& spec, const GridSpec& grid) {
  spec.validate();
  LagrangianState s = LagrangianState::zero(grid, Parameters{spec.gamma});
  double H = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double xi = grid.xi(k);
    const CusponSample c = cuspon_sample(spec, xi);
    const double sign = xi < 0.0 ? -1.0 : 1.0;
    s.U[k] = c.U;
    s.zeta[k] = sign * c.y + spec.x0 - xi;
    s.v[k] = c.q - 1.0;
    s.w[k] = sign * c.w;
    s.h[k] = c.h;
    s.H[k] = H;
    H += grid.dxi() * c.h;
  }
  s.zeta_minus = s.zeta.front();
  s.zeta_plus = s.zeta.back();
  s.H_plus = H;
  return s;
}

LagrangianState make_initial_state(const TravelingWaveSpec& spec, const GridSpec& grid,
                                   FineGrid fine) {
  spec.validate();
  const Parameters params{spec.gamma};
  switch (spec.kind) {
    case WaveKind::Smooth: return make_smooth_tw(spec, grid);
    case WaveKind::Peakon: return make_peakon(spec.c, spec.x0, grid, params);
    case WaveKind::Cuspon: return make_cuspon(spec, grid);
    case WaveKind::PeakonAntipeakon: return make_peakon_antipeakon(grid, params);
    case WaveKind::GaussianDerivative: return make_gaussian_derivative(grid, params, fine);
  }
  throw InvalidArgument("unknown initial-data kind");
}

}  // namespace hrod
