#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hrod/hrod.hpp"

namespace hrod {
namespace {

TravelingWaveSpec cuspon_spec() {
  TravelingWaveSpec s;
  s.kind = WaveKind::Cuspon;
  s.gamma = 5.0;
  s.c = s.M = 1.0;
  return s;
}

TravelingWaveSpec smooth_spec() {
  TravelingWaveSpec s;
  s.kind = WaveKind::Smooth;
  s.gamma = 0.2;
  s.c = s.M = 1.0;
  return s;
}

TEST(Projection, QPlusHIsOneAndInvariantNonPositive) {
  const auto s = make_gaussian_derivative(GridSpec::from_radius(10.0, 0.25), {0.8});
  const auto I = invariants(s);
  for (std::size_t k = 0; k < s.U.size(); ++k) {
    EXPECT_NEAR(s.q(k) + s.h[k], 1.0, 1e-14) << k;
    EXPECT_LE(I[k], 1e-12) << k;
  }
  EXPECT_TRUE(check_admissible(s, 0.5).ok());
}

TEST(Projection, ZeroProfileGivesIdentityLabels) {
  const EulerianProfile zero{[](double) { return 0.0; }, [](double) { return 0.0; }, 5.0};
  const GridSpec grid(20, 0.25);
  const auto s = project_profile(zero, grid, {1.0});
  const auto ref = LagrangianState::zero(grid, {1.0});
  for (std::size_t k = 0; k < grid.size(); ++k) {
    EXPECT_NEAR(s.zeta[k], 0.0, 1e-15);
    EXPECT_EQ(s.U[k], 0.0);
    EXPECT_NEAR(s.v[k], 0.0, 1e-15);
    EXPECT_EQ(s.h[k], 0.0);
  }
  EXPECT_EQ(s.H_plus, ref.H_plus);
}

// The kink makes the cell sum a trapezoid rule with an O(dxi^2) error.
TEST(Relabeling, PeakonEnergyConvergesToTwiceHeightSquared) {
  auto err = [](double dxi) {
    return std::abs(total_energy(make_peakon(1.5, 0.0, GridSpec::from_radius(25.0, dxi))) - 4.5);
  };
  const double e1 = err(0.1), e2 = err(0.05);
  EXPECT_LT(e1, 0.02);
  EXPECT_NEAR(e1 / e2, 4.0, 0.1);
}

TEST(Projection, GaussianDerivativeEnergy) {
  const auto s = make_gaussian_derivative(GridSpec::from_radius(25.0, 0.1), {0.8});
  EXPECT_NEAR(total_energy(s), 1.25 * std::sqrt(std::numbers::pi), 1e-6);
}

TEST(Projection, EnergyBeyondSupportFailsBracketing) {
  const EulerianProfile wide{[](double) { return 1.0; }, [](double) { return 0.0; }, 3.0};
  EXPECT_THROW(project_profile(wide, GridSpec(10, 0.5), {1.0}), RootBracketFailure);
}

TEST(Relabeling, PeakonHasZeroInvariant) {
  const auto s = relabeled_from_profile(peakon_profile(1.0, 0.0), GridSpec(40, 0.25), {1.0});
  for (std::size_t k = 0; k < s.U.size(); ++k) EXPECT_EQ(s.v[k], 0.0);
  for (double I : invariants(s)) EXPECT_NEAR(I, 0.0, 1e-15);
}

TEST(ProfileTable, ParsesCommentsAndSeparators) {
  std::istringstream in("x u\n# comment\n-1, -2\n0 0\n1,2  # tail\n2 4\n\n");
  const auto p = load_profile_table(in);
  EXPECT_DOUBLE_EQ(p.u(0.5), 1.0);
  EXPECT_DOUBLE_EQ(p.u(-0.25), -0.5);
  EXPECT_EQ(p.u(3.0), 0.0);
  EXPECT_DOUBLE_EQ(p.ux(0.0), 2.0);
  EXPECT_DOUBLE_EQ(p.ux(0.5), 2.0);
}

TEST(ProfileTable, RejectsBadInput) {
  std::istringstream few("x u\n0 1\n1 0\n");
  EXPECT_THROW(load_profile_table(few), InvalidArgument);
  std::istringstream junk("x u\n0 1\n1 abc\n2 0\n");
  EXPECT_THROW(load_profile_table(junk), InvalidArgument);
  EXPECT_THROW(load_profile_table(std::string("/nonexistent/profile.txt")), InvalidArgument);
}

TEST(TravelingWave, ValidateRegimes) {
  auto s = smooth_spec();
  EXPECT_NO_THROW(s.validate());
  s.gamma = 1.5;
  EXPECT_THROW(s.validate(), InvalidArgument);
  auto c = cuspon_spec();
  EXPECT_NO_THROW(c.validate());
  c.c = 2.0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  TravelingWaveSpec p;
  p.gamma = 2.0;
  EXPECT_THROW(p.validate(), InvalidArgument);
  EXPECT_THROW(parse_wave_kind("soliton"), InvalidArgument);
}

TEST(TravelingWave, SmoothProfileSatisfiesFirstIntegral) {
  const auto spec = smooth_spec();
  const auto p = compute_smooth_profile(spec, 0.25 / 32.0, 20.0);
  double worst = 0.0;
  for (std::size_t k = 0; k < p.u.size(); ++k)
    worst = std::max(worst, std::abs(p.ux[k] * p.ux[k] - tw_F(spec, p.u[k])));
  EXPECT_LE(worst, 1e-8);
  EXPECT_DOUBLE_EQ(p.u.front(), 1.0);
  for (std::size_t k = 1; k < p.u.size(); ++k) EXPECT_LE(p.u[k], p.u[k - 1]);
}

TEST(TravelingWave, SmoothStateIsEvenAndRelabeled) {
  const auto s = make_smooth_tw(smooth_spec(), GridSpec(40, 0.25));
  const std::size_t n = s.U.size();
  EXPECT_DOUBLE_EQ(s.U[n / 2], 1.0);
  for (std::size_t k = 1; k < n / 2; ++k) EXPECT_NEAR(s.U[n / 2 + k], s.U[n / 2 - k], 1e-14);
  for (double I : invariants(s)) EXPECT_NEAR(I, 0.0, 1e-14);
}

TEST(Cuspon, GMatchesTanhSinhOracle) {
  const auto spec = cuspon_spec();
  const double top = spec.c / spec.gamma;
  boost::math::quadrature::tanh_sinh<double> ts;
  for (double u : {0.01, 0.05, 0.1, 0.15, 0.199}) {
    const double oracle = ts.integrate(
        [&](double z) { return 1.0 / std::sqrt(tw_F(spec, z)); }, u, top);
    EXPECT_NEAR(cuspon_g(spec, u), oracle, 1e-9 * std::max(1.0, oracle)) << u;
  }
  EXPECT_EQ(cuspon_g(spec, top), 0.0);
}

TEST(Cuspon, CrestAndEnergyDensity) {
  const auto spec = cuspon_spec();
  const auto c0 = cuspon_sample(spec, 0.0);
  EXPECT_DOUBLE_EQ(c0.U, 0.2);
  EXPECT_EQ(c0.q, 0.0);
  EXPECT_NEAR(c0.h, 0.16, 1e-10);
  const auto s = make_cuspon(spec, GridSpec(40, 0.1));
  const std::size_t n = s.U.size();
  EXPECT_DOUBLE_EQ(s.U[n / 2], 0.2);
  for (std::size_t k = 1; k < n / 2; ++k) {
    EXPECT_DOUBLE_EQ(s.U[n / 2 + k], s.U[n / 2 - k]);
    EXPECT_DOUBLE_EQ(s.w[n / 2 + k], -s.w[n / 2 - k]);
    EXPECT_NEAR(s.y(n / 2 + k), -s.y(n / 2 - k), 1e-12);
  }
  for (double I : invariants(s)) EXPECT_NEAR(I, 0.0, 1e-12);
}

TEST(Cuspon, BadBlendIsReported) {
  auto spec = cuspon_spec();
  spec.c = spec.M = 5.0;  // c/gamma = 1
  spec.blend_a = 0.6;
  spec.blend_b = 0.9;
  EXPECT_THROW(make_cuspon(spec, GridSpec(40, 0.05)), NonMonotoneConstruction);
  spec.blend_b = 1.5;
  EXPECT_THROW(make_cuspon(spec, GridSpec(40, 0.05)), InvalidArgument);
}

}  // namespace
}  // namespace hrod
