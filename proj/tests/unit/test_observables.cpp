#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hrod/hrod.hpp"
#include "test_support.hpp"

namespace hrod {
namespace {

TEST(Graph, OnePointPerCellAndConcentrationFlag) {
  auto s = LagrangianState::zero(GridSpec(2, 0.5), {1.0});
  s.U = {0.1, 0.2, 0.3, 0.4};
  s.v[1] = -1.0;
  const auto g = to_graph(s);
  ASSERT_EQ(g.points.size(), 4u);
  EXPECT_EQ(g.points[2].x, 0.0);
  EXPECT_EQ(g.points[3].u, 0.4);
  EXPECT_TRUE(g.points[1].concentrated);
  EXPECT_FALSE(g.points[0].concentrated);
}

TEST(Density, EnergyAndParticleDensities) {
  auto s = LagrangianState::zero(GridSpec(1, 1.0), {1.0});
  s.v = {1.0, -1.0};  // q = 2, 0
  s.h = {3.0, 1.0};
  const auto e = energy_density_points(s);
  EXPECT_DOUBLE_EQ(*e[0].value, 1.5);
  EXPECT_TRUE(e[1].concentrated());
  const auto p = particle_density_points(s);
  EXPECT_DOUBLE_EQ(*p[0].value, 0.5);
  EXPECT_TRUE(p[1].concentrated());
  EXPECT_DOUBLE_EQ(max_energy_density(s), 1.5);
  EXPECT_DOUBLE_EQ(total_energy(s), 4.0);
}

TEST(Density, AllConcentratedGivesZeroMaximum) {
  auto s = LagrangianState::zero(GridSpec(1, 1.0), {1.0});
  s.v = {-1.0, -1.0};
  s.h = {3.0, 1.0};
  EXPECT_EQ(max_energy_density(s), 0.0);
}

TEST(Errors, SupGraphErrorIsAPseudometric) {
  std::mt19937_64 rng(44);
  const auto a = testing::random_admissible_state(rng, 8, 0.25);
  const auto b = testing::random_admissible_state(rng, 8, 0.25);
  const auto c = testing::random_admissible_state(rng, 8, 0.25);
  EXPECT_EQ(sup_graph_error(a, a), 0.0);
  EXPECT_EQ(sup_graph_error(a, b), sup_graph_error(b, a));
  EXPECT_LE(sup_graph_error(a, c), sup_graph_error(a, b) + sup_graph_error(b, c) + 1e-15);
  auto d = a;
  d.h[0] += 1.0;  // invisible to the graph
  EXPECT_EQ(sup_graph_error(a, d), 0.0);
  EXPECT_THROW(sup_graph_error(a, LagrangianState::zero(GridSpec(8, 0.5), {1.0})), GridMismatch);
}

TEST(Errors, NearestMatchOnRefinedGrid) {
  const auto coarse = make_peakon(1.0, 0.0, GridSpec::from_radius(10.0, 0.2));
  const auto fine = make_peakon(1.0, 0.0, GridSpec::from_radius(10.0, 0.1));
  EXPECT_LT(sup_graph_error_nearest(coarse, fine), 0.05);
  EXPECT_EQ(sup_graph_error_nearest(coarse, coarse), 0.0);
}

TEST(Errors, ExactPeakonAtStart) {
  const auto s = relabeled_from_profile(peakon_profile(1.0, 0.0), GridSpec(40, 0.25), {1.0});
  EXPECT_LE(exact_peakon_error(s, 0.0, 1.0, 0.0), 1e-15);
  EXPECT_GT(exact_peakon_error(s, 1.0, 1.0, 0.0), 0.5);
}

TEST(Order, RecoversPowerLaws) {
  std::vector<ConvergencePoint> quad, root;
  for (double h : {0.1, 0.05, 0.025, 0.0125}) {
    quad.push_back({h, 3.0 * h * h});
    root.push_back({h, std::sqrt(h)});
  }
  EXPECT_NEAR(convergence_order(quad), 2.0, 1e-12);
  EXPECT_NEAR(convergence_order(root), 0.5, 1e-12);
}

TEST(Order, DegenerateInputs) {
  const std::vector<ConvergencePoint> two{{0.1, 1.0}, {0.05, 0.5}};
  EXPECT_THROW(convergence_order(two), DegenerateFit);
  const std::vector<ConvergencePoint> zero{{0.1, 1.0}, {0.05, 0.0}, {0.025, 0.1}};
  EXPECT_THROW(convergence_order(zero), DegenerateFit);
  const std::vector<ConvergencePoint> same{{0.1, 1.0}, {0.1, 0.5}, {0.1, 0.1}};
  EXPECT_THROW(convergence_order(same), DegenerateFit);
}

TEST(Recorder, TracksDriftAndStageMinima) {
  DiagnosticsRecorder rec;
  auto obs = rec.observer();
  auto s = make_peakon(1.0, 0.0, GridSpec::from_radius(8.0, 0.2));
  obs(0.0, s, StepReport{});
  StepReport r;
  r.min_q = -0.25;
  r.fp_iterations = {3, 7};
  auto t = s;
  t.h[5] += 0.5;
  obs(1.0, t, r);
  ASSERT_EQ(rec.rows().size(), 2u);
  EXPECT_EQ(rec.rows()[0].max_inv_drift, 0.0);
  EXPECT_NEAR(rec.rows()[1].max_inv_drift, 0.5 * t.q(5), 1e-15);
  EXPECT_EQ(rec.rows()[1].fp_iters_max, 7);
  EXPECT_EQ(rec.rows()[1].min_q, -0.25);
  EXPECT_EQ(rec.min_q(), -0.25);
  EXPECT_NEAR(rec.max_inv_drift(), 0.5 * t.q(5), 1e-15);
}

}  // namespace
}  // namespace hrod
