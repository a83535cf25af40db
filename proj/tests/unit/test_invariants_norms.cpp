#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hrod/hrod.hpp"
#include "test_support.hpp"

namespace hrod {
namespace {

using testing::random_admissible_state;

TEST(Invariants, RelabeledCellsAreZero) {
  auto s = LagrangianState::zero(GridSpec(3, 0.5), {1.0});
  for (std::size_t k = 0; k < s.U.size(); ++k) {
    s.U[k] = 0.1 * static_cast<double>(k);
    s.w[k] = -0.2 * static_cast<double>(k);
    s.h[k] = s.U[k] * s.U[k] + s.w[k] * s.w[k];
  }
  for (double I : invariants(s)) EXPECT_NEAR(I, 0.0, 1e-16);
}

TEST(Invariants, CollapsedCellKeepsSlopeSquared) {
  auto s = LagrangianState::zero(GridSpec(1, 1.0), {1.0});
  s.v = {-1.0, 0.0};
  s.U = {3.0, 0.0};
  s.w = {0.5, 0.0};
  s.h = {7.0, 0.0};
  EXPECT_DOUBLE_EQ(invariants(s)[0], 0.25);
}

TEST(Admissibility, CleanStatePasses) {
  std::mt19937_64 rng(2);
  const auto s = random_admissible_state(rng, 8, 0.2);
  EXPECT_TRUE(check_admissible(s, 0.1).ok());
}

TEST(Admissibility, NegativeQReported) {
  auto s = LagrangianState::zero(GridSpec(4, 0.5), {1.0});
  s.v[3] = -1.1;  // q = -0.1
  s.h[3] = 2.0;
  const auto r = check_admissible(s, 0.5);
  ASSERT_EQ(r.count(ViolationKind::NegativeQ), 1u);
  for (const auto& v : r.violations)
    if (v.kind == ViolationKind::NegativeQ) EXPECT_EQ(v.index, 3u);
}

TEST(Admissibility, EmptyCellViolatesFloor) {
  auto s = LagrangianState::zero(GridSpec(4, 0.5), {1.0});
  s.v[2] = -1.0;  // q = h = 0
  const auto r = check_admissible(s, 0.5);
  EXPECT_EQ(r.count(ViolationKind::Floor), 1u);
  EXPECT_EQ(r.count(ViolationKind::NegativeQ), 0u);
}

TEST(Admissibility, InvariantViolationReported) {
  auto s = LagrangianState::zero(GridSpec(2, 0.5), {1.0});
  s.U[1] = 1.0;  // U^2 q^2 = 1 > q h = 0
  EXPECT_EQ(check_admissible(s, 0.5).count(ViolationKind::Invariant), 1u);
}

TEST(Norm, DistanceToSelfIsZero) {
  std::mt19937_64 rng(1);
  const auto s = random_admissible_state(rng, 16, 0.1);
  EXPECT_EQ(distance_f(s, s), 0.0);
}

TEST(Norm, ConstantVelocityShift) {
  std::mt19937_64 rng(6);
  const auto a = random_admissible_state(rng, 20, 0.05);
  auto b = a;
  for (auto& u : b.U) u += 1.0;
  const double expected = 1.0 + std::sqrt(0.05 * 40.0);
  EXPECT_NEAR(distance_f(a, b), expected, 1e-12);
}

TEST(Norm, PositiveHomogeneity) {
  std::mt19937_64 rng(13);
  const auto a = random_admissible_state(rng, 10, 0.2);
  const auto zero = LagrangianState::zero(a.grid, a.params);
  auto scaled = a;
  for (auto m : FieldSet::kMembers)
    for (auto& x : scaled.*m) x *= 3.5;
  scaled.zeta_minus *= 3.5;
  scaled.zeta_plus *= 3.5;
  scaled.H_plus *= 3.5;
  EXPECT_NEAR(distance_f(zero, scaled), 3.5 * distance_f(zero, a), 1e-12 * norm_f(scaled));
}

TEST(Norm, TriangleInequality) {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 20; ++rep) {
    const auto a = random_admissible_state(rng, 6, 0.3);
    const auto b = random_admissible_state(rng, 6, 0.3);
    const auto c = random_admissible_state(rng, 6, 0.3);
    EXPECT_LE(distance_f(a, c), distance_f(a, b) + distance_f(b, c) + 1e-12);
  }
}

TEST(Norm, BoundaryConstantsCount) {
  auto a = LagrangianState::zero(GridSpec(2, 0.5), {1.0});
  auto b = a;
  b.zeta_minus = 0.25;
  b.H_plus = -0.5;
  EXPECT_DOUBLE_EQ(distance_f(a, b), 0.75);
}

TEST(Norm, GridMismatchThrows) {
  const auto a = LagrangianState::zero(GridSpec(2, 0.5), {1.0});
  const auto b = LagrangianState::zero(GridSpec(2, 0.25), {1.0});
  EXPECT_THROW(distance_f(a, b), GridMismatch);
}

}  // namespace
}  // namespace hrod
