#include <gtest/gtest.h>

#include "generators.hpp"
#include "gnplate/errors.hpp"
#include "gnplate/mms.hpp"

namespace gnplate {
namespace {

using testing::mat_a;

TEST(Manufactured, VanishesOnGhostLayerAndZeroAmplitude) {
  const Grid g(1.0, 2.0, 9, 11);
  const ManufacturedSolution sol(mat_a(), 1.0, 2.0, 0.0);
  EXPECT_EQ(sol.exact(g, 0.3).vector().norm(), 0.0);
  const Sources src = sol.sources(g);
  const Eigen::VectorXd F = source_vector(src, mat_a(), g, 0.7);
  EXPECT_EQ(F.norm(), 0.0);
}

TEST(Manufactured, InitialValues) {
  const Grid g(1.0, 1.0, 9, 9);
  const ManufacturedSolution sol(mat_a(), 1.0, 1.0);
  const State U = sol.exact(g, 0.0);
  EXPECT_NEAR(U.at(Component::w, 4, 4), 0.5, 1e-14);
  EXPECT_NEAR(U.at(Component::y, 4, 4), 2.0, 1e-14);
  EXPECT_NEAR(U.at(Component::v1, 4, 4), 1.0, 1e-14);
  EXPECT_NEAR(U.at(Component::z1, 4, 4), 0.0, 1e-14);
  EXPECT_NEAR(U.at(Component::theta, 4, 4), 0.0, 1e-14);
}

TEST(Mms, ZeroAmplitudeGivesZeroError) {
  MmsOptions o;
  o.grid_sizes = {8, 16};
  o.space_dt = 0.05;
  o.space_t_end = 0.1;
  o.time_grid = 8;
  o.dts = {0.1, 0.05, 0.025};
  o.time_t_end = 0.2;
  o.amplitude = 0.0;
  const MmsResult r = mms_verify(mat_a(), o);
  for (double e : r.space_errors) EXPECT_EQ(e, 0.0);
  for (double e : r.time_differences) EXPECT_EQ(e, 0.0);
}

TEST(Mms, RejectsTooFewLevels) {
  MmsOptions o;
  o.grid_sizes = {8};
  EXPECT_THROW(mms_verify(mat_a(), o), Error);
  o.grid_sizes = {8, 16};
  o.dts = {0.1, 0.05};
  EXPECT_THROW(mms_verify(mat_a(), o), Error);
}

TEST(Mms, QuickOrders) {
  MmsOptions o;
  o.grid_sizes = {12, 24};
  o.space_dt = 5e-3;
  o.space_t_end = 0.1;
  o.time_grid = 8;
  o.dts = {0.1, 0.05, 0.025};
  o.time_t_end = 0.5;
  const MmsResult r = mms_verify(mat_a(), o);
  EXPECT_GT(r.space_order, 1.6);
  EXPECT_LT(r.space_order, 2.4);
  EXPECT_GT(r.time_order, 1.8);
  EXPECT_LT(r.time_order, 2.2);
  EXPECT_LT(r.space_errors[1], r.space_errors[0]);
}

}  // namespace
}  // namespace gnplate
