#include <cmath>

#include <gtest/gtest.h>

#include "mobilitylab/errors.hpp"
#include "mobilitylab/rangeopt.hpp"
#include "oracles.hpp"

namespace ml = mobilitylab;
using ml::MobilityMode;

TEST(RangeAt, Examples) {
  EXPECT_NEAR(ml::range_at(10.0, 1.7, 870e3), 147.9, 1e-9);
  EXPECT_EQ(ml::range_at(10.0, 0.0, 870e3), 0.0);
  EXPECT_NEAR(ml::range_at(5.0, 1.7, 870e3), 2.0 * ml::range_at(10.0, 1.7, 870e3), 1e-12);
  EXPECT_THROW(ml::range_at(0.0, 1.0, 870e3), std::invalid_argument);
}

TEST(Linspace, Endpoints) {
  const auto g = ml::linspace(0.01, 2.0, 200);
  ASSERT_EQ(g.size(), 200u);
  EXPECT_EQ(g.front(), 0.01);
  EXPECT_EQ(g.back(), 2.0);
}

TEST(RangeSweep, RollingOptimumMatchesOracleScan) {
  const auto config = ml::default_scenario();
  const auto grid = ml::default_velocity_grid(MobilityMode::Rolling);
  const auto curve = ml::range_sweep(config, MobilityMode::Rolling, grid);
  std::size_t best = 0;
  double best_km = -1.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    oracle::RollingCase rc;
    rc.v = grid[i];
    const double km = grid[i] * 2.0 * 870e3 / oracle::rolling_power_pair(rc) / 1000.0;
    EXPECT_NEAR(curve.range_km[i], km, 1e-9 * km);
    if (km > best_km) {
      best_km = km;
      best = i;
    }
  }
  EXPECT_EQ(curve.optimum.grid_index, best);
  EXPECT_NEAR(curve.optimum.range_km, best_km, 1e-9 * best_km);
}

TEST(RangeSweep, FlyingOptimumMatchesOracleScan) {
  const auto config = ml::default_scenario();
  const auto grid = ml::default_velocity_grid(MobilityMode::Flying);
  const auto curve = ml::range_sweep(config, MobilityMode::Flying, grid);
  std::size_t best = 0;
  double best_km = -1.0;
  for (std::size_t i = 0; i < grid.size(); i += 1) {
    const double p = 2.0 * oracle::flying_trim(grid[i]).power;
    const double km = grid[i] * 2.0 * 870e3 / p / 1000.0;
    EXPECT_NEAR(curve.range_km[i], km, 1e-7 * km);
    if (km > best_km) {
      best_km = km;
      best = i;
    }
  }
  EXPECT_EQ(curve.optimum.grid_index, best);
}

TEST(RangeSweep, OptimumDominatesFeasiblePoints) {
  oracle::Gen gen(51);
  for (int trial = 0; trial < 20; ++trial) {
    auto c = ml::default_scenario();
    c.terrain.rolling_resistance_crr = gen.uniform(0.0, 0.2);
    c.terrain.slope_theta = gen.uniform(-0.01, 0.04);
    for (auto mode : {MobilityMode::Rolling, MobilityMode::Flying}) {
      const auto curve = ml::range_sweep(c, mode, ml::default_velocity_grid(mode));
      for (std::size_t i = 0; i < curve.velocity.size(); ++i) {
        if (curve.feasible[i]) {
          EXPECT_GE(curve.optimum.range_km, curve.range_km[i]);
        }
      }
    }
  }
}

TEST(RangeSweep, DragOnlyRollingRangeFallsWithSpeed) {
  auto c = ml::default_scenario();
  c.terrain.rolling_resistance_crr = 0.0;
  const auto curve =
      ml::range_sweep(c, MobilityMode::Rolling, ml::default_velocity_grid(MobilityMode::Rolling));
  for (std::size_t i = 1; i < curve.range_km.size(); ++i) {
    EXPECT_LT(curve.range_km[i], curve.range_km[i - 1]);
  }
  EXPECT_EQ(curve.optimum.grid_index, 0u);
}

TEST(RangeSweep, RollingDoublesFlyingRange) {
  const auto c = ml::default_scenario();
  const auto roll =
      ml::range_sweep(c, MobilityMode::Rolling, ml::default_velocity_grid(MobilityMode::Rolling));
  const auto fly =
      ml::range_sweep(c, MobilityMode::Flying, ml::default_velocity_grid(MobilityMode::Flying));
  EXPECT_GE(roll.optimum.range_km, 1.8 * fly.optimum.range_km);
}

TEST(RangeSweep, HotelLoadAndRefinement) {
  const auto c = ml::default_scenario();
  const auto grid = ml::default_velocity_grid(MobilityMode::Flying);
  const auto plain = ml::range_sweep(c, MobilityMode::Flying, grid);
  ml::SweepOptions hotel;
  hotel.hotel_load_w = 1.0;
  const auto loaded = ml::range_sweep(c, MobilityMode::Flying, grid, hotel);
  EXPECT_LT(loaded.optimum.range_km, plain.optimum.range_km);
  EXPECT_NEAR(loaded.power[10], plain.power[10] + 2.0, 1e-12);
  EXPECT_GT(loaded.optimum.velocity, plain.optimum.velocity);

  ml::SweepOptions refine;
  refine.refine = true;
  const auto refined = ml::range_sweep(c, MobilityMode::Flying, grid, refine);
  EXPECT_GE(refined.optimum.range_km, plain.optimum.range_km);
  EXPECT_LE(std::abs(refined.optimum.velocity - plain.optimum.velocity), grid[1] - grid[0]);
}

TEST(RangeSweep, ParallelMatchesSequential) {
  const auto c = ml::default_scenario();
  for (auto mode : {MobilityMode::Rolling, MobilityMode::Flying}) {
    ml::SweepOptions seq;
    ml::SweepOptions par;
    par.execution = ml::Execution::Parallel;
    const auto a = ml::range_sweep(c, mode, ml::default_velocity_grid(mode), seq);
    const auto b = ml::range_sweep(c, mode, ml::default_velocity_grid(mode), par);
    EXPECT_EQ(a.power, b.power);
    EXPECT_EQ(a.range_km, b.range_km);
    EXPECT_EQ(a.optimum.grid_index, b.optimum.grid_index);
  }
}

TEST(RangeSweep, Errors) {
  auto c = ml::default_scenario();
  EXPECT_THROW(ml::range_sweep(c, MobilityMode::Rolling, {}), std::invalid_argument);
  EXPECT_THROW(ml::range_sweep(c, MobilityMode::Rolling, {0.2, 0.1}), std::invalid_argument);
  EXPECT_THROW(ml::range_sweep(c, MobilityMode::Rolling, {0.0, 0.1}), std::invalid_argument);
  c.vehicle.max_rotor_thrust = 1e-4;
  EXPECT_THROW(ml::range_sweep(c, MobilityMode::Rolling, {0.1, 0.2}), ml::InfeasibleError);
  EXPECT_THROW(ml::range_sweep(c, MobilityMode::Flying, {0.1, 0.2}), ml::InfeasibleError);
}

class TradeoffTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    ml::TradeoffOptions o;
    o.resolution = 20;
    grid_ = new ml::TradeoffGrid(ml::tradeoff_grid(ml::default_scenario(), o));
  }
  static void TearDownTestSuite() { delete grid_; }
  static ml::TradeoffGrid* grid_;
};

ml::TradeoffGrid* TradeoffTest::grid_ = nullptr;

TEST_F(TradeoffTest, CornerSigns) {
  const auto& g = *grid_;
  EXPECT_EQ(g.crr.front(), 0.01);
  EXPECT_EQ(g.crr.back(), 0.2);
  EXPECT_EQ(g.theta_deg.back(), 2.0);
  // theta = 0 is not a grid node at resolution 20, so check it directly.
  const auto c = ml::default_scenario();
  const double roll = ml::range_sweep(c, MobilityMode::Rolling,
                                      ml::default_velocity_grid(MobilityMode::Rolling))
                          .optimum.range_km;
  const double fly = ml::range_sweep(c, MobilityMode::Flying,
                                     ml::default_velocity_grid(MobilityMode::Flying))
                         .optimum.range_km;
  EXPECT_GT(roll - fly, 0.0);
  EXPECT_LT(g.delta_km[g.index(g.crr.size() - 1, g.theta_deg.size() - 1)], 0.0);
}

TEST_F(TradeoffTest, DeltaNonIncreasingAlongBothAxes) {
  const auto& g = *grid_;
  for (std::size_t i = 0; i < g.crr.size(); ++i) {
    for (std::size_t j = 0; j < g.theta_deg.size(); ++j) {
      ASSERT_TRUE(g.feasible[g.index(i, j)]);
      if (i + 1 < g.crr.size()) {
        EXPECT_LE(g.delta_km[g.index(i + 1, j)], g.delta_km[g.index(i, j)]);
      }
      if (j + 1 < g.theta_deg.size()) {
        EXPECT_LE(g.delta_km[g.index(i, j + 1)], g.delta_km[g.index(i, j)]);
      }
    }
  }
}

TEST_F(TradeoffTest, FlyingIgnoresGroundResistance) {
  const auto& g = *grid_;
  for (std::size_t j = 0; j < g.theta_deg.size(); ++j) {
    for (std::size_t i = 1; i < g.crr.size(); ++i) {
      EXPECT_EQ(g.flying_km[g.index(i, j)], g.flying_km[g.index(0, j)]);
    }
  }
}

TEST_F(TradeoffTest, ParallelMatchesSequential) {
  ml::TradeoffOptions o;
  o.resolution = 20;
  o.execution = ml::Execution::Parallel;
  const auto par = ml::tradeoff_grid(ml::default_scenario(), o);
  EXPECT_EQ(par.delta_km, grid_->delta_km);
  EXPECT_EQ(par.flying_km, grid_->flying_km);
}

TEST(Scaling, PlatonicTable) {
  EXPECT_NEAR(ml::pseudo_platonic_radius(4, 0.4), 0.4 * std::sqrt(6.0) / 4.0, 1e-15);
  EXPECT_NEAR(ml::pseudo_platonic_radius(6, 0.4), 0.4 * std::sqrt(3.0) / 2.0, 1e-15);
  EXPECT_NEAR(ml::pseudo_platonic_radius(8, 0.4), 0.4 * std::sqrt(2.0) / 2.0, 1e-15);
  EXPECT_NEAR(ml::pseudo_platonic_radius(12, 0.4), 0.4 * 1.4012585384, 1e-9);
  EXPECT_NEAR(ml::pseudo_platonic_radius(10, 0.4),
              0.5 * (ml::pseudo_platonic_radius(8, 0.4) + ml::pseudo_platonic_radius(12, 0.4)),
              1e-15);
  EXPECT_EQ(ml::pseudo_platonic_radius(1, 0.4), ml::pseudo_platonic_radius(4, 0.4));
  EXPECT_EQ(ml::pseudo_platonic_radius(20, 0.4), ml::pseudo_platonic_radius(12, 0.4));
}

TEST(Scaling, PolygonRadius) {
  EXPECT_EQ(ml::polygon_radius(1, 0.4), 0.2);
  EXPECT_EQ(ml::polygon_radius(2, 0.4), 0.2);
  EXPECT_NEAR(ml::polygon_radius(6, 0.4), 0.4, 1e-15);
  EXPECT_NEAR(ml::polygon_radius(4, 0.4), 0.4 / std::sqrt(2.0), 1e-15);
}

TEST(Scaling, OrderingAndFlyingIndependence) {
  const auto c = ml::default_scenario();
  const auto curve = ml::scaling_bounds(c);
  ASSERT_EQ(curve.n.size(), 12u);
  for (std::size_t k = 0; k < curve.n.size(); ++k) {
    EXPECT_GE(curve.ratio_upper[k], curve.ratio_lower[k]) << curve.n[k];
    if (curve.n[k] >= 2) {
      EXPECT_GT(curve.ratio_lower[k], 1.0);
    }
  }
  EXPECT_GT(curve.ratio_lower[1], curve.ratio_lower[0]);
  EXPECT_GT(curve.ratio_upper[1], curve.ratio_upper[0]);

  for (int n : {1, 2, 5, 12}) {
    auto cn = c;
    cn.num_agents = n;
    const double km = ml::range_sweep(cn, MobilityMode::Flying,
                                      ml::default_velocity_grid(MobilityMode::Flying))
                          .optimum.range_km;
    EXPECT_NEAR(km, curve.flying_km, 1e-9 * km);
  }
}

TEST(Scaling, ParallelMatchesSequentialAndRejectsBadRange) {
  const auto c = ml::default_scenario();
  ml::ScalingOptions o;
  o.execution = ml::Execution::Parallel;
  const auto a = ml::scaling_bounds(c);
  const auto b = ml::scaling_bounds(c, o);
  EXPECT_EQ(a.ratio_lower, b.ratio_lower);
  EXPECT_EQ(a.ratio_upper, b.ratio_upper);
  o.n_min = 5;
  o.n_max = 3;
  EXPECT_THROW(ml::scaling_bounds(c, o), std::invalid_argument);
}
