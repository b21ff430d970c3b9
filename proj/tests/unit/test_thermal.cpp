#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "mobilitylab/thermal.hpp"
#include "oracles.hpp"

namespace ml = mobilitylab;

namespace {
double shell_loss(double k, double r1, double r2, double dt) {
  return 4.0 * std::numbers::pi * k * r1 * r2 * dt / (r2 - r1);
}
}  // namespace

TEST(Thermal, ConductionExamples) {
  ml::ThermalSpec s;
  EXPECT_NEAR(ml::conduction_loss(s), 9.90, 0.005);
  EXPECT_NEAR(ml::conduction_loss(s), shell_loss(0.004, 0.1, 0.11, 179.0), 1e-12);
  s.outer_radius_r2 = 0.12;
  EXPECT_NEAR(ml::conduction_loss(s), 5.40, 0.005);
  s.outer_temp_t2 = s.inner_temp_t1;
  EXPECT_EQ(ml::conduction_loss(s), 0.0);
}

TEST(Thermal, HeaterExamples) {
  EXPECT_NEAR(ml::heater_power(5.40, 0.95), 5.684, 1e-3);
  EXPECT_EQ(ml::heater_power(3.3, 1.0), 3.3);
  EXPECT_EQ(ml::heater_power(0.0, 0.7), 0.0);
  EXPECT_THROW(ml::heater_power(1.0, 0.0), std::invalid_argument);
}

TEST(Thermal, ThicknessExample) {
  ml::ThermalSpec s;
  const double budget = ml::conduction_loss(s) / s.heater_efficiency;
  EXPECT_NEAR(ml::thickness_for_budget(budget, s), 0.010, 1e-12);
}

TEST(Thermal, RoundTripAndMonotone) {
  ml::ThermalSpec s;
  double prev = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 200; ++i) {
    const double budget = std::pow(10.0, std::log10(1.0) + (std::log10(50.0)) * i / 200.0);
    const double t = ml::thickness_for_budget(budget, s);
    EXPECT_GT(t, 0.0);
    EXPECT_LT(t, prev);
    prev = t;
    ml::ThermalSpec sized = s;
    sized.outer_radius_r2 = s.inner_radius_r1 + t;
    const double target = budget * s.heater_efficiency;
    EXPECT_NEAR(ml::conduction_loss(sized), target, 1e-9 * target);
  }
}

TEST(Thermal, BudgetBelowFloorHasNoSolution) {
  ml::ThermalSpec s;
  const double floor = ml::conduction_floor(s);
  EXPECT_NEAR(floor, 4.0 * std::numbers::pi * 0.004 * 0.1 * 179.0, 1e-12);
  EXPECT_THROW(ml::thickness_for_budget(0.5, s), std::invalid_argument);
  EXPECT_THROW(ml::thickness_for_budget(floor / s.heater_efficiency, s), std::invalid_argument);
  EXPECT_THROW(ml::thickness_for_budget(0.0, s), std::invalid_argument);
  EXPECT_THROW(ml::thickness_for_budget(-1.0, s), std::invalid_argument);
}

TEST(Thermal, LossDecreasesWithRadiusAndScalesLinearly) {
  ml::ThermalSpec s;
  double prev = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 100; ++i) {
    s.outer_radius_r2 = 0.1 + 0.001 * i;
    const double q = ml::conduction_loss(s);
    EXPECT_LT(q, prev);
    prev = q;
  }
  oracle::Gen gen(61);
  for (int i = 0; i < 100; ++i) {
    ml::ThermalSpec a;
    const double q0 = ml::conduction_loss(a);
    const double kx = gen.uniform(0.1, 10.0);
    ml::ThermalSpec b = a;
    b.conductivity_k *= kx;
    EXPECT_NEAR(ml::conduction_loss(b), kx * q0, 1e-12 * kx * q0);
    const double tx = gen.uniform(0.1, 2.0);
    ml::ThermalSpec c = a;
    c.outer_temp_t2 = a.inner_temp_t1 - tx * 179.0;
    EXPECT_NEAR(ml::conduction_loss(c), tx * q0, 1e-12 * tx * q0);
  }
}

TEST(Thermal, Mass) {
  ml::ThermalSpec s;
  EXPECT_NEAR(ml::insulation_mass(s), 2.63e-3, 5e-6);
  ml::ThermalSpec dense = s;
  dense.aerogel_density *= 2.0;
  EXPECT_NEAR(ml::insulation_mass(dense), 2.0 * ml::insulation_mass(s), 1e-15);
  s.outer_radius_r2 = s.inner_radius_r1;
  EXPECT_THROW(ml::insulation_mass(s), std::invalid_argument);
}

TEST(Thermal, InvalidSpecs) {
  ml::ThermalSpec s;
  s.conductivity_k = 0.0;
  EXPECT_THROW(ml::conduction_loss(s), std::invalid_argument);
  s = {};
  s.outer_temp_t2 = 10.0;
  EXPECT_THROW(ml::conduction_loss(s), std::invalid_argument);
  s = {};
  s.heater_efficiency = 1.2;
  EXPECT_THROW(ml::conduction_loss(s), std::invalid_argument);
}

TEST(Thermal, Sweep) {
  const auto rows = ml::thermal_sweep({}, {0.01, 0.02});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NEAR(rows[0].loss_w, 9.8973, 1e-3);
  EXPECT_NEAR(rows[1].loss_w, 5.40, 0.005);
  EXPECT_NEAR(rows[1].heater_w, rows[1].loss_w / 0.95, 1e-12);
}
