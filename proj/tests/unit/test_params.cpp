#include <gtest/gtest.h>

#include "mobilitylab/params.hpp"
#include "oracles.hpp"

namespace ml = mobilitylab;

namespace {

bool names_field(const ml::ConfigError& e, const std::string& field) {
  for (const auto& v : e.report()) {
    if (v.field == field) {
      return true;
    }
  }
  return false;
}

}  // namespace

TEST(Params, TitanPreset) {
  const auto t = ml::titan_defaults();
  EXPECT_DOUBLE_EQ(t.gravity, 1.352);
  EXPECT_DOUBLE_EQ(t.air_density, 5.4);
  EXPECT_DOUBLE_EQ(t.ambient_temperature, -179.0);
  EXPECT_FALSE(t == ml::earth_defaults());
}

TEST(Params, EarthPreset) {
  const auto e = ml::earth_defaults();
  EXPECT_DOUBLE_EQ(e.gravity, 9.81);
  EXPECT_DOUBLE_EQ(e.air_density, 1.225);
  EXPECT_DOUBLE_EQ(e.ambient_temperature, 15.0);
  EXPECT_LT(e.air_density, ml::titan_defaults().air_density);
  EXPECT_GT(e.gravity, ml::titan_defaults().gravity);
}

TEST(Params, PresetsValidate) {
  auto c = ml::default_scenario();
  EXPECT_TRUE(ml::validate(c).empty());
  c.environment = ml::earth_defaults();
  EXPECT_TRUE(ml::validate(c).empty());
}

TEST(Params, EmptyDocumentGivesHeadlineScenario) {
  const auto c = ml::load_config("");
  EXPECT_EQ(c, ml::default_scenario());
  EXPECT_EQ(c.num_agents, 2);
  EXPECT_DOUBLE_EQ(c.terrain.rolling_resistance_crr, 0.01);
  EXPECT_DOUBLE_EQ(c.terrain.slope_theta, 0.0);
}

TEST(Params, OverridesGiveEarth) {
  const auto c = ml::load_config("gravity = 9.81\nair_density = 1.225 # sea level\n");
  EXPECT_DOUBLE_EQ(c.environment.gravity, 9.81);
  EXPECT_DOUBLE_EQ(c.environment.air_density, 1.225);
}

TEST(Params, JsonDocument) {
  const auto c = ml::load_config(R"({"cobot_mass": 1.5, "num_agents": 4})");
  EXPECT_DOUBLE_EQ(c.vehicle.cobot_mass, 1.5);
  EXPECT_EQ(c.num_agents, 4);
}

TEST(Params, NegativeMassNamesField) {
  try {
    ml::load_config("cobot_mass = -1");
    FAIL() << "expected ConfigError";
  } catch (const ml::ConfigError& e) {
    EXPECT_EQ(e.kind(), ml::ConfigError::Kind::Validation);
    EXPECT_TRUE(names_field(e, "cobot_mass"));
    EXPECT_NE(std::string(e.what()).find("cobot_mass"), std::string::npos);
  }
}

TEST(Params, SingleViolations) {
  auto c = ml::default_scenario();
  c.vehicle.eta_propeller = 1.5;
  EXPECT_EQ(ml::validate(c).size(), 1u);
  c = ml::default_scenario();
  c.num_agents = 0;
  const auto report = ml::validate(c);
  ASSERT_EQ(report.size(), 1u);
  EXPECT_EQ(report[0].field, "num_agents");
}

TEST(Params, ParseErrors) {
  EXPECT_THROW(ml::load_config("gravity"), ml::ConfigError);
  EXPECT_THROW(ml::load_config("gravity = abc"), ml::ConfigError);
  EXPECT_THROW(ml::load_config("gravity = 1\ngravity = 2"), ml::ConfigError);
  EXPECT_THROW(ml::load_config("num_agents = 2.5"), ml::ConfigError);
  EXPECT_THROW(ml::load_config("{\"gravity\": \"x\"}"), ml::ConfigError);
  EXPECT_THROW(ml::load_config("{"), ml::ConfigError);
  try {
    ml::load_config("gravitee = 1");
    FAIL();
  } catch (const ml::ConfigError& e) {
    EXPECT_TRUE(names_field(e, "gravitee"));
  }
}

TEST(Params, NonFiniteRejected) {
  try {
    ml::load_config("air_density = nan\nslope_theta = inf");
    FAIL();
  } catch (const ml::ConfigError& e) {
    EXPECT_TRUE(names_field(e, "air_density"));
    EXPECT_TRUE(names_field(e, "slope_theta"));
  }
}

TEST(Params, SerializeRoundTripRandom) {
  oracle::Gen gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto c = ml::default_scenario();
    c.environment.gravity = gen.log_uniform(0.1, 30.0);
    c.environment.air_density = gen.log_uniform(0.01, 10.0);
    c.environment.ambient_temperature = gen.uniform(-273.0, 100.0);
    c.vehicle.cobot_mass = gen.log_uniform(0.01, 10.0);
    c.vehicle.shell_radius_l = gen.uniform(0.05, 1.0);
    c.vehicle.eta_motor = gen.uniform(0.01, 1.0);
    c.vehicle.battery_energy = gen.log_uniform(1e3, 1e7);
    c.terrain.rolling_resistance_crr = gen.uniform(0.0, 0.5);
    c.terrain.slope_theta = gen.uniform(-1.5, 1.5);
    c.num_agents = gen.integer(1, 50);
    const auto text = ml::serialize_config(c);
    EXPECT_EQ(ml::load_config(text), c) << text;
    EXPECT_EQ(ml::serialize_config(ml::load_config(text)), text);
  }
}

// Garbage documents must end in a ConfigError or a valid config, never a crash.
TEST(Params, ValidationIsTotal) {
  oracle::Gen gen(12);
  const std::string alphabet = "abc_=#{}\":, \n0123456789.-+eE";
  for (int trial = 0; trial < 2000; ++trial) {
    std::string doc;
    const int len = gen.integer(0, 40);
    for (int i = 0; i < len; ++i) {
      doc += alphabet[static_cast<std::size_t>(gen.integer(0, static_cast<int>(alphabet.size()) - 1))];
    }
    try {
      const auto c = ml::load_config(doc);
      EXPECT_TRUE(ml::validate(c).empty());
    } catch (const ml::ConfigError&) {
    }
  }
}
