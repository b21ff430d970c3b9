#pragma once

#include <map>
#include <string>
#include <string_view>

#include "mobilitylab/errors.hpp"

namespace mobilitylab {

// All quantities are SI. Temperatures are degrees Celsius.

struct EnvironmentParams {
  double gravity = 1.352;              // [m/s^2]
  double air_density = 5.4;            // [kg/m^3]
  double ambient_temperature = -179.0; // [degC]

  bool operator==(const EnvironmentParams&) const = default;
};

struct VehicleParams {
  double cobot_mass = 0.8;              // [kg] one Cobot
  double shell_radius_l = 0.2;          // [m] cylinder radius when docked
  double shell_width_w = 0.4;           // [m] cylinder width
  double body_height_h_rolling = 0.16;  // [m] rotor to opposite rotor
  double body_height_h_flying = 0.08;   // [m] rotor to base
  double drag_coefficient_cd = 2.1;
  double rotor_disk_radius = 0.0762;    // [m] 6-inch propeller
  double rotor_arm_length_a = 0.14;     // [m] rotor hub to centre of mass
  double thrust_constant_k_t = 2.0e-6;  // [N s^2] f = k_t n^2
  double torque_constant_k_tau = 0.016; // [m] tau_i = k_tau f_i
  double eta_propeller = 0.6;
  double eta_motor = 0.85;
  double eta_controller = 0.95;
  double battery_energy = 870.0e3;      // [J] per Cobot
  double max_rotor_thrust = 8.0;        // [N] per rotor

  double efficiency() const { return eta_propeller * eta_motor * eta_controller; }
  double rotor_disk_area() const;

  bool operator==(const VehicleParams&) const = default;
};

struct TerrainParams {
  double rolling_resistance_crr = 0.01;
  double slope_theta = 0.0;  // [rad], positive uphill

  bool operator==(const TerrainParams&) const = default;
};

struct ScenarioConfig {
  EnvironmentParams environment;
  VehicleParams vehicle;
  TerrainParams terrain;
  int num_agents = 2;

  double total_mass() const { return num_agents * vehicle.cobot_mass; }
  double total_energy() const { return num_agents * vehicle.battery_energy; }

  bool operator==(const ScenarioConfig&) const = default;
};

EnvironmentParams titan_defaults();
EnvironmentParams earth_defaults();
VehicleParams cobot_defaults();

/// Titan, two docked Cobots, consolidated soil, flat ground.
ScenarioConfig default_scenario();

/// Empty report iff every invariant holds. Never throws; non-finite values
/// are reported like any other violation.
ValidationReport validate(const ScenarioConfig& config);

/// Raw key/value pairs as they appear in a configuration document.
using ConfigEntries = std::map<std::string, std::string, std::less<>>;

/// Parses `key = value` text or a flat JSON object into raw entries.
/// Throws ConfigError(Parse) on malformed input or duplicate keys.
ConfigEntries parse_config_entries(std::string_view text);

/// Builds a validated scenario from raw entries on top of `base`.
/// Unknown keys and invariant violations throw ConfigError(Validation).
ScenarioConfig build_config(const ConfigEntries& entries,
                            const ScenarioConfig& base = default_scenario());

/// parse_config_entries + build_config over the default scenario.
ScenarioConfig load_config(std::string_view text);

/// Emits the `key = value` form; every double is printed round-trippable.
std::string serialize_config(const ScenarioConfig& config);

}  // namespace mobilitylab
