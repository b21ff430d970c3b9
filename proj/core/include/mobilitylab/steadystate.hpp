#pragma once

#include <vector>

#include "mobilitylab/params.hpp"

namespace mobilitylab {

/// Drag model of the rolling shell: reference area and coefficient.
struct RollingAero {
  double area = 0.0;               // [m^2]
  double drag_coefficient = 0.0;
};

/// Revolution-averaged cylinder area with the vehicle's Cd.
RollingAero default_rolling_aero(const VehicleParams& vehicle);

/// Rotor thrusts and electrical power needed to hold a pure roll torque.
///
/// The torque is shared evenly across the docked Cobots and allocated through
/// the two-Cobot mixer (zero net thrust). Even-indexed Cobots take the
/// positive-branch rotors, odd-indexed ones the negative branch, so two docked
/// Cobots reproduce the eight-rotor mixer exactly.
///
/// Every rotor sees the translational speed as an edgewise freestream
/// (alpha = 0); the tangential speed of the rotor about the roll axis is
/// ignored.
struct RollingActuation {
  std::vector<double> rotor_thrust;  // 4 * num_agents entries [N]
  double peak_rotor_thrust = 0.0;    // [N]
  double total_power = 0.0;          // [W], all agents
  bool power_clamped = false;
};

RollingActuation rolling_actuation(const ScenarioConfig& config, double torque_y, double speed);

struct RollingSolution {
  double speed_v = 0.0;                   // [m/s]
  double required_torque = 0.0;           // [N m] about the roll axis
  std::vector<double> per_rotor_thrust;   // [N], 4 per agent
  double normal_force = 0.0;              // [N]
  double drag = 0.0;                      // [N]
  double rolling_resistance_force = 0.0;  // [N] C_rr N
  double traction_force = 0.0;            // [N] ground force driving the shell
  double total_electrical_power = 0.0;    // [W], all agents
  bool power_clamped = false;

  /// traction - drag - m g sin(theta) - C_rr N; zero up to rounding.
  double force_residual = 0.0;
};

/// Steady no-slip rolling at speed v with pure rotor torque (zero net thrust):
///
///   N   = m g cos(theta)
///   F_t = D(v) + m g sin(theta) + C_rr N
///   tau = F_t l
///
/// where m = num_agents * cobot_mass. Throws InfeasibleError when a rotor
/// would exceed max_rotor_thrust and std::invalid_argument for v < 0.
RollingSolution rolling_equilibrium(const ScenarioConfig& config, double v);
RollingSolution rolling_equilibrium(const ScenarioConfig& config, double v,
                                    const RollingAero& aero);

struct FlyingSolution {
  double speed_v = 0.0;                  // [m/s]
  double tilt_alpha = 0.0;               // [rad] thrust tilt into the direction of travel
  double total_thrust = 0.0;             // [N] one Cobot
  double per_rotor_thrust = 0.0;         // [N]
  double drag = 0.0;                     // [N] one Cobot
  double per_cobot_power = 0.0;          // [W]
  double total_electrical_power = 0.0;   // [W], all agents
  bool power_clamped = false;
  int iterations = 0;

  double residual_along_track = 0.0;  // T sin(a) - D - m g sin(theta)
  double residual_normal = 0.0;       // T cos(a) - m g cos(theta)
};

/// Trim for each Cobot flying at constant height above the slope:
///
///   T sin(a) = D(v, a) + m g sin(theta)
///   T cos(a) = m g cos(theta)
///
/// with a measured from the slope normal. The projected area depends on a,
/// so a is found by fixed-point iteration (cap 100). The rotors see v as
/// freestream at angle of attack -a.
///
/// Throws InfeasibleError if T/4 exceeds max_rotor_thrust and SolverError if
/// the iteration does not converge.
FlyingSolution flying_equilibrium(const ScenarioConfig& config, double v);

}  // namespace mobilitylab
