#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "mobilitylab/control.hpp"
#include "mobilitylab/params.hpp"

namespace mobilitylab {

// Planar reduction of the docked Rollocopter rolling without slip about its
// cylinder axis. With traction F_t at the contact and rolling-resistance
// torque C_rr N l, the translation and rotation equations
//
//   m v'      = F_t - D - m g sin(theta)
//   J w'      = tau - F_t l - C_rr N l,        v = w l
//
// combine into a single equation in the roll rate:
//
//   (J + m l^2) w' = tau - C_rr N l - m g sin(theta) l - D(v, A(roll)) l
//
// The contact reaction moment is the F_t l term eliminated above.

struct SimState {
  double position_s = 0.0;       // [m] along the slope
  double speed_v = 0.0;          // [m/s]
  double roll_angle = 0.0;       // [rad] rolling; thrust tilt when flying
  double roll_rate_omega = 0.0;  // [rad/s]
  double energy_consumed = 0.0;  // [J]
  double time = 0.0;             // [s]
};

struct PlantOptions {
  std::optional<double> roll_inertia;  // [kg m^2], defaults to a solid cylinder
};

/// 1/2 m_total l^2.
double default_roll_inertia(const ScenarioConfig& config);

inline constexpr double kMaxStep = 0.01;        // [s]
inline constexpr double kStictionRate = 1e-6;   // [rad/s]

/// One RK4 step of the rolling plant under a constant roll torque.
/// Rolling resistance acts only while |w| > kStictionRate. Energy grows by the
/// electrical power of the pure-torque allocation at the step start times dt.
/// Throws std::invalid_argument unless dt is in (0, kMaxStep].
SimState step_rolling(const SimState& state, double torque_y, const ScenarioConfig& config,
                      double dt, const PlantOptions& plant = {});

/// As above with a time-varying torque evaluated at each RK4 stage.
SimState step_rolling(const SimState& state, const std::function<double(double)>& torque_y,
                      const ScenarioConfig& config, double dt, const PlantOptions& plant = {});

/// Point-mass flight along the slope at constant height for the whole flock:
///
///   m v' = T sin(tilt) - D(v, A(tilt)) - m g sin(theta)
///
/// `thrust` is per Cobot and must satisfy T cos(tilt) = m g cos(theta);
/// otherwise InfeasibleError is thrown. Energy counts every agent.
SimState step_flying(const SimState& state, double thrust, double tilt,
                     const ScenarioConfig& config, double dt);

struct TrajectorySample {
  SimState state;
  double power_w = 0.0;
  bool saturated = false;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;  // fixed output rate, last step included
  std::vector<double> step_power;         // [W] held over each integration step
  std::vector<bool> step_saturated;
  double dt = 0.0;
};

struct SimulationOptions {
  ControlGains gains;
  PlantOptions plant;
  double sample_period = 0.1;  // [s]; rounded to a whole number of steps
  SimState initial;
};

/// PI rate control -> pure-torque allocation (uniform desaturation) ->
/// rolling plant, ticked at dt for `duration` seconds.
Trajectory simulate_closed_loop(const ScenarioConfig& config,
                                const std::function<double(double)>& omega_des,
                                double duration, double dt,
                                const SimulationOptions& options = {});

}  // namespace mobilitylab
