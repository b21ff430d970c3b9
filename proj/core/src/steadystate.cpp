#include "mobilitylab/steadystate.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mobilitylab/aeropower.hpp"
#include "mobilitylab/control.hpp"

namespace mobilitylab {

namespace {

constexpr int kTrimIterations = 100;
constexpr double kTrimTolerance = 1e-12;  // [rad]

std::string fmt_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

}  // namespace

RollingAero default_rolling_aero(const VehicleParams& vehicle) {
  return {mean_rolling_area(vehicle), vehicle.drag_coefficient_cd};
}

RollingActuation rolling_actuation(const ScenarioConfig& config, double torque_y, double speed) {
  const auto& veh = config.vehicle;
  const auto mixer = mixer_matrix(veh.rotor_arm_length_a, veh.torque_constant_k_tau);

  ControlCommand cmd;
  cmd.torque_cmd = Vec3(0.0, torque_y * 2.0 / config.num_agents, 0.0);
  const auto rotors = pair_forces_to_rotor_thrusts(allocate(cmd, mixer));

  RollingActuation out;
  out.rotor_thrust.resize(4 * static_cast<std::size_t>(config.num_agents), 0.0);
  const double v_inf = std::abs(speed);
  for (int agent = 0; agent < config.num_agents; ++agent) {
    const std::size_t branch = agent % 2 == 0 ? 0 : 4;
    for (std::size_t r = 0; r < 4; ++r) {
      const double f = rotors[branch + r];
      out.rotor_thrust[4 * agent + r] = f;
      if (f <= 0.0) {
        continue;
      }
      out.peak_rotor_thrust = std::max(out.peak_rotor_thrust, f);
      const auto p = rotor_power_at(config.environment, veh, f, v_inf, 0.0);
      out.total_power += p.electrical_w;
      out.power_clamped = out.power_clamped || p.clamped;
    }
  }
  return out;
}

RollingSolution rolling_equilibrium(const ScenarioConfig& config, double v) {
  return rolling_equilibrium(config, v, default_rolling_aero(config.vehicle));
}

RollingSolution rolling_equilibrium(const ScenarioConfig& config, double v,
                                    const RollingAero& aero) {
  if (!(v >= 0.0)) {
    throw std::invalid_argument("rolling_equilibrium: speed must be >= 0");
  }
  const auto& env = config.environment;
  const auto& ter = config.terrain;
  const double mass = config.total_mass();
  const double theta = ter.slope_theta;

  RollingSolution sol;
  sol.speed_v = v;
  sol.normal_force = mass * env.gravity * std::cos(theta);
  sol.drag = drag_force(env, aero.drag_coefficient, aero.area, v);
  sol.rolling_resistance_force = ter.rolling_resistance_crr * sol.normal_force;
  const double grade = mass * env.gravity * std::sin(theta);
  sol.traction_force = sol.drag + grade + sol.rolling_resistance_force;
  sol.required_torque = sol.traction_force * config.vehicle.shell_radius_l;
  sol.force_residual = sol.traction_force - sol.drag - grade - sol.rolling_resistance_force;

  auto act = rolling_actuation(config, sol.required_torque, v);
  if (act.peak_rotor_thrust > config.vehicle.max_rotor_thrust) {
    throw InfeasibleError("rolling: rotor thrust " + fmt_num(act.peak_rotor_thrust) +
                          " N exceeds limit " + fmt_num(config.vehicle.max_rotor_thrust) +
                          " N (C_rr=" + fmt_num(ter.rolling_resistance_crr) +
                          ", theta=" + fmt_num(theta) + " rad, v=" + fmt_num(v) + " m/s)");
  }
  sol.per_rotor_thrust = std::move(act.rotor_thrust);
  sol.total_electrical_power = act.total_power;
  sol.power_clamped = act.power_clamped;
  return sol;
}

FlyingSolution flying_equilibrium(const ScenarioConfig& config, double v) {
  if (!(v >= 0.0)) {
    throw std::invalid_argument("flying_equilibrium: speed must be >= 0");
  }
  const auto& env = config.environment;
  const auto& veh = config.vehicle;
  const double theta = config.terrain.slope_theta;
  const double weight = veh.cobot_mass * env.gravity;
  const double along_weight = weight * std::sin(theta);
  const double normal_weight = weight * std::cos(theta);

  auto drag_at = [&](double tilt) {
    return drag_force(env, veh.drag_coefficient_cd,
                      projected_area(veh, tilt, MobilityMode::Flying), v);
  };

  FlyingSolution sol;
  sol.speed_v = v;
  double tilt = 0.0;
  bool converged = false;
  for (int i = 1; i <= kTrimIterations; ++i) {
    const double next = std::atan2(drag_at(tilt) + along_weight, normal_weight);
    const double step = std::abs(next - tilt);
    tilt = next;
    sol.iterations = i;
    if (step <= kTrimTolerance) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw SolverError("flying_equilibrium: tilt iteration did not converge at v=" + fmt_num(v));
  }

  sol.tilt_alpha = tilt;
  sol.drag = drag_at(tilt);
  sol.total_thrust = normal_weight / std::cos(tilt);
  sol.per_rotor_thrust = sol.total_thrust / 4.0;
  sol.residual_along_track = sol.total_thrust * std::sin(tilt) - sol.drag - along_weight;
  sol.residual_normal = sol.total_thrust * std::cos(tilt) - normal_weight;

  if (sol.per_rotor_thrust > veh.max_rotor_thrust) {
    throw InfeasibleError("flying: rotor thrust " + fmt_num(sol.per_rotor_thrust) +
                          " N exceeds limit " + fmt_num(veh.max_rotor_thrust) + " N (v=" +
                          fmt_num(v) + " m/s)");
  }

  const auto rotor = rotor_power_at(env, veh, sol.per_rotor_thrust, v, -tilt);
  sol.per_cobot_power = 4.0 * rotor.electrical_w;
  sol.total_electrical_power = config.num_agents * sol.per_cobot_power;
  sol.power_clamped = rotor.clamped;
  return sol;
}

}  // namespace mobilitylab
