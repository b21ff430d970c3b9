#include "mobilitylab/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include <boost/numeric/odeint/stepper/runge_kutta4.hpp>

#include "mobilitylab/aeropower.hpp"
#include "mobilitylab/errors.hpp"
#include "mobilitylab/steadystate.hpp"

namespace mobilitylab {

namespace {

using RollingVec = std::array<double, 3>;  // position, roll angle, roll rate
using FlyingVec = std::array<double, 2>;   // position, speed

void check_step(double dt) {
  if (!(dt > 0.0 && dt <= kMaxStep)) {
    throw std::invalid_argument("time step must lie in (0, 0.01] s");
  }
}

double signed_drag(const EnvironmentParams& env, double cd, double area, double v) {
  const double d = drag_force(env, cd, area, v);
  return v >= 0.0 ? d : -d;
}

}  // namespace

double default_roll_inertia(const ScenarioConfig& config) {
  const double l = config.vehicle.shell_radius_l;
  return 0.5 * config.total_mass() * l * l;
}

SimState step_rolling(const SimState& state, double torque_y, const ScenarioConfig& config,
                      double dt, const PlantOptions& plant) {
  return step_rolling(state, [torque_y](double) { return torque_y; }, config, dt, plant);
}

SimState step_rolling(const SimState& state, const std::function<double(double)>& torque_y,
                      const ScenarioConfig& config, double dt, const PlantOptions& plant) {
  check_step(dt);
  const auto& env = config.environment;
  const auto& veh = config.vehicle;
  const double l = veh.shell_radius_l;
  const double mass = config.total_mass();
  const double theta = config.terrain.slope_theta;
  const double inertia = plant.roll_inertia.value_or(default_roll_inertia(config)) + mass * l * l;
  const double resistance = config.terrain.rolling_resistance_crr * mass * env.gravity *
                            std::cos(theta) * l;
  const double grade = mass * env.gravity * std::sin(theta) * l;

  auto rhs = [&](const RollingVec& x, RollingVec& dxdt, double t) {
    const double omega = x[2];
    const double v = omega * l;
    double rr = 0.0;
    if (std::abs(omega) > kStictionRate) {
      rr = omega > 0.0 ? resistance : -resistance;
    }
    const double area = projected_area(veh, x[1], MobilityMode::Rolling);
    const double drag = signed_drag(env, veh.drag_coefficient_cd, area, v) * l;
    dxdt[0] = v;
    dxdt[1] = omega;
    dxdt[2] = (torque_y(t) - rr - grade - drag) / inertia;
  };

  const double power = rolling_actuation(config, torque_y(state.time), state.speed_v).total_power;

  RollingVec x{state.position_s, state.roll_angle, state.roll_rate_omega};
  boost::numeric::odeint::runge_kutta4<RollingVec> stepper;
  stepper.do_step(rhs, x, state.time, dt);

  SimState next;
  next.position_s = x[0];
  next.roll_angle = x[1];
  next.roll_rate_omega = x[2];
  next.speed_v = x[2] * l;
  next.energy_consumed = state.energy_consumed + power * dt;
  next.time = state.time + dt;
  return next;
}

SimState step_flying(const SimState& state, double thrust, double tilt,
                     const ScenarioConfig& config, double dt) {
  check_step(dt);
  const auto& env = config.environment;
  const auto& veh = config.vehicle;
  const double mass = veh.cobot_mass;
  const double theta = config.terrain.slope_theta;
  const double weight = mass * env.gravity;

  if (std::abs(thrust * std::cos(tilt) - weight * std::cos(theta)) > 1e-6 * weight) {
    throw InfeasibleError("step_flying: thrust and tilt do not hold constant height");
  }

  const double area = projected_area(veh, tilt, MobilityMode::Flying);
  const double propulsive = thrust * std::sin(tilt) - weight * std::sin(theta);
  auto rhs = [&](const FlyingVec& x, FlyingVec& dxdt, double) {
    dxdt[0] = x[1];
    dxdt[1] = (propulsive - signed_drag(env, veh.drag_coefficient_cd, area, x[1])) / mass;
  };

  const double per_rotor = thrust / 4.0;
  const double power =
      config.num_agents * 4.0 *
      rotor_power_at(env, veh, per_rotor, std::abs(state.speed_v), -tilt).electrical_w;

  FlyingVec x{state.position_s, state.speed_v};
  boost::numeric::odeint::runge_kutta4<FlyingVec> stepper;
  stepper.do_step(rhs, x, state.time, dt);

  SimState next;
  next.position_s = x[0];
  next.speed_v = x[1];
  next.roll_angle = tilt;
  next.roll_rate_omega = 0.0;
  next.energy_consumed = state.energy_consumed + power * dt;
  next.time = state.time + dt;
  return next;
}

Trajectory simulate_closed_loop(const ScenarioConfig& config,
                                const std::function<double(double)>& omega_des,
                                double duration, double dt, const SimulationOptions& options) {
  if (!(duration > 0.0)) {
    throw std::invalid_argument("simulate_closed_loop: duration must be > 0");
  }
  check_step(dt);
  if (!gains_valid(options.gains)) {
    throw std::invalid_argument("simulate_closed_loop: invalid controller gains");
  }

  const auto& veh = config.vehicle;
  const auto mixer = mixer_matrix(veh.rotor_arm_length_a, veh.torque_constant_k_tau);
  const double share = 2.0 / config.num_agents;
  const auto steps = static_cast<std::size_t>(std::llround(duration / dt));
  const auto sample_every =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(options.sample_period / dt)));

  Trajectory traj;
  traj.dt = dt;
  traj.step_power.reserve(steps);
  traj.step_saturated.reserve(steps);
  traj.samples.reserve(steps / sample_every + 2);

  SimState state = options.initial;
  state.speed_v = state.roll_rate_omega * veh.shell_radius_l;
  Vec3 integrator = Vec3::Zero();

  for (std::size_t k = 0; k < steps; ++k) {
    const Vec3 desired(0.0, omega_des(state.time), 0.0);
    const Vec3 measured(0.0, state.roll_rate_omega, 0.0);
    const auto ctrl = pi_rate_control(desired, measured, options.gains, integrator, dt);
    integrator = ctrl.integrator;

    // The mixer describes one docked pair; each pair carries its share.
    ControlCommand per_pair = ctrl.command;
    per_pair.torque_cmd *= share;
    const auto alloc = allocate_saturated(per_pair, mixer, veh.max_rotor_thrust);
    const double torque = ctrl.command.torque_cmd.y() * alloc.scale;
    const double power = rolling_actuation(config, torque, state.speed_v).total_power;

    if (k % sample_every == 0) {
      traj.samples.push_back({state, power, alloc.saturated});
    }
    traj.step_power.push_back(power);
    traj.step_saturated.push_back(alloc.saturated);

    state = step_rolling(state, torque, config, dt, options.plant);
    // Keep the clock on the k*dt grid instead of accumulating rounding.
    state.time = options.initial.time + static_cast<double>(k + 1) * dt;
  }
  traj.samples.push_back({state, traj.step_power.empty() ? 0.0 : traj.step_power.back(),
                          !traj.step_saturated.empty() && traj.step_saturated.back()});
  return traj;
}

}  // namespace mobilitylab
