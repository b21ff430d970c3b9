#include "mobilitylab/control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/LU>

namespace mobilitylab {

bool gains_valid(const ControlGains& gains) {
  return (gains.kp.array() >= 0.0).all() && (gains.ki.array() >= 0.0).all() &&
         gains.kp.allFinite() && gains.ki.allFinite() && gains.integrator_limit > 0.0;
}

RateControlOutput pi_rate_control(const Vec3& omega_des, const Vec3& omega_meas,
                                  const ControlGains& gains, const Vec3& integrator, double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("pi_rate_control: dt must be > 0");
  }
  const Vec3 error = omega_des - omega_meas;
  Vec3 next = integrator + error * dt;
  for (int axis = 0; axis < 3; ++axis) {
    if (gains.ki[axis] > 0.0) {
      const double bound = gains.integrator_limit / gains.ki[axis];
      next[axis] = std::clamp(next[axis], -bound, bound);
    }
  }

  RateControlOutput out;
  out.integrator = next;
  out.command.torque_cmd = gains.kp.cwiseProduct(error) + gains.ki.cwiseProduct(next);
  out.command.thrust_cmd = 0.0;
  return out;
}

MixerGeometry mixer_matrix(double arm_length_a, double k_tau) {
  if (!(arm_length_a > 0.0) || !(k_tau > 0.0)) {
    throw std::invalid_argument("mixer_matrix: arm length and k_tau must be > 0");
  }
  MixerGeometry geom;
  geom.arm_length_a = arm_length_a;
  geom.c = arm_length_a / std::sqrt(2.0);
  geom.k_tau = k_tau;
  const double c = geom.c;
  // clang-format off
  geom.matrix_m <<  1.0,    1.0,    1.0,    1.0,
                   -c,      c,      c,     -c,
                   -c,     -c,      c,      c,
                   -k_tau,  k_tau, -k_tau,  k_tau;
  // clang-format on
  return geom;
}

PairForces allocate(const ControlCommand& cmd, const MixerGeometry& mixer) {
  Eigen::Vector4d wrench;
  wrench << cmd.thrust_cmd, cmd.torque_cmd;
  const Eigen::Vector4d f = mixer.matrix_m.partialPivLu().solve(wrench);
  return {f[0], f[1], f[2], f[3]};
}

SaturatedAllocation allocate_saturated(const ControlCommand& cmd, const MixerGeometry& mixer,
                                       double max_rotor_thrust) {
  SaturatedAllocation out;
  out.forces = allocate(cmd, mixer);
  double peak = 0.0;
  for (double f : out.forces) {
    peak = std::max(peak, std::abs(f));
  }
  if (peak > max_rotor_thrust) {
    out.saturated = true;
    out.scale = max_rotor_thrust / peak;
    for (double& f : out.forces) {
      f *= out.scale;
    }
  }
  return out;
}

Eigen::Vector4d pair_wrench(const PairForces& forces, const MixerGeometry& mixer) {
  return mixer.matrix_m * Eigen::Vector4d(forces[0], forces[1], forces[2], forces[3]);
}

RotorPairSpeeds pair_to_rotor_speeds(double pair_force, double k_t) {
  if (!(k_t > 0.0)) {
    throw std::invalid_argument("pair_to_rotor_speeds: k_t must be > 0");
  }
  if (pair_force >= 0.0) {
    return {std::sqrt(pair_force / k_t), 0.0};
  }
  return {0.0, std::sqrt(-pair_force / k_t)};
}

std::array<double, 8> pair_forces_to_rotor_thrusts(const PairForces& forces) {
  std::array<double, 8> thrust{};
  for (std::size_t pair = 0; pair < 4; ++pair) {
    const double f = forces[pair];
    thrust[pair] = f >= 0.0 ? f : 0.0;
    thrust[pair + 4] = f < 0.0 ? -f : 0.0;
  }
  return thrust;
}

}  // namespace mobilitylab
