#pragma once

#include <array>

#include <Eigen/Core>

namespace mobilitylab {

using Vec3 = Eigen::Vector3d;

struct ControlGains {
  Vec3 kp = Vec3::Constant(0.4);   // [N m s/rad]
  Vec3 ki = Vec3::Constant(0.2);   // [N m/rad]
  double integrator_limit = 0.5;   // [N m], applied to Ki * integral per axis
};

bool gains_valid(const ControlGains& gains);

struct ControlCommand {
  Vec3 torque_cmd = Vec3::Zero();  // [N m], body frame
  double thrust_cmd = 0.0;         // [N], zero in pure-torque mode
};

struct RateControlOutput {
  ControlCommand command;
  Vec3 integrator = Vec3::Zero();  // integral of the rate error [rad]
};

/// PI body-rate law in pure-torque mode:
///   e = w_des - w_meas,  I' = I + e dt,  tau = Kp e + Ki I'.
/// Anti-windup clamps each axis so that |Ki I'| <= integrator_limit.
/// Throws std::invalid_argument unless dt > 0.
RateControlOutput pi_rate_control(const Vec3& omega_des, const Vec3& omega_meas,
                                  const ControlGains& gains, const Vec3& integrator, double dt);

/// Allocation of the docked two-Cobot Rollocopter. Columns are the opposite
/// rotor pairs A=(1,5), B=(2,6), C=(3,7), D=(4,8); rotors 1-4 belong to the
/// first Cobot, 5-8 to the second, mounted upside down. Rows map pair forces to
/// (f_cmd, tau_x, tau_y, tau_z):
///
///   [   1      1      1      1   ]
///   [  -c      c      c     -c   ]
///   [  -c     -c      c      c   ]
///   [ -ktau   ktau  -ktau   ktau ]
///
/// with c = a / sqrt(2).
struct MixerGeometry {
  double arm_length_a = 0.0;
  double c = 0.0;
  double k_tau = 0.0;
  Eigen::Matrix4d matrix_m = Eigen::Matrix4d::Zero();
};

/// Throws std::invalid_argument unless a > 0 and k_tau > 0.
MixerGeometry mixer_matrix(double arm_length_a, double k_tau);

using PairForces = std::array<double, 4>;  // f_A .. f_D [N]

/// Solves M f = (thrust_cmd, torque_cmd).
PairForces allocate(const ControlCommand& cmd, const MixerGeometry& mixer);

struct SaturatedAllocation {
  PairForces forces{};
  bool saturated = false;
  double scale = 1.0;  // uniform factor applied to the unsaturated solution
};

/// allocate(), then scales all pair forces by one factor so that no rotor
/// exceeds `max_rotor_thrust`. The torque direction is preserved.
SaturatedAllocation allocate_saturated(const ControlCommand& cmd, const MixerGeometry& mixer,
                                       double max_rotor_thrust);

/// Wrench (f_cmd, tau) produced by the given pair forces, i.e. M f.
Eigen::Vector4d pair_wrench(const PairForces& forces, const MixerGeometry& mixer);

/// Rotor speeds for one opposite pair. Exactly one rotor spins: the first
/// (upright Cobot) for f >= 0, the second (inverted Cobot) for f < 0.
struct RotorPairSpeeds {
  double first = 0.0;   // [rad/s]
  double second = 0.0;  // [rad/s]

  double active() const { return first > 0.0 ? first : second; }
};

/// f = k_t n^2 inverted per branch. Throws std::invalid_argument unless k_t > 0.
RotorPairSpeeds pair_to_rotor_speeds(double pair_force, double k_t);

/// Thrust of each of the eight rotors (1..8 -> index 0..7) for a pair-force
/// quadruple.
std::array<double, 8> pair_forces_to_rotor_thrusts(const PairForces& forces);

}  // namespace mobilitylab
