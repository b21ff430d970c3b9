#include "mobilitylab/aeropower.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mobilitylab {

namespace {

constexpr int kMaxIterations = 200;
constexpr double kAbsTolerance = 1e-10;  // [m/s]
constexpr double kRelTolerance = 1e-15;

}  // namespace

double projected_area(const VehicleParams& vehicle, double alpha, MobilityMode mode) {
  const double h = mode == MobilityMode::Rolling ? vehicle.body_height_h_rolling
                                                 : vehicle.body_height_h_flying;
  return (h * std::abs(std::cos(alpha)) + 2.0 * vehicle.shell_radius_l * std::abs(std::sin(alpha))) *
         vehicle.shell_width_w;
}

double mean_rolling_area(const VehicleParams& vehicle) {
  return 2.0 / std::numbers::pi * (vehicle.body_height_h_rolling + 2.0 * vehicle.shell_radius_l) *
         vehicle.shell_width_w;
}

double drag_force(const EnvironmentParams& env, double drag_coefficient, double area,
                  double speed) {
  return 0.5 * drag_coefficient * env.air_density * area * speed * speed;
}

double induced_velocity_residual(double nu, double thrust, const EnvironmentParams& env,
                                 double disk_area, double v_inf, double alpha) {
  const double edgewise = v_inf * std::cos(alpha);
  const double normal = nu - v_inf * std::sin(alpha);
  return nu * std::hypot(edgewise, normal) - thrust / (2.0 * env.air_density * disk_area);
}

double induced_velocity(double thrust, const EnvironmentParams& env, double disk_area,
                        double v_inf, double alpha) {
  if (!(thrust >= 0.0)) {
    throw std::invalid_argument("induced_velocity: thrust must be >= 0");
  }
  if (!(disk_area > 0.0)) {
    throw std::invalid_argument("induced_velocity: disk area must be > 0");
  }
  if (thrust == 0.0) {
    return 0.0;
  }

  auto residual = [&](double nu) {
    return induced_velocity_residual(nu, thrust, env, disk_area, v_inf, alpha);
  };

  double lo = 0.0;
  double hi = std::sqrt(thrust / (2.0 * env.air_density * disk_area));
  int grow = 0;
  while (residual(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++grow > kMaxIterations) {
      throw SolverError("induced_velocity: could not bracket root");
    }
  }
  if (residual(hi) == 0.0) {
    return hi;
  }

  for (int i = 0; i < kMaxIterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {
      return mid;
    }
    const double r = residual(mid);
    if (r == 0.0) {
      return mid;
    }
    (r < 0.0 ? lo : hi) = mid;
    if (hi - lo <= kAbsTolerance && hi - lo <= kRelTolerance * hi) {
      return 0.5 * (lo + hi);
    }
  }
  throw SolverError("induced_velocity: bisection did not converge");
}

RotorPower rotor_power(const RotorOperatingPoint& op, double eta_p, double eta_m, double eta_c) {
  RotorPower out;
  out.raw_w = op.thrust_f *
              (op.induced_velocity_nu - op.freestream_v_inf * std::sin(op.angle_of_attack_alpha)) /
              (eta_p * eta_m * eta_c);
  out.clamped = out.raw_w < 0.0;
  out.electrical_w = out.clamped ? 0.0 : out.raw_w;
  return out;
}

RotorPower rotor_power_at(const EnvironmentParams& env, const VehicleParams& vehicle,
                          double thrust, double v_inf, double alpha) {
  RotorOperatingPoint op;
  op.thrust_f = thrust;
  op.freestream_v_inf = v_inf;
  op.angle_of_attack_alpha = alpha;
  op.induced_velocity_nu = induced_velocity(thrust, env, vehicle.rotor_disk_area(), v_inf, alpha);
  return rotor_power(op, vehicle.eta_propeller, vehicle.eta_motor, vehicle.eta_controller);
}

double cobot_hover_power(const EnvironmentParams& env, const VehicleParams& vehicle) {
  const double per_rotor = vehicle.cobot_mass * env.gravity / 4.0;
  return 4.0 * rotor_power_at(env, vehicle, per_rotor, 0.0, 0.0).electrical_w;
}

}  // namespace mobilitylab
