#pragma once

#include "mobilitylab/params.hpp"

namespace mobilitylab {

enum class MobilityMode { Rolling, Flying };

/// Area of the Cobot's rectangular base projected onto the plane orthogonal
/// to the velocity, A = (h|cos a| + 2l|sin a|) w, with h picked by `mode`.
double projected_area(const VehicleParams& vehicle, double alpha, MobilityMode mode);

/// Revolution average of projected_area for a rolling shell:
/// (2/pi)(h_rolling + 2l) w.
double mean_rolling_area(const VehicleParams& vehicle);

/// Drag magnitude 1/2 Cd rho A v^2 (always >= 0, opposes motion).
double drag_force(const EnvironmentParams& env, double drag_coefficient, double area,
                  double speed);

/// Rotor state for the momentum-theory power model.
///
/// Angle convention: `angle_of_attack_alpha` is the rotor-plane pitch against
/// the freestream, positive when the leading edge is pitched up. A rotor
/// tilted into its direction of travel (propulsive tilt) therefore has
/// alpha < 0, and the freestream then adds to the inflow through the disk.
struct RotorOperatingPoint {
  double thrust_f = 0.0;                // [N]
  double freestream_v_inf = 0.0;        // [m/s]
  double angle_of_attack_alpha = 0.0;   // [rad]
  double induced_velocity_nu = 0.0;     // [m/s]
};

/// Non-negative induced velocity nu for the forward-flight momentum
/// relation
///
///   nu * sqrt((v cos a)^2 + (nu - v sin a)^2) = f / (2 rho A_disk)
///
/// For v_inf = 0 this is the hover value sqrt(f / (2 rho A_disk)). The root is
/// bracketed on [0, hover] (grown upward if needed) and bisected until the
/// bracket is below 1e-10 m/s and 1e-15 relative.
///
/// The left side is strictly increasing in nu whenever alpha <= 0, so the
/// root is unique there. For alpha > 0 (descending rotor) several roots can
/// exist and the one found by bisection of the bracket is returned.
///
/// Throws std::invalid_argument for negative thrust or non-positive disk area,
/// SolverError if the bracket or bisection exceeds its iteration cap.
double induced_velocity(double thrust, const EnvironmentParams& env, double disk_area,
                        double v_inf, double alpha);

/// Residual of the momentum relation; used by tests and diagnostics.
double induced_velocity_residual(double nu, double thrust, const EnvironmentParams& env,
                                 double disk_area, double v_inf, double alpha);

struct RotorPower {
  double electrical_w = 0.0;  // clamped at >= 0
  double raw_w = 0.0;         // before clamping
  bool clamped = false;       // raw_w < 0 (windmilling regime)
};

/// P = f (nu - v sin a) / (eta_p eta_m eta_c). Negative values are clamped to
/// zero and flagged.
RotorPower rotor_power(const RotorOperatingPoint& op, double eta_p, double eta_m, double eta_c);

/// Fills in nu for (f, v, alpha) and evaluates rotor_power with the vehicle's
/// efficiency chain.
RotorPower rotor_power_at(const EnvironmentParams& env, const VehicleParams& vehicle,
                          double thrust, double v_inf, double alpha);

/// Electrical power for one Cobot hovering: four rotors at m g / 4 each.
double cobot_hover_power(const EnvironmentParams& env, const VehicleParams& vehicle);

}  // namespace mobilitylab
