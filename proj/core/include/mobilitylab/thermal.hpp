#pragma once

#include <vector>

namespace mobilitylab {

/// Aerogel-insulated spherical cavity around the electronics.
struct ThermalSpec {
  double conductivity_k = 0.004;  // [W/(m K)]
  double inner_radius_r1 = 0.1;   // [m]
  double outer_radius_r2 = 0.11;  // [m]
  double inner_temp_t1 = 0.0;     // [degC]
  double outer_temp_t2 = -179.0;  // [degC]
  double heater_efficiency = 0.95;
  double aerogel_density = 1.9;   // [kg/m^3]
};

/// Throws std::invalid_argument unless r2 > r1 > 0, k > 0, 0 < efficiency <= 1
/// and density >= 0.
void check_thermal_spec(const ThermalSpec& spec);

/// Outward conduction through the shell, 4 pi k r1 r2 (T1 - T2) / (r2 - r1).
/// Requires T1 >= T2.
double conduction_loss(const ThermalSpec& spec);

double heater_power(double loss, double efficiency);

/// Loss at r2 -> infinity, 4 pi k r1 (T1 - T2). No finite shell goes below it.
double conduction_floor(const ThermalSpec& spec);

/// Shell thickness whose conduction loss equals budget * efficiency. r2 in
/// `spec` is ignored. Throws std::invalid_argument for budget <= 0 or when the
/// target loss is at or below conduction_floor.
double thickness_for_budget(double budget, const ThermalSpec& spec);

double insulation_mass(const ThermalSpec& spec);

struct ThermalRow {
  double thickness_m;
  double loss_w;
  double heater_w;
  double mass_kg;
};

/// One row per thickness, r2 = r1 + t.
std::vector<ThermalRow> thermal_sweep(const ThermalSpec& spec,
                                      const std::vector<double>& thickness_m);

}  // namespace mobilitylab
