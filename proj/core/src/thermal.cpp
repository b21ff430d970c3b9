#include "mobilitylab/thermal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mobilitylab {

void check_thermal_spec(const ThermalSpec& spec) {
  if (!(spec.inner_radius_r1 > 0.0) || !(spec.outer_radius_r2 > spec.inner_radius_r1)) {
    throw std::invalid_argument("thermal: need r2 > r1 > 0");
  }
  if (!(spec.conductivity_k > 0.0)) {
    throw std::invalid_argument("thermal: conductivity_k must be > 0");
  }
  if (!(spec.heater_efficiency > 0.0 && spec.heater_efficiency <= 1.0)) {
    throw std::invalid_argument("thermal: heater_efficiency must lie in (0, 1]");
  }
  if (!(spec.aerogel_density >= 0.0)) {
    throw std::invalid_argument("thermal: aerogel_density must be >= 0");
  }
}

double conduction_loss(const ThermalSpec& spec) {
  check_thermal_spec(spec);
  const double dt = spec.inner_temp_t1 - spec.outer_temp_t2;
  if (dt < 0.0) {
    throw std::invalid_argument("thermal: interior must be at least as warm as the exterior");
  }
  const double r1 = spec.inner_radius_r1;
  const double r2 = spec.outer_radius_r2;
  return 4.0 * std::numbers::pi * spec.conductivity_k * r1 * r2 * dt / (r2 - r1);
}

double heater_power(double loss, double efficiency) {
  if (!(efficiency > 0.0 && efficiency <= 1.0)) {
    throw std::invalid_argument("heater_power: efficiency must lie in (0, 1]");
  }
  return loss / efficiency;
}

double conduction_floor(const ThermalSpec& spec) {
  return 4.0 * std::numbers::pi * spec.conductivity_k * spec.inner_radius_r1 *
         (spec.inner_temp_t1 - spec.outer_temp_t2);
}

double thickness_for_budget(double budget, const ThermalSpec& spec) {
  if (!(budget > 0.0)) {
    throw std::invalid_argument("thickness_for_budget: budget must be > 0");
  }
  ThermalSpec probe = spec;
  probe.outer_radius_r2 = spec.inner_radius_r1 * 2.0;
  check_thermal_spec(probe);

  const double q = budget * spec.heater_efficiency;
  const double floor = conduction_floor(spec);
  if (!(q > floor)) {
    throw std::invalid_argument("thickness_for_budget: loss target is at or below the " +
                                std::to_string(floor) + " W that any finite shell conducts");
  }
  // Q (r2 - r1) = F r2 with F the floor, so r2 - r1 = F r1 / (Q - F).
  return floor * spec.inner_radius_r1 / (q - floor);
}

double insulation_mass(const ThermalSpec& spec) {
  check_thermal_spec(spec);
  const double r1 = spec.inner_radius_r1;
  const double r2 = spec.outer_radius_r2;
  return spec.aerogel_density * 4.0 / 3.0 * std::numbers::pi * (r2 * r2 * r2 - r1 * r1 * r1);
}

std::vector<ThermalRow> thermal_sweep(const ThermalSpec& spec,
                                      const std::vector<double>& thickness_m) {
  std::vector<ThermalRow> rows;
  rows.reserve(thickness_m.size());
  for (const double t : thickness_m) {
    ThermalSpec s = spec;
    s.outer_radius_r2 = spec.inner_radius_r1 + t;
    const double loss = conduction_loss(s);
    rows.push_back({t, loss, heater_power(loss, s.heater_efficiency), insulation_mass(s)});
  }
  return rows;
}

}  // namespace mobilitylab
