#pragma once

#include <optional>
#include <vector>

#include "mobilitylab/aeropower.hpp"
#include "mobilitylab/params.hpp"
#include "mobilitylab/steadystate.hpp"

namespace mobilitylab {

enum class Execution { Sequential, Parallel };

/// n evenly spaced points on [lo, hi], endpoints included.
std::vector<double> linspace(double lo, double hi, std::size_t n);

/// Rolling: 0.01..2.0 m/s, flying: 0.05..5.0 m/s, 200 points each.
std::vector<double> default_velocity_grid(MobilityMode mode);

/// Distance covered on `total_energy` at constant speed and power, in km.
/// Returns 0 for v == 0; throws std::invalid_argument if v > 0 and power <= 0.
double range_at(double power, double v, double total_energy);

struct RangeOptimum {
  double velocity = 0.0;  // [m/s]
  double range_km = 0.0;
  double power = 0.0;     // [W]
  std::size_t grid_index = 0;
  bool refined = false;
};

struct RangeCurve {
  MobilityMode mode = MobilityMode::Rolling;
  std::vector<double> velocity;   // [m/s]
  std::vector<double> power;      // [W], all agents incl. hotel load; NaN if infeasible
  std::vector<double> range_km;   // NaN if infeasible
  std::vector<bool> feasible;
  RangeOptimum optimum;
  double total_energy = 0.0;      // [J]
};

struct SweepOptions {
  double hotel_load_w = 0.0;  // per Cobot, added to every point
  Execution execution = Execution::Sequential;
  bool refine = false;        // golden-section polish around the grid optimum
  std::optional<RollingAero> rolling_aero;  // overrides the cylinder drag model
};

/// Steady-state power and range at every grid speed. Points the actuators
/// cannot hold, or that need no power at all, are marked infeasible and
/// skipped by the optimum, which is the first grid maximum.
/// Throws std::invalid_argument for a grid that is not strictly increasing and
/// positive, InfeasibleError if no point is feasible.
RangeCurve range_sweep(const ScenarioConfig& config, MobilityMode mode,
                       const std::vector<double>& v_grid, const SweepOptions& options = {});

struct TradeoffOptions {
  double crr_min = 0.01;
  double crr_max = 0.2;
  double theta_min_deg = -0.5;
  double theta_max_deg = 2.0;
  std::size_t resolution = 20;  // points per axis
  double hotel_load_w = 0.0;
  Execution execution = Execution::Sequential;
};

/// Cells are stored row-major with C_rr as the slow index:
/// cell(i, j) = values[i * theta_deg.size() + j].
struct TradeoffGrid {
  std::vector<double> crr;
  std::vector<double> theta_deg;
  std::vector<double> delta_km;    // rolling - flying; NaN if infeasible
  std::vector<double> rolling_km;
  std::vector<double> flying_km;
  std::vector<double> rolling_v;   // optimal speeds [m/s]
  std::vector<double> flying_v;
  std::vector<bool> feasible;

  std::size_t index(std::size_t i_crr, std::size_t j_theta) const {
    return i_crr * theta_deg.size() + j_theta;
  }
};

/// Maximum rolling and flying range over the (C_rr, slope) rectangle, each at
/// its own optimal speed.
TradeoffGrid tradeoff_grid(const ScenarioConfig& config, const TradeoffOptions& options = {});

struct ScalingOptions {
  int n_min = 1;
  int n_max = 12;
  double sphere_drag_coefficient = 0.47;  // smooth sphere
  Execution execution = Execution::Sequential;
};

struct ScalingCurve {
  std::vector<int> n;
  std::vector<double> ratio_lower;
  std::vector<double> ratio_upper;
  std::vector<double> rolling_km_lower;
  std::vector<double> rolling_km_upper;
  std::vector<double> area_lower;  // [m^2]
  std::vector<double> area_upper;  // [m^2]
  double flying_km = 0.0;          // independent of n
};

/// Circumradius of the pseudo-platonic shell for n Cobot faces: circumradius to
/// edge ratios of the tetrahedron, cube, octahedron and dodecahedron (4, 6, 8,
/// 12 faces) with the edge set to the Cobot side, interpolated linearly in n
/// and clamped outside [4, 12].
double pseudo_platonic_radius(int n, double cobot_side);

/// Circumradius of the regular n-gon with side `cobot_side`; n = 1 and n = 2
/// give the single-cage cylinder radius cobot_side / 2.
double polygon_radius(int n, double cobot_side);

/// Rolling/flying range ratio bounds for 1..N docked Cobots on flat ground.
/// Upper bound: sphere around the pseudo-platonic cluster (circular frontal
/// area, sphere Cd). Lower bound: n-gon prism of the Cobot width (rectangular
/// frontal area 2 R w, vehicle Cd). Flying is n independent Cobots.
ScalingCurve scaling_bounds(const ScenarioConfig& config, const ScalingOptions& options = {});

}  // namespace mobilitylab
