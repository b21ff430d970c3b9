#include "mobilitylab/rangeopt.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <execution>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "mobilitylab/errors.hpp"

namespace mobilitylab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Runs fn(i) for i in [0, n). Exceptions are collected per index and the one
// with the lowest index is rethrown, so both policies fail identically.
template <class Fn>
void for_each_index(Execution execution, std::size_t n, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
  auto body = [&](std::size_t i) {
    try {
      fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (execution == Execution::Parallel) {
    std::vector<std::size_t> indices(n);
    std::iota(indices.begin(), indices.end(), std::size_t{0});
    std::for_each(std::execution::par, indices.begin(), indices.end(), body);
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      body(i);
    }
  }
  for (const auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

// Total electrical power at speed v, or nullopt if the actuators cannot hold it.
std::optional<double> power_at(const ScenarioConfig& config, MobilityMode mode, double v,
                               const SweepOptions& options) {
  const double hotel = options.hotel_load_w * config.num_agents;
  try {
    if (mode == MobilityMode::Rolling) {
      const auto aero = options.rolling_aero.value_or(default_rolling_aero(config.vehicle));
      return rolling_equilibrium(config, v, aero).total_electrical_power + hotel;
    }
    return flying_equilibrium(config, v).total_electrical_power + hotel;
  } catch (const InfeasibleError&) {
    return std::nullopt;
  }
}

double range_or_lowest(const ScenarioConfig& config, MobilityMode mode, double v,
                       const SweepOptions& options) {
  const auto p = power_at(config, mode, v, options);
  if (!p || !(*p > 0.0)) {
    return -std::numeric_limits<double>::infinity();
  }
  return range_at(*p, v, config.total_energy());
}

void refine_optimum(const ScenarioConfig& config, RangeCurve& curve, const SweepOptions& options) {
  const auto i = curve.optimum.grid_index;
  double lo = curve.velocity[i == 0 ? 0 : i - 1];
  double hi = curve.velocity[std::min(i + 1, curve.velocity.size() - 1)];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = range_or_lowest(config, curve.mode, x1, options);
  double f2 = range_or_lowest(config, curve.mode, x2, options);
  for (int iter = 0; iter < 100 && hi - lo > 1e-10; ++iter) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = range_or_lowest(config, curve.mode, x2, options);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = range_or_lowest(config, curve.mode, x1, options);
    }
  }
  const double v = f1 >= f2 ? x1 : x2;
  const double r = std::max(f1, f2);
  if (r > curve.optimum.range_km) {
    curve.optimum.velocity = v;
    curve.optimum.range_km = r;
    curve.optimum.power = *power_at(config, curve.mode, v, options);
    curve.optimum.refined = true;
  }
}

const std::array<std::pair<int, double>, 4> kPlatonicRadiusPerEdge = {{
    {4, std::sqrt(6.0) / 4.0},                        // tetrahedron
    {6, std::sqrt(3.0) / 2.0},                        // cube
    {8, std::sqrt(2.0) / 2.0},                        // octahedron
    {12, std::sqrt(3.0) * (1.0 + std::sqrt(5.0)) / 4.0},  // dodecahedron
}};

}  // namespace

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

std::vector<double> default_velocity_grid(MobilityMode mode) {
  return mode == MobilityMode::Rolling ? linspace(0.01, 2.0, 200) : linspace(0.05, 5.0, 200);
}

double range_at(double power, double v, double total_energy) {
  if (v == 0.0) {
    return 0.0;
  }
  if (!(power > 0.0)) {
    throw std::invalid_argument("range_at: power must be > 0 for a moving vehicle");
  }
  return v * total_energy / power * 1e-3;
}

RangeCurve range_sweep(const ScenarioConfig& config, MobilityMode mode,
                       const std::vector<double>& v_grid, const SweepOptions& options) {
  if (v_grid.empty() || !(v_grid.front() > 0.0) ||
      std::adjacent_find(v_grid.begin(), v_grid.end(), std::greater_equal<>()) != v_grid.end()) {
    throw std::invalid_argument("range_sweep: velocity grid must be positive and strictly increasing");
  }

  RangeCurve curve;
  curve.mode = mode;
  curve.velocity = v_grid;
  curve.total_energy = config.total_energy();
  const std::size_t n = v_grid.size();
  curve.power.assign(n, kNaN);
  curve.range_km.assign(n, kNaN);
  std::vector<char> feasible(n, 0);

  for_each_index(options.execution, n, [&](std::size_t i) {
    const auto p = power_at(config, mode, v_grid[i], options);
    if (!p) {
      return;
    }
    curve.power[i] = *p;
    if (*p > 0.0) {
      curve.range_km[i] = range_at(*p, v_grid[i], curve.total_energy);
      feasible[i] = 1;
    } else {
      curve.range_km[i] = std::numeric_limits<double>::infinity();
    }
  });
  curve.feasible.assign(feasible.begin(), feasible.end());

  bool any = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (feasible[i] && (!any || curve.range_km[i] > curve.optimum.range_km)) {
      any = true;
      curve.optimum = {v_grid[i], curve.range_km[i], curve.power[i], i, false};
    }
  }
  if (!any) {
    throw InfeasibleError(std::string(mode == MobilityMode::Rolling ? "rolling" : "flying") +
                          ": no feasible speed on the grid (C_rr=" +
                          std::to_string(config.terrain.rolling_resistance_crr) +
                          ", theta=" + std::to_string(config.terrain.slope_theta) + " rad)");
  }
  if (options.refine) {
    refine_optimum(config, curve, options);
  }
  return curve;
}

TradeoffGrid tradeoff_grid(const ScenarioConfig& config, const TradeoffOptions& options) {
  if (options.resolution < 2) {
    throw std::invalid_argument("tradeoff_grid: resolution must be >= 2");
  }
  TradeoffGrid grid;
  grid.crr = linspace(options.crr_min, options.crr_max, options.resolution);
  grid.theta_deg = linspace(options.theta_min_deg, options.theta_max_deg, options.resolution);
  const std::size_t n_crr = grid.crr.size();
  const std::size_t n_theta = grid.theta_deg.size();
  const std::size_t cells = n_crr * n_theta;

  SweepOptions sweep;
  sweep.hotel_load_w = options.hotel_load_w;

  auto at_cell = [&](double crr, double theta_deg) {
    ScenarioConfig c = config;
    c.terrain.rolling_resistance_crr = crr;
    c.terrain.slope_theta = theta_deg * std::numbers::pi / 180.0;
    return c;
  };

  // Flying does not touch the ground, so it only varies with slope.
  std::vector<std::optional<RangeOptimum>> flying(n_theta);
  for_each_index(options.execution, n_theta, [&](std::size_t j) {
    try {
      const auto c = at_cell(grid.crr.front(), grid.theta_deg[j]);
      flying[j] = range_sweep(c, MobilityMode::Flying, default_velocity_grid(MobilityMode::Flying),
                              sweep)
                      .optimum;
    } catch (const InfeasibleError&) {
    }
  });

  grid.delta_km.assign(cells, kNaN);
  grid.rolling_km.assign(cells, kNaN);
  grid.flying_km.assign(cells, kNaN);
  grid.rolling_v.assign(cells, kNaN);
  grid.flying_v.assign(cells, kNaN);
  std::vector<char> feasible(cells, 0);

  for_each_index(options.execution, cells, [&](std::size_t k) {
    const std::size_t i = k / n_theta;
    const std::size_t j = k % n_theta;
    if (flying[j]) {
      grid.flying_km[k] = flying[j]->range_km;
      grid.flying_v[k] = flying[j]->velocity;
    }
    try {
      const auto c = at_cell(grid.crr[i], grid.theta_deg[j]);
      const auto roll =
          range_sweep(c, MobilityMode::Rolling, default_velocity_grid(MobilityMode::Rolling), sweep)
              .optimum;
      grid.rolling_km[k] = roll.range_km;
      grid.rolling_v[k] = roll.velocity;
    } catch (const InfeasibleError&) {
      return;
    }
    if (flying[j]) {
      grid.delta_km[k] = grid.rolling_km[k] - grid.flying_km[k];
      feasible[k] = 1;
    }
  });
  grid.feasible.assign(feasible.begin(), feasible.end());
  return grid;
}

double pseudo_platonic_radius(int n, double cobot_side) {
  const auto& table = kPlatonicRadiusPerEdge;
  if (n <= table.front().first) {
    return table.front().second * cobot_side;
  }
  if (n >= table.back().first) {
    return table.back().second * cobot_side;
  }
  for (std::size_t k = 0; k + 1 < table.size(); ++k) {
    const auto [n0, r0] = table[k];
    const auto [n1, r1] = table[k + 1];
    if (n <= n1) {
      const double t = static_cast<double>(n - n0) / static_cast<double>(n1 - n0);
      return (r0 + t * (r1 - r0)) * cobot_side;
    }
  }
  return table.back().second * cobot_side;
}

double polygon_radius(int n, double cobot_side) {
  if (n <= 2) {
    return cobot_side / 2.0;
  }
  return cobot_side / (2.0 * std::sin(std::numbers::pi / n));
}

ScalingCurve scaling_bounds(const ScenarioConfig& config, const ScalingOptions& options) {
  if (options.n_min < 1 || options.n_max < options.n_min) {
    throw std::invalid_argument("scaling_bounds: need 1 <= n_min <= n_max");
  }
  ScenarioConfig flat = config;
  flat.terrain.slope_theta = 0.0;

  ScalingCurve curve;
  // Per-agent power and energy both scale with n, so one Cobot suffices.
  ScenarioConfig single = flat;
  single.num_agents = 1;
  curve.flying_km =
      range_sweep(single, MobilityMode::Flying, default_velocity_grid(MobilityMode::Flying))
          .optimum.range_km;

  const auto count = static_cast<std::size_t>(options.n_max - options.n_min + 1);
  curve.n.resize(count);
  curve.ratio_lower.resize(count);
  curve.ratio_upper.resize(count);
  curve.rolling_km_lower.resize(count);
  curve.rolling_km_upper.resize(count);
  curve.area_lower.resize(count);
  curve.area_upper.resize(count);

  const double side = flat.vehicle.shell_width_w;
  const auto grid = default_velocity_grid(MobilityMode::Rolling);

  for_each_index(options.execution, count, [&](std::size_t k) {
    const int n = options.n_min + static_cast<int>(k);
    ScenarioConfig c = flat;
    c.num_agents = n;

    const double r_upper = pseudo_platonic_radius(n, side);
    const RollingAero upper{std::numbers::pi * r_upper * r_upper, options.sphere_drag_coefficient};
    const RollingAero lower{2.0 * polygon_radius(n, side) * flat.vehicle.shell_width_w,
                            flat.vehicle.drag_coefficient_cd};

    SweepOptions sweep;
    sweep.rolling_aero = upper;
    const double km_upper = range_sweep(c, MobilityMode::Rolling, grid, sweep).optimum.range_km;
    sweep.rolling_aero = lower;
    const double km_lower = range_sweep(c, MobilityMode::Rolling, grid, sweep).optimum.range_km;

    curve.n[k] = n;
    curve.area_upper[k] = upper.area;
    curve.area_lower[k] = lower.area;
    curve.rolling_km_upper[k] = km_upper;
    curve.rolling_km_lower[k] = km_lower;
    curve.ratio_upper[k] = km_upper / curve.flying_km;
    curve.ratio_lower[k] = km_lower / curve.flying_km;
  });
  return curve;
}

}  // namespace mobilitylab
