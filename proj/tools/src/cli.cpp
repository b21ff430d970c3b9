#include "mobilitylab/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "mobilitylab/dynamics.hpp"
#include "mobilitylab/errors.hpp"
#include "mobilitylab/params.hpp"
#include "mobilitylab/rangeopt.hpp"
#include "mobilitylab/steadystate.hpp"
#include "mobilitylab/thermal.hpp"

namespace mobilitylab::cli {

namespace {

using nlohmann::json;

// Raised for bad flag values found after CLI11 has finished parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_path;
  std::string format = "csv";
  std::string env = "titan";
  double hotel_load_w = 0.0;
  int jobs = 0;  // 0 or >1: parallel sweeps, 1: sequential
};

struct Args {
  CommonArgs common;
  std::string mode = "rolling";
  TradeoffOptions tradeoff;
  int n_min = 1;
  int n_max = 12;
  double omega_des = 0.7;
  double duration = 60.0;
  double dt = 0.001;
  double sample_period = 0.1;
  std::optional<double> budget_w;
  std::optional<double> thickness_m;
};

// Non-finite cells print as "nan"/"inf" so infeasible points stay visible.
std::string format_value(double x) { return fmt::format("{:.9g}", x); }

// JSON has no NaN; infeasible values become null.
json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw UsageError("cannot read config file '" + path + "'");
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

ScenarioConfig resolve_config(const CommonArgs& common) {
  ScenarioConfig base = default_scenario();
  if (common.env == "earth") {
    base.environment = earth_defaults();
  }

  std::string path = common.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("MOBILITYLAB_CONFIG"); env != nullptr) {
      path = env;
    }
  }
  ConfigEntries entries;
  if (!path.empty()) {
    entries = parse_config_entries(read_file(path));
  }

  ConfigEntries overrides;
  for (const auto& item : common.overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw UsageError("--set expects key=value, got '" + item + "'");
    }
    std::string key = item.substr(0, eq);
    if (!overrides.emplace(key, item.substr(eq + 1)).second) {
      throw UsageError("--set given twice for '" + key + "'");
    }
  }
  for (auto& [key, value] : overrides) {
    entries[key] = value;
  }
  return build_config(entries, base);
}

Execution execution_of(const CommonArgs& common) {
  return common.jobs == 1 ? Execution::Sequential : Execution::Parallel;
}

MobilityMode mode_of(const std::string& mode) {
  return mode == "flying" ? MobilityMode::Flying : MobilityMode::Rolling;
}

struct Result {
  Table table;
  json summary;
};

json optimum_json(const RangeOptimum& opt) {
  return {{"velocity_mps", opt.velocity}, {"range_km", opt.range_km}, {"power_w", opt.power}};
}

Result range_sweep_cmd(const ScenarioConfig& config, const Args& args) {
  const auto mode = mode_of(args.mode);
  SweepOptions options;
  options.hotel_load_w = args.common.hotel_load_w;
  options.execution = execution_of(args.common);
  const auto curve = range_sweep(config, mode, default_velocity_grid(mode), options);

  Result r;
  r.table.header = {"v_mps", "power_w", "range_km"};
  for (std::size_t i = 0; i < curve.velocity.size(); ++i) {
    r.table.rows.push_back({curve.velocity[i], curve.power[i], curve.range_km[i]});
  }
  r.summary = {{"mode", args.mode},
               {"num_agents", config.num_agents},
               {"total_energy_j", curve.total_energy},
               {"optimum", optimum_json(curve.optimum)}};
  return r;
}

Result power_curve_cmd(const ScenarioConfig& config, const Args& args) {
  const auto mode = mode_of(args.mode);
  SweepOptions options;
  options.hotel_load_w = args.common.hotel_load_w;
  options.execution = execution_of(args.common);
  const auto curve = range_sweep(config, mode, default_velocity_grid(mode), options);

  Result r;
  r.table.header = {"v_mps", "power_w", "power_per_cobot_w"};
  for (std::size_t i = 0; i < curve.velocity.size(); ++i) {
    r.table.rows.push_back(
        {curve.velocity[i], curve.power[i], curve.power[i] / config.num_agents});
  }
  r.summary = {{"mode", args.mode},
               {"num_agents", config.num_agents},
               {"hover_power_per_cobot_w", cobot_hover_power(config.environment, config.vehicle)},
               {"optimum", optimum_json(curve.optimum)}};
  return r;
}

Result tradeoff_cmd(const ScenarioConfig& config, const Args& args) {
  TradeoffOptions options = args.tradeoff;
  options.hotel_load_w = args.common.hotel_load_w;
  options.execution = execution_of(args.common);
  const auto grid = tradeoff_grid(config, options);

  Result r;
  r.table.header = {"crr", "theta_deg", "delta_km", "fly_km", "roll_km"};
  for (std::size_t i = 0; i < grid.crr.size(); ++i) {
    for (std::size_t j = 0; j < grid.theta_deg.size(); ++j) {
      const auto k = grid.index(i, j);
      r.table.rows.push_back({grid.crr[i], grid.theta_deg[j], grid.delta_km[k],
                              grid.flying_km[k], grid.rolling_km[k]});
    }
  }

  // Crossover: for each slope, the C_rr where delta changes sign, by linear
  // interpolation between neighbouring grid cells.
  json boundary = json::array();
  for (std::size_t j = 0; j < grid.theta_deg.size(); ++j) {
    for (std::size_t i = 0; i + 1 < grid.crr.size(); ++i) {
      const double a = grid.delta_km[grid.index(i, j)];
      const double b = grid.delta_km[grid.index(i + 1, j)];
      if (std::isfinite(a) && std::isfinite(b) && (a > 0.0) != (b > 0.0)) {
        const double t = a / (a - b);
        boundary.push_back({{"theta_deg", grid.theta_deg[j]},
                            {"crr", grid.crr[i] + t * (grid.crr[i + 1] - grid.crr[i])}});
        break;
      }
    }
  }
  r.summary = {{"resolution", options.resolution}, {"crossover", boundary}};
  return r;
}

Result scaling_cmd(const ScenarioConfig& config, const Args& args) {
  ScalingOptions options;
  options.n_min = args.n_min;
  options.n_max = args.n_max;
  options.execution = execution_of(args.common);
  const auto curve = scaling_bounds(config, options);

  Result r;
  r.table.header = {"n", "ratio_lower", "ratio_upper"};
  json rows = json::array();
  for (std::size_t k = 0; k < curve.n.size(); ++k) {
    r.table.rows.push_back(
        {static_cast<double>(curve.n[k]), curve.ratio_lower[k], curve.ratio_upper[k]});
    rows.push_back({{"n", curve.n[k]},
                    {"ratio_lower", curve.ratio_lower[k]},
                    {"ratio_upper", curve.ratio_upper[k]},
                    {"rolling_km_lower", curve.rolling_km_lower[k]},
                    {"rolling_km_upper", curve.rolling_km_upper[k]}});
  }
  r.summary = {{"flying_km", curve.flying_km}, {"bounds", rows}};
  return r;
}

Result simulate_cmd(const ScenarioConfig& config, const Args& args) {
  SimulationOptions options;
  options.sample_period = args.sample_period;
  const double omega = args.omega_des;
  const auto traj = simulate_closed_loop(
      config, [omega](double) { return omega; }, args.duration, args.dt, options);

  Result r;
  r.table.header = {"time_s", "position_m", "speed_mps", "omega_radps",
                    "power_w", "energy_j", "saturated"};
  for (const auto& s : traj.samples) {
    r.table.rows.push_back({s.state.time, s.state.position_s, s.state.speed_v,
                            s.state.roll_rate_omega, s.power_w, s.state.energy_consumed,
                            s.saturated ? 1.0 : 0.0});
  }

  const std::size_t half = traj.step_power.size() / 2;
  double mean = 0.0;
  for (std::size_t k = half; k < traj.step_power.size(); ++k) {
    mean += traj.step_power[k];
  }
  mean /= static_cast<double>(traj.step_power.size() - half);
  const auto& last = traj.samples.back().state;
  const double v_target = omega * config.vehicle.shell_radius_l;
  r.summary = {{"omega_des_radps", omega},
               {"final_speed_mps", last.speed_v},
               {"energy_j", last.energy_consumed},
               {"mean_power_second_half_w", mean}};
  try {
    r.summary["steady_state_power_w"] = rolling_equilibrium(config, v_target).total_electrical_power;
  } catch (const InfeasibleError&) {
    r.summary["steady_state_power_w"] = nullptr;
  }
  return r;
}

Result thermal_cmd(const ScenarioConfig& config, const Args& args) {
  ThermalSpec spec;
  spec.outer_temp_t2 = config.environment.ambient_temperature;

  std::vector<double> thickness;
  if (args.budget_w) {
    thickness.push_back(thickness_for_budget(*args.budget_w, spec));
  } else if (args.thickness_m) {
    thickness.push_back(*args.thickness_m);
  } else {
    thickness = linspace(0.005, 0.05, 19);
  }
  for (const double t : thickness) {
    if (!(t > 0.0)) {
      throw UsageError("--thickness-m must be > 0");
    }
  }
  const auto rows = thermal_sweep(spec, thickness);

  Result r;
  r.table.header = {"thickness_m", "loss_w", "heater_w", "mass_kg"};
  for (const auto& row : rows) {
    r.table.rows.push_back({row.thickness_m, row.loss_w, row.heater_w, row.mass_kg});
  }
  r.summary = {{"conduction_floor_w", conduction_floor(spec)},
               {"heater_efficiency", spec.heater_efficiency}};
  if (args.budget_w) {
    r.summary["budget_w"] = *args.budget_w;
    r.summary["thickness_m"] = rows.front().thickness_m;
    r.summary["mass_kg"] = rows.front().mass_kg;
  }
  return r;
}

std::string render_json(const Result& r) {
  json doc = r.summary;
  json table = json::object();
  for (std::size_t c = 0; c < r.table.header.size(); ++c) {
    json column = json::array();
    for (const auto& row : r.table.rows) {
      column.push_back(number_or_null(row[c]));
    }
    table[r.table.header[c]] = std::move(column);
  }
  doc["table"] = std::move(table);
  return doc.dump(2) + "\n";
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  file << text;
  file.close();
  if (!file) {
    throw std::runtime_error("cannot write '" + path + "'");
  }
}

void add_common(CLI::App* sub, CommonArgs& c) {
  sub->add_option("--config", c.config_path, "Scenario file (key = value or JSON)");
  sub->add_option("--set", c.overrides, "Override one config key: key=value")
      ->allow_extra_args(false);
  sub->add_option("--out", c.out_path, "Output path, stdout if omitted");
  sub->add_option("--format", c.format)->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--env", c.env, "Environment preset")->check(CLI::IsMember({"titan", "earth"}));
  sub->add_option("--hotel-load-w", c.hotel_load_w, "Non-propulsive draw per Cobot [W]");
  sub->add_option("--jobs", c.jobs, "1 runs sweeps sequentially")->check(CLI::NonNegativeNumber);
}

}  // namespace

std::string format_csv(const Table& table) {
  std::string out;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    out += (c == 0 ? "" : ",") + table.header[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) {
      throw std::invalid_argument("format_csv: row width does not match header");
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c != 0) {
        out += ',';
      }
      out += format_value(row[c]);
    }
    out += '\n';
  }
  return out;
}

std::size_t emit_csv(const Table& table, const std::string& path) {
  const std::string text = format_csv(table);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  file << text;
  file.close();
  if (!file) {
    throw std::runtime_error("cannot write '" + path + "'");
  }
  return text.size();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rolling versus flying range analysis for docked Cobots", "mobilitylab"};
  app.require_subcommand(1);
  Args a;

  auto* range = app.add_subcommand("range-sweep", "Range against speed");
  auto* power = app.add_subcommand("power-curve", "Power against speed");
  for (auto* sub : {range, power}) {
    add_common(sub, a.common);
    sub->add_option("--mode", a.mode)->check(CLI::IsMember({"rolling", "flying"}));
  }

  auto* tradeoff = app.add_subcommand("tradeoff-map", "Rolling minus flying range over terrain");
  add_common(tradeoff, a.common);
  tradeoff->add_option("--crr-min", a.tradeoff.crr_min);
  tradeoff->add_option("--crr-max", a.tradeoff.crr_max);
  tradeoff->add_option("--theta-min-deg", a.tradeoff.theta_min_deg);
  tradeoff->add_option("--theta-max-deg", a.tradeoff.theta_max_deg);
  tradeoff->add_option("--resolution", a.tradeoff.resolution)->check(CLI::Range(2, 1000));

  auto* scaling = app.add_subcommand("scaling", "Range ratio bounds against swarm size");
  add_common(scaling, a.common);
  scaling->add_option("--n-min", a.n_min)->check(CLI::Range(1, 1000));
  scaling->add_option("--n-max", a.n_max)->check(CLI::Range(1, 1000));

  auto* simulate = app.add_subcommand("simulate", "Closed-loop rolling at a constant roll rate");
  add_common(simulate, a.common);
  simulate->add_option("--omega-des", a.omega_des, "Roll rate setpoint [rad/s]");
  simulate->add_option("--duration", a.duration, "[s]");
  simulate->add_option("--dt", a.dt, "Integration step [s]");
  simulate->add_option("--sample-period", a.sample_period, "Output interval [s]");

  auto* thermal = app.add_subcommand("thermal", "Aerogel thickness against heater power");
  add_common(thermal, a.common);
  auto* budget = thermal->add_option("--budget-w", a.budget_w, "Heater budget [W]");
  thermal->add_option("--thickness-m", a.thickness_m, "Single thickness [m]")->excludes(budget);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e, out, err);
    }
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (a.n_min > a.n_max) {
      throw UsageError("--n-min must not exceed --n-max");
    }
    const auto config = resolve_config(a.common);
    Result result;
    if (range->parsed()) {
      result = range_sweep_cmd(config, a);
    } else if (power->parsed()) {
      result = power_curve_cmd(config, a);
    } else if (tradeoff->parsed()) {
      result = tradeoff_cmd(config, a);
    } else if (scaling->parsed()) {
      result = scaling_cmd(config, a);
    } else if (simulate->parsed()) {
      result = simulate_cmd(config, a);
    } else {
      result = thermal_cmd(config, a);
    }
    const std::string text =
        a.common.format == "json" ? render_json(result) : format_csv(result.table);
    write_output(a.common.out_path, text, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return 1;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace mobilitylab::cli
