#include "mobilitylab/params.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace mobilitylab {

namespace {

struct DoubleField {
  std::string_view name;
  double& (*ref)(ScenarioConfig&);
};

#define ML_FIELD(group, member) \
  DoubleField { #member, [](ScenarioConfig& c) -> double& { return c.group.member; } }

// Order here is the serialization order.
const std::array<DoubleField, 20> kDoubleFields = {{
    ML_FIELD(environment, gravity),
    ML_FIELD(environment, air_density),
    ML_FIELD(environment, ambient_temperature),
    ML_FIELD(vehicle, cobot_mass),
    ML_FIELD(vehicle, shell_radius_l),
    ML_FIELD(vehicle, shell_width_w),
    ML_FIELD(vehicle, body_height_h_rolling),
    ML_FIELD(vehicle, body_height_h_flying),
    ML_FIELD(vehicle, drag_coefficient_cd),
    ML_FIELD(vehicle, rotor_disk_radius),
    ML_FIELD(vehicle, rotor_arm_length_a),
    ML_FIELD(vehicle, thrust_constant_k_t),
    ML_FIELD(vehicle, torque_constant_k_tau),
    ML_FIELD(vehicle, eta_propeller),
    ML_FIELD(vehicle, eta_motor),
    ML_FIELD(vehicle, eta_controller),
    ML_FIELD(vehicle, battery_energy),
    ML_FIELD(vehicle, max_rotor_thrust),
    ML_FIELD(terrain, rolling_resistance_crr),
    ML_FIELD(terrain, slope_theta),
}};

#undef ML_FIELD

constexpr std::string_view kAgentsKey = "num_agents";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), end);
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') {
    text.remove_prefix(1);
  }
  if (text.empty()) {
    return false;
  }
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && end == text.data() + text.size();
}

bool parse_int(std::string_view text, long long& out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') {
    text.remove_prefix(1);
  }
  if (text.empty()) {
    return false;
  }
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && end == text.data() + text.size();
}

void insert_unique(ConfigEntries& entries, std::string key, std::string value,
                   const std::string& where) {
  if (key.empty()) {
    throw ConfigError(ConfigError::Kind::Parse, where + ": empty key");
  }
  if (entries.contains(key)) {
    throw ConfigError(ConfigError::Kind::Parse, where + ": duplicate key '" + key + "'");
  }
  entries.emplace(std::move(key), std::move(value));
}

ConfigEntries parse_json_entries(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(ConfigError::Kind::Parse, std::string("JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError(ConfigError::Kind::Parse, "JSON: top level must be an object");
  }
  ConfigEntries entries;
  for (const auto& [key, value] : doc.items()) {
    std::string rendered;
    if (value.is_number_integer()) {
      rendered = std::to_string(value.get<long long>());
    } else if (value.is_number()) {
      rendered = format_double(value.get<double>());
    } else {
      throw ConfigError(ConfigError::Kind::Parse,
                        "JSON: value of '" + key + "' must be a number");
    }
    insert_unique(entries, key, std::move(rendered), "JSON");
  }
  return entries;
}

ConfigEntries parse_keyvalue_entries(std::string_view text) {
  ConfigEntries entries;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const std::string where = "line " + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(ConfigError::Kind::Parse, where + ": expected 'key = value'");
    }
    const auto value = trim(line.substr(eq + 1));
    if (value.empty()) {
      throw ConfigError(ConfigError::Kind::Parse, where + ": missing value");
    }
    insert_unique(entries, std::string(trim(line.substr(0, eq))), std::string(value), where);
  }
  return entries;
}

void check_positive(ValidationReport& report, std::string_view field, double value) {
  if (!std::isfinite(value) || !(value > 0.0)) {
    report.push_back({std::string(field), "must be finite and > 0"});
  }
}

void check_efficiency(ValidationReport& report, std::string_view field, double value) {
  if (!std::isfinite(value) || !(value > 0.0 && value <= 1.0)) {
    report.push_back({std::string(field), "must lie in (0, 1]"});
  }
}

}  // namespace

double VehicleParams::rotor_disk_area() const {
  return std::numbers::pi * rotor_disk_radius * rotor_disk_radius;
}

EnvironmentParams titan_defaults() { return {1.352, 5.4, -179.0}; }

EnvironmentParams earth_defaults() { return {9.81, 1.225, 15.0}; }

VehicleParams cobot_defaults() { return VehicleParams{}; }

ScenarioConfig default_scenario() {
  ScenarioConfig config;
  config.environment = titan_defaults();
  config.vehicle = cobot_defaults();
  config.terrain = TerrainParams{};
  config.num_agents = 2;
  return config;
}

ValidationReport validate(const ScenarioConfig& config) {
  ValidationReport report;
  const auto& env = config.environment;
  const auto& veh = config.vehicle;
  const auto& ter = config.terrain;

  check_positive(report, "gravity", env.gravity);
  check_positive(report, "air_density", env.air_density);
  // Below absolute zero is not a temperature.
  if (!std::isfinite(env.ambient_temperature) || env.ambient_temperature < -273.15) {
    report.push_back({"ambient_temperature", "must be finite and >= -273.15"});
  }

  check_positive(report, "cobot_mass", veh.cobot_mass);
  check_positive(report, "shell_radius_l", veh.shell_radius_l);
  check_positive(report, "shell_width_w", veh.shell_width_w);
  check_positive(report, "body_height_h_rolling", veh.body_height_h_rolling);
  check_positive(report, "body_height_h_flying", veh.body_height_h_flying);
  check_positive(report, "drag_coefficient_cd", veh.drag_coefficient_cd);
  check_positive(report, "rotor_disk_radius", veh.rotor_disk_radius);
  check_positive(report, "rotor_arm_length_a", veh.rotor_arm_length_a);
  check_positive(report, "thrust_constant_k_t", veh.thrust_constant_k_t);
  check_positive(report, "torque_constant_k_tau", veh.torque_constant_k_tau);
  check_efficiency(report, "eta_propeller", veh.eta_propeller);
  check_efficiency(report, "eta_motor", veh.eta_motor);
  check_efficiency(report, "eta_controller", veh.eta_controller);
  check_positive(report, "battery_energy", veh.battery_energy);
  check_positive(report, "max_rotor_thrust", veh.max_rotor_thrust);

  if (!std::isfinite(ter.rolling_resistance_crr) || ter.rolling_resistance_crr < 0.0) {
    report.push_back({"rolling_resistance_crr", "must be finite and >= 0"});
  }
  if (!std::isfinite(ter.slope_theta) || !(std::abs(ter.slope_theta) < std::numbers::pi / 2)) {
    report.push_back({"slope_theta", "must satisfy |theta| < pi/2"});
  }
  if (config.num_agents < 1) {
    report.push_back({std::string(kAgentsKey), "must be >= 1"});
  }
  return report;
}

ConfigEntries parse_config_entries(std::string_view text) {
  const auto body = trim(text);
  if (!body.empty() && body.front() == '{') {
    return parse_json_entries(body);
  }
  return parse_keyvalue_entries(text);
}

ScenarioConfig build_config(const ConfigEntries& entries, const ScenarioConfig& base) {
  ScenarioConfig config = base;
  ValidationReport report;

  for (const auto& [key, value] : entries) {
    if (key == kAgentsKey) {
      long long agents = 0;
      if (!parse_int(value, agents)) {
        throw ConfigError(ConfigError::Kind::Parse,
                          "num_agents: '" + value + "' is not an integer");
      }
      if (agents < 0 || agents > 1'000'000) {
        report.push_back({key, "out of range"});
        continue;
      }
      config.num_agents = static_cast<int>(agents);
      continue;
    }
    const auto it = std::find_if(kDoubleFields.begin(), kDoubleFields.end(),
                                 [&](const DoubleField& f) { return f.name == key; });
    if (it == kDoubleFields.end()) {
      report.push_back({key, "unknown key"});
      continue;
    }
    double parsed = 0.0;
    if (!parse_double(value, parsed)) {
      throw ConfigError(ConfigError::Kind::Parse, key + ": '" + value + "' is not a number");
    }
    it->ref(config) = parsed;
  }

  auto invariants = validate(config);
  report.insert(report.end(), invariants.begin(), invariants.end());
  if (!report.empty()) {
    std::ostringstream msg;
    msg << "invalid configuration:";
    for (const auto& v : report) {
      msg << ' ' << v.field << " (" << v.message << ");";
    }
    throw ConfigError(ConfigError::Kind::Validation, msg.str(), std::move(report));
  }
  return config;
}

ScenarioConfig load_config(std::string_view text) {
  return build_config(parse_config_entries(text));
}

std::string serialize_config(const ScenarioConfig& config) {
  ScenarioConfig copy = config;
  std::string out;
  for (const auto& field : kDoubleFields) {
    out.append(field.name).append(" = ").append(format_double(field.ref(copy))).append("\n");
  }
  out.append(kAgentsKey).append(" = ").append(std::to_string(config.num_agents)).append("\n");
  return out;
}

}  // namespace mobilitylab
