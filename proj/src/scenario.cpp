#include "uavnet/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "uavnet/error.hpp"

namespace uavnet::scenario {
namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const std::string& expected) {
  throw Error(Errc::scenario_error,
              "bad value '" + value + "' for " + key + " (expected " + expected + ")");
}

double to_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end || value.empty()) bad_value(key, value, "a number");
  return out;
}

long long to_integer(const std::string& key, const std::string& value) {
  long long out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end || value.empty()) bad_value(key, value, "an integer");
  return out;
}

DroneId to_id(const std::string& key, const std::string& value) {
  const auto v = to_integer(key, trim(value));
  if (v < 0 || v > 1'000'000'000) bad_value(key, value, "a drone id");
  return static_cast<DroneId>(v);
}

std::string fmt(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& value) {
  std::filesystem::path p(value);
  if (p.is_relative() && !base.empty()) p = base / p;
  return p;
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t seed, Stream stream) {
  // splitmix64 finalizer over the seed offset by the stream id
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(stream) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

bool ScenarioConfig::stochastic() const {
  return channel.fading == channel::FadingMode::rayleigh || !battery_initial || sources.empty();
}

void ScenarioConfig::validate() const {
  if (area_polygon.empty() == area_matrix.empty())
    throw Error(Errc::scenario_error, "exactly one of area_polygon / area_matrix must be set");
  if (!(activation_fraction > 0.0 && activation_fraction <= 1.0))
    throw Error(Errc::scenario_error, "activation_fraction must be in (0, 1]");
  if (stochastic() && !seed)
    throw Error(Errc::scenario_error,
                "a seed is required (random battery levels, random activation or fading enabled)");
  if (battery_initial && !(*battery_initial > 0.0 && *battery_initial <= 1.0))
    throw Error(Errc::scenario_error, "battery_initial must be in (0, 1]");
  for (const auto& [id, level] : battery_overrides)
    if (!(level > 0.0 && level <= 1.0))
      throw Error(Errc::scenario_error, "battery override for drone " + std::to_string(id) +
                                            " must be in (0, 1]");
  if (!(data_bits >= 0.0)) throw Error(Errc::scenario_error, "data_bits must be non-negative");
  if (hop_threshold < 2) throw Error(Errc::scenario_error, "hop_threshold must be at least 2");
  if (!(slot_s > 0.0)) throw Error(Errc::scenario_error, "slot_s must be positive");
  if (neighbor == NeighborMode::distance && !(neighbor_max_distance_m > 0.0))
    throw Error(Errc::scenario_error, "neighbor = distance needs neighbor_max_distance_m > 0");
  if (neighbor == NeighborMode::pinned && pinned_capacities.empty())
    throw Error(Errc::scenario_error, "neighbor = pinned needs at least one pin");
  if (drain.mode == energy::DrainMode::percent && !(drain.percent_scale > 0.0))
    throw Error(Errc::scenario_error, "drain_percent_scale must be positive");
  try {
    channel.validate();
  } catch (const Error& e) {
    throw Error(Errc::scenario_error, e.what());
  }
}

void apply_override(ScenarioConfig& c, const std::string& raw_key, const std::string& raw_value,
                    const std::filesystem::path& base_dir) {
  const std::string key = trim(raw_key);
  const std::string value = trim(raw_value);
  auto num = [&] { return to_double(key, value); };

  if (key == "area_polygon") {
    c.area_polygon = resolve(base_dir, value);
    c.area_matrix.clear();
  } else if (key == "area_matrix") {
    c.area_matrix = resolve(base_dir, value);
    c.area_polygon.clear();
  } else if (key == "fov_half_angle_deg") {
    c.fov_half_angle_deg = num();
  } else if (key == "altitude_m") {
    c.altitude_m = num();
  } else if (key == "tx_power_w") {
    c.channel.tx_power_w = num();
  } else if (key == "gain_tx") {
    c.channel.gain_tx = num();
  } else if (key == "gain_rx") {
    c.channel.gain_rx = num();
  } else if (key == "carrier_hz") {
    c.channel.carrier_hz = num();
  } else if (key == "path_loss_exponent") {
    c.channel.path_loss_exponent = num();
  } else if (key == "channel_coefficient") {
    c.channel.channel_coefficient = num();
  } else if (key == "reference_distance_m") {
    c.channel.reference_distance_m = num();
  } else if (key == "noise_w") {
    c.channel.noise_w = num();
  } else if (key == "bandwidth_hz") {
    c.channel.bandwidth_hz = num();
  } else if (key == "fading") {
    if (value == "off")
      c.channel.fading = channel::FadingMode::deterministic;
    else if (value == "rayleigh")
      c.channel.fading = channel::FadingMode::rayleigh;
    else
      bad_value(key, value, "off|rayleigh");
  } else if (key == "neighbor") {
    if (value == "grid")
      c.neighbor = NeighborMode::grid;
    else if (value == "distance")
      c.neighbor = NeighborMode::distance;
    else if (value == "pinned")
      c.neighbor = NeighborMode::pinned;
    else
      bad_value(key, value, "grid|distance|pinned");
  } else if (key == "neighbor_max_distance_m") {
    c.neighbor_max_distance_m = num();
  } else if (key == "pin") {
    // from>to:bps
    const auto gt = value.find('>');
    const auto colon = value.find(':');
    if (gt == std::string::npos || colon == std::string::npos || colon < gt)
      bad_value(key, value, "from>to:bps");
    const DroneId from = to_id(key, value.substr(0, gt));
    const DroneId to = to_id(key, value.substr(gt + 1, colon - gt - 1));
    const double bps = to_double(key, trim(value.substr(colon + 1)));
    if (!(bps >= 0.0)) bad_value(key, value, "a non-negative capacity");
    c.pinned_capacities[{from, to}] = bps;
  } else if (key == "battery_voltage_v") {
    c.battery_voltage_v = num();
  } else if (key == "battery_charge_mah") {
    c.battery_charge_mah = num();
  } else if (key == "battery_initial") {
    if (value == "random")
      c.battery_initial.reset();
    else
      c.battery_initial = num();
  } else if (key == "battery_override") {
    const auto colon = value.find(':');
    if (colon == std::string::npos) bad_value(key, value, "id:level");
    c.battery_overrides[to_id(key, value.substr(0, colon))] =
        to_double(key, trim(value.substr(colon + 1)));
  } else if (key == "drain_mode") {
    if (value == "percent")
      c.drain.mode = energy::DrainMode::percent;
    else if (value == "joule")
      c.drain.mode = energy::DrainMode::joule;
    else
      bad_value(key, value, "percent|joule");
  } else if (key == "drain_percent_scale") {
    c.drain.percent_scale = num();
  } else if (key == "derating_basis") {
    if (value == "exact")
      c.derating_basis = energy::LevelBasis::exact;
    else if (value == "reported")
      c.derating_basis = energy::LevelBasis::reported_percent;
    else
      bad_value(key, value, "exact|reported");
  } else if (key == "activation_fraction") {
    c.activation_fraction = num();
  } else if (key == "sources") {
    c.sources.clear();
    std::istringstream in(value);
    std::string item;
    while (std::getline(in, item, ',')) {
      if (trim(item).empty()) continue;
      c.sources.push_back(to_id(key, item));
    }
    std::sort(c.sources.begin(), c.sources.end());
    c.sources.erase(std::unique(c.sources.begin(), c.sources.end()), c.sources.end());
  } else if (key == "sink") {
    if (value == "auto")
      c.sink.reset();
    else
      c.sink = to_id(key, value);
  } else if (key == "data_bits") {
    c.data_bits = num();
  } else if (key == "hop_threshold") {
    c.hop_threshold = static_cast<int>(to_integer(key, value));
  } else if (key == "slot_s") {
    c.slot_s = num();
  } else if (key == "decrement") {
    if (value == "bottleneck")
      c.decrement = routing::DecrementRule::bottleneck;
    else if (value == "zero")
      c.decrement = routing::DecrementRule::zero_path_edges;
    else
      bad_value(key, value, "bottleneck|zero");
  } else if (key == "seed") {
    const auto v = to_integer(key, value);
    if (v < 0) bad_value(key, value, "a non-negative integer");
    c.seed = static_cast<std::uint64_t>(v);
  } else {
    throw Error(Errc::scenario_error, "unknown key '" + key + "'");
  }
}

ScenarioConfig parse_scenario(const std::string& text, const std::filesystem::path& base_dir) {
  ScenarioConfig c;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(Errc::scenario_error,
                  "line " + std::to_string(lineno) + ": expected key = value");
    try {
      apply_override(c, line.substr(0, eq), line.substr(eq + 1), base_dir);
    } catch (const Error& e) {
      throw Error(Errc::scenario_error, "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(Errc::scenario_error, "cannot open scenario file " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), file.parent_path());
}

std::string to_text(const ScenarioConfig& c) {
  std::ostringstream out;
  auto kv = [&](const char* k, const std::string& v) { out << k << " = " << v << '\n'; };
  if (!c.area_polygon.empty()) kv("area_polygon", c.area_polygon.string());
  if (!c.area_matrix.empty()) kv("area_matrix", c.area_matrix.string());
  kv("fov_half_angle_deg", fmt(c.fov_half_angle_deg));
  kv("altitude_m", fmt(c.altitude_m));
  kv("tx_power_w", fmt(c.channel.tx_power_w));
  kv("gain_tx", fmt(c.channel.gain_tx));
  kv("gain_rx", fmt(c.channel.gain_rx));
  kv("carrier_hz", fmt(c.channel.carrier_hz));
  kv("path_loss_exponent", fmt(c.channel.path_loss_exponent));
  kv("channel_coefficient", fmt(c.channel.channel_coefficient));
  kv("reference_distance_m", fmt(c.channel.reference_distance_m));
  kv("noise_w", fmt(c.channel.noise_w));
  kv("bandwidth_hz", fmt(c.channel.bandwidth_hz));
  kv("fading", c.channel.fading == channel::FadingMode::rayleigh ? "rayleigh" : "off");
  kv("neighbor", c.neighbor == NeighborMode::grid       ? "grid"
                 : c.neighbor == NeighborMode::distance ? "distance"
                                                        : "pinned");
  if (c.neighbor == NeighborMode::distance)
    kv("neighbor_max_distance_m", fmt(c.neighbor_max_distance_m));
  for (const auto& [link, bps] : c.pinned_capacities)
    kv("pin", std::to_string(link.first) + ">" + std::to_string(link.second) + ":" + fmt(bps));
  kv("battery_voltage_v", fmt(c.battery_voltage_v));
  kv("battery_charge_mah", fmt(c.battery_charge_mah));
  kv("battery_initial", c.battery_initial ? fmt(*c.battery_initial) : "random");
  for (const auto& [id, level] : c.battery_overrides)
    kv("battery_override", std::to_string(id) + ":" + fmt(level));
  kv("drain_mode", c.drain.mode == energy::DrainMode::percent ? "percent" : "joule");
  kv("drain_percent_scale", fmt(c.drain.percent_scale));
  kv("derating_basis",
     c.derating_basis == energy::LevelBasis::exact ? "exact" : "reported");
  kv("activation_fraction", fmt(c.activation_fraction));
  std::string sources;
  for (std::size_t i = 0; i < c.sources.size(); ++i)
    sources += (i ? "," : "") + std::to_string(c.sources[i]);
  kv("sources", sources);
  kv("sink", c.sink ? std::to_string(*c.sink) : "auto");
  kv("data_bits", fmt(c.data_bits));
  kv("hop_threshold", std::to_string(c.hop_threshold));
  kv("slot_s", fmt(c.slot_s));
  kv("decrement", c.decrement == routing::DecrementRule::bottleneck ? "bottleneck" : "zero");
  if (c.seed) kv("seed", std::to_string(*c.seed));
  return out.str();
}

}  // namespace uavnet::scenario
