#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uavnet/channel.hpp"
#include "uavnet/deployment.hpp"
#include "uavnet/energy.hpp"
#include "uavnet/link_graph.hpp"
#include "uavnet/routing.hpp"

namespace uavnet::scenario {

enum class NeighborMode { grid, distance, pinned };

// Everything a run needs. Scenario files are `key = value` lines; `#`
// starts a comment; `pin` may repeat. Relative area paths resolve against
// the scenario file's directory.
struct ScenarioConfig {
  std::filesystem::path area_polygon;
  std::filesystem::path area_matrix;

  double fov_half_angle_deg = 30.0;
  double altitude_m = 100.0;

  channel::ChannelParams channel;

  NeighborMode neighbor = NeighborMode::grid;
  double neighbor_max_distance_m = 0.0;
  channel::CapacityPins pinned_capacities;

  double battery_voltage_v = energy::kDefaultVoltage;
  double battery_charge_mah = energy::kDefaultChargeMah;
  // unset: drawn uniformly in [0.80, 1.00] from the seed
  std::optional<double> battery_initial;
  std::map<DroneId, double> battery_overrides;
  energy::DrainModel drain;
  energy::LevelBasis derating_basis = energy::LevelBasis::reported_percent;

  double activation_fraction = 0.10;
  std::vector<DroneId> sources;
  std::optional<DroneId> sink;
  double data_bits = 600e6;

  int hop_threshold = 5;
  double slot_s = 1.0;
  routing::DecrementRule decrement = routing::DecrementRule::bottleneck;

  std::optional<std::uint64_t> seed;

  bool stochastic() const;
  void validate() const;
};

ScenarioConfig parse_scenario(const std::string& text,
                              const std::filesystem::path& base_dir = {});
ScenarioConfig load_scenario(const std::filesystem::path& file);

// Applies one `key=value` assignment; unknown keys and bad values throw.
void apply_override(ScenarioConfig& config, const std::string& key, const std::string& value,
                    const std::filesystem::path& base_dir = {});

// Fully resolved configuration in scenario-file syntax.
std::string to_text(const ScenarioConfig& config);

// Independent RNG streams derived from the scenario seed.
enum class Stream : std::uint64_t { battery = 1, activation = 2, fading = 3 };
std::uint64_t stream_seed(std::uint64_t seed, Stream stream);

}  // namespace uavnet::scenario
