#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "uavnet/deployment.hpp"
#include "uavnet/geometry.hpp"
#include "uavnet/link_graph.hpp"
#include "uavnet/routing.hpp"
#include "uavnet/scenario.hpp"

namespace uavnet::simulator {

// Area, fleet, anchor and link graph after the setup stages.
struct Network {
  geometry::CoverageGrid grid;
  deployment::FovSpec fov;
  deployment::Fleet fleet;
  DroneId anchor = 0;
  deployment::DistanceMatrix distances;
  channel::LinkGraph graph;
};

Network build_network(const scenario::ScenarioConfig& config);

// round(fraction * non-anchor count), at least 1, drawn without replacement.
// Returned in ascending id order.
std::vector<DroneId> activate_sources(const deployment::Fleet& fleet, double fraction,
                                      std::uint64_t seed);

std::size_t activation_count(std::size_t fleet_size, double fraction);

// One path of one job, hop cells in path order.
struct ReportRow {
  double data_bits = 0.0;
  routing::Path path;
  std::vector<double> prev_capacity_bps;
  std::vector<double> transmission_time_s;
  std::vector<int> initial_battery_pct;
  std::vector<int> remaining_battery_pct;
  std::vector<double> current_capacity_bps;
};

struct TransmissionReport {
  DroneId source = 0;
  double data_bits = 0.0;
  bool failed = false;
  std::string failure;
  std::vector<ReportRow> rows;
  double allocated_bits = 0.0;
  double delivered_bits = 0.0;
  double completion_time_s = 0.0;
};

enum class Strategy { multipath, single_path };

struct RunResult {
  DroneId anchor = 0;
  std::vector<DroneId> sources;
  std::vector<TransmissionReport> reports;
  // battery levels of every drone after the run, indexed by id
  std::vector<double> final_levels;
  // level history per drone across jobs (initial first)
  std::vector<std::vector<double>> level_history;
};

RunResult run(const scenario::ScenarioConfig& config, Strategy strategy = Strategy::multipath);

std::vector<TransmissionReport> run_scenario(const scenario::ScenarioConfig& config);

struct StrategyMetrics {
  double completion_time_s = 0.0;
  // max - min remaining level over non-anchor drones
  double battery_spread = 0.0;
  double delivered_fraction = 0.0;
  std::size_t failed_jobs = 0;
};

struct Comparison {
  StrategyMetrics multipath;
  StrategyMetrics baseline;
};

Comparison compare_with_baseline(const scenario::ScenarioConfig& config);

inline constexpr const char* kReportHeader =
    "data_bits,path,prev_capacity_bps,transmission_time_s,initial_battery_pct,"
    "remaining_battery_pct,current_capacity_bps";

// Failed jobs carry no path and are left out of the table.
void write_report_csv(std::ostream& out, const std::vector<TransmissionReport>& reports);

}  // namespace uavnet::simulator
