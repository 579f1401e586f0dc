#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "uavnet/link_graph.hpp"

namespace uavnet::routing {

using Path = std::vector<DroneId>;

std::string format_path(const Path& path);

// Edge indices along the path; throws if two consecutive nodes are not linked.
std::vector<std::size_t> path_edges(const channel::LinkGraph& graph, const Path& path);

// Minimum residual capacity over the path's edges.
double bottleneck(const channel::LinkGraph& graph, const Path& path);

// All simple paths start -> end with at most `threshold` nodes, depth-first,
// neighbours visited in ascending id order.
std::vector<Path> find_all_paths(const channel::LinkGraph& graph, DroneId start, DroneId end,
                                 int threshold);

enum class DecrementRule {
  // subtract the path bottleneck from every edge on the chosen path
  bottleneck,
  // subtract each edge's own residual (drives every edge of the path to zero)
  zero_path_edges,
};

struct RoutingConfig {
  int hop_threshold = 5;
  DroneId source = 0;
  DroneId sink = 0;
  // a path with bottleneck b carries b * slot_s bits per allocation round
  double slot_s = 1.0;
  DecrementRule decrement = DecrementRule::bottleneck;

  void validate() const;
};

struct PlanEntry {
  Path path;
  double bottleneck_bps = 0.0;
  // credited toward the job (may overshoot the remaining data)
  double allocated_bits = 0.0;
  // what the path actually has to move
  double carried_bits = 0.0;
  std::vector<double> hop_capacity_before_bps;
  std::vector<double> hop_time_s;

  double completion_time_s() const;
};

struct TransmissionPlan {
  std::vector<Path> candidates;
  std::vector<PlanEntry> entries;
  // candidate bottlenecks seen at each allocation round, indexed like candidates
  std::vector<std::vector<double>> rounds;
  std::vector<std::size_t> chosen;
  double total_bits = 0.0;

  double allocated_bits() const;
  double carried_bits() const;
  double completion_time_s() const;
};

// Greedy widest-path allocation within one slot: repeatedly pick the
// candidate with the largest bottleneck and decrement its edges until the
// data is covered. Throws CapacityExhausted when every bottleneck is zero
// with data left, NoRoute when no candidate path exists.
TransmissionPlan schedule(channel::LinkGraph& graph, const RoutingConfig& config, double data_bits);

// Repeats the single-slot greedy over as many slots as the data needs.
// Residual capacity is replenished every slot, so only the last slot
// differs from the full decomposition.
TransmissionPlan deliver(channel::LinkGraph& graph, const RoutingConfig& config, double data_bits);

// All data on the widest enumerated path.
TransmissionPlan single_path_baseline(channel::LinkGraph& graph, const RoutingConfig& config,
                                      double data_bits);

}  // namespace uavnet::routing
