#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "uavnet/channel.hpp"
#include "uavnet/deployment.hpp"

namespace uavnet::channel {

struct Edge {
  DroneId from = 0;
  DroneId to = 0;
  // undegraded capacity of the link (link budget or pinned value)
  double max_capacity_bps = 0.0;
  // max capacity derated by the transmitter's battery
  double capacity_bps = 0.0;
  // what the scheduler may still allocate in the current job
  double residual_bps = 0.0;
  std::optional<LinkBudget> budget;
};

// Directed capacitated graph over drone ids. Neighbor lists are kept in
// ascending id order so traversal order is deterministic.
class LinkGraph {
 public:
  void add_node(DroneId id);
  bool has_node(DroneId id) const { return adjacency_.contains(id); }
  std::vector<DroneId> nodes() const;
  std::size_t node_count() const { return adjacency_.size(); }

  std::size_t add_edge(DroneId from, DroneId to, double max_capacity_bps,
                       std::optional<LinkBudget> budget = std::nullopt);

  std::optional<std::size_t> find_edge(DroneId from, DroneId to) const;
  const Edge& edge(std::size_t index) const { return edges_.at(index); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  // (neighbor id, edge index) pairs in ascending neighbor order
  const std::vector<std::pair<DroneId, std::size_t>>& out_edges(DroneId id) const;

  double residual(std::size_t edge) const { return edges_.at(edge).residual_bps; }
  void consume(std::size_t edge, double amount_bps);
  void set_capacity(std::size_t edge, double capacity_bps);
  void set_max_capacity(std::size_t edge, double max_capacity_bps);
  void reset_residuals();

  std::vector<double> residual_snapshot() const;
  void restore_residuals(const std::vector<double>& snapshot);

 private:
  std::map<DroneId, std::vector<std::pair<DroneId, std::size_t>>> adjacency_;
  std::vector<Edge> edges_;
};

struct NeighborRule {
  enum class Kind {
    // 4-neighbour lattice at the given spacing
    grid,
    // every pair within max_distance_m
    distance,
    // exactly the listed directed pairs
    explicit_pairs,
  };
  Kind kind = Kind::grid;
  double max_distance_m = 0.0;
  std::vector<std::pair<DroneId, DroneId>> pairs;

  static NeighborRule grid(double spacing_m) { return {Kind::grid, spacing_m, {}}; }
  static NeighborRule within(double max_distance_m) { return {Kind::distance, max_distance_m, {}}; }
  static NeighborRule only(std::vector<std::pair<DroneId, DroneId>> pairs) {
    return {Kind::explicit_pairs, 0.0, std::move(pairs)};
  }
};

// Capacities forced onto specific directed links, bits/s.
using CapacityPins = std::map<std::pair<DroneId, DroneId>, double>;

LinkGraph build_link_graph(const deployment::Fleet& fleet,
                           const deployment::DistanceMatrix& distances,
                           const ChannelParams& params, const NeighborRule& rule,
                           const CapacityPins& pins = {},
                           energy::LevelBasis basis = energy::LevelBasis::exact);

// Re-derate every edge from its transmitter's battery and reset residuals.
void refresh_capacities(LinkGraph& graph, const deployment::Fleet& fleet,
                        energy::LevelBasis basis = energy::LevelBasis::exact);

}  // namespace uavnet::channel
