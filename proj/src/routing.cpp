#include "uavnet/routing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "uavnet/error.hpp"

namespace uavnet::routing {
namespace {

using channel::LinkGraph;

void extend(const LinkGraph& graph, DroneId node, DroneId end, std::size_t threshold, Path path,
            std::vector<Path>& out) {
  path.push_back(node);
  if (node == end) {
    out.push_back(std::move(path));
    return;
  }
  if (!graph.has_node(node)) return;
  for (const auto& [next, _] : graph.out_edges(node)) {
    if (std::find(path.begin(), path.end(), next) == path.end() && path.size() < threshold)
      extend(graph, next, end, threshold, path, out);
  }
}

struct Candidates {
  std::vector<Path> paths;
  std::vector<std::vector<std::size_t>> edges;
};

Candidates enumerate(const LinkGraph& graph, const RoutingConfig& config) {
  config.validate();
  Candidates c;
  c.paths = find_all_paths(graph, config.source, config.sink, config.hop_threshold);
  if (c.paths.empty())
    throw Error(Errc::no_route, "no path from " + std::to_string(config.source) + " to " +
                                    std::to_string(config.sink) + " within " +
                                    std::to_string(config.hop_threshold) + " nodes");
  for (const auto& p : c.paths) c.edges.push_back(path_edges(graph, p));
  return c;
}

double min_residual(const LinkGraph& graph, const std::vector<std::size_t>& edges) {
  double b = std::numeric_limits<double>::infinity();
  for (auto e : edges) b = std::min(b, graph.residual(e));
  return b;
}

PlanEntry make_entry(const LinkGraph& graph, const Path& path,
                     const std::vector<std::size_t>& edges, double bottleneck, double allocated,
                     double carried) {
  PlanEntry entry;
  entry.path = path;
  entry.bottleneck_bps = bottleneck;
  entry.allocated_bits = allocated;
  entry.carried_bits = carried;
  for (auto e : edges) {
    const double cap = graph.residual(e);
    entry.hop_capacity_before_bps.push_back(cap);
    entry.hop_time_s.push_back(carried / cap);
  }
  return entry;
}

// One slot of greedy allocation. Returns the data left uncovered.
double greedy(LinkGraph& graph, const Candidates& cands, double data_bits,
              const RoutingConfig& config, TransmissionPlan& plan) {
  double remaining = data_bits;
  while (remaining > 0.0) {
    std::vector<double> bottlenecks;
    bottlenecks.reserve(cands.paths.size());
    for (const auto& edges : cands.edges) bottlenecks.push_back(min_residual(graph, edges));

    // strict comparison keeps the first path in enumeration order on ties
    std::size_t best = 0;
    for (std::size_t i = 1; i < bottlenecks.size(); ++i)
      if (bottlenecks[i] > bottlenecks[best]) best = i;
    plan.rounds.push_back(bottlenecks);
    if (!(bottlenecks[best] > 0.0)) break;

    const double b = bottlenecks[best];
    const double allocated = b * config.slot_s;
    const double carried = std::min(allocated, remaining);
    plan.chosen.push_back(best);
    plan.entries.push_back(
        make_entry(graph, cands.paths[best], cands.edges[best], b, allocated, carried));

    for (auto e : cands.edges[best]) {
      const double amount =
          config.decrement == DecrementRule::bottleneck ? b : graph.residual(e);
      graph.consume(e, amount);
    }
    remaining -= allocated;
  }
  return remaining;
}

}  // namespace

std::string format_path(const Path& path) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += "->";
    out += std::to_string(path[i]);
  }
  return out;
}

std::vector<std::size_t> path_edges(const LinkGraph& graph, const Path& path) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const auto e = graph.find_edge(path[i], path[i + 1]);
    if (!e)
      throw Error(Errc::invalid_parameter, "no link " + std::to_string(path[i]) + "->" +
                                               std::to_string(path[i + 1]));
    out.push_back(*e);
  }
  return out;
}

double bottleneck(const LinkGraph& graph, const Path& path) {
  if (path.size() < 2) throw Error(Errc::invalid_parameter, "a path needs at least one hop");
  return min_residual(graph, path_edges(graph, path));
}

std::vector<Path> find_all_paths(const LinkGraph& graph, DroneId start, DroneId end,
                                 int threshold) {
  if (threshold < 1)
    throw Error(Errc::invalid_parameter, "hop threshold must be at least 1");
  std::vector<Path> out;
  if (start != end && !graph.has_node(end)) return out;
  extend(graph, start, end, static_cast<std::size_t>(threshold), {}, out);
  return out;
}

void RoutingConfig::validate() const {
  if (hop_threshold < 2)
    throw Error(Errc::invalid_parameter, "hop threshold must be at least 2");
  if (source == sink) throw Error(Errc::invalid_parameter, "source and sink coincide");
  if (!(slot_s > 0.0)) throw Error(Errc::invalid_parameter, "slot length must be positive");
}

double PlanEntry::completion_time_s() const {
  double t = 0.0;
  for (double h : hop_time_s) t = std::max(t, h);
  return t;
}

double TransmissionPlan::allocated_bits() const {
  double acc = 0.0;
  for (const auto& e : entries) acc += e.allocated_bits;
  return acc;
}

double TransmissionPlan::carried_bits() const {
  double acc = 0.0;
  for (const auto& e : entries) acc += e.carried_bits;
  return acc;
}

double TransmissionPlan::completion_time_s() const {
  double t = 0.0;
  for (const auto& e : entries) t = std::max(t, e.completion_time_s());
  return t;
}

TransmissionPlan schedule(LinkGraph& graph, const RoutingConfig& config, double data_bits) {
  if (!(data_bits >= 0.0)) throw Error(Errc::invalid_parameter, "negative data size");
  const auto cands = enumerate(graph, config);
  TransmissionPlan plan;
  plan.candidates = cands.paths;
  plan.total_bits = data_bits;
  const double remaining = greedy(graph, cands, data_bits, config, plan);
  if (remaining > 0.0)
    throw CapacityExhausted(remaining, "all paths saturated with " + std::to_string(remaining) +
                                           " bits left to place");
  return plan;
}

TransmissionPlan deliver(LinkGraph& graph, const RoutingConfig& config, double data_bits) {
  if (!(data_bits >= 0.0)) throw Error(Errc::invalid_parameter, "negative data size");
  const auto cands = enumerate(graph, config);
  const auto initial = graph.residual_snapshot();

  // full decomposition: what one slot can move when demand is unbounded
  TransmissionPlan full;
  full.candidates = cands.paths;
  greedy(graph, cands, std::numeric_limits<double>::infinity(), config, full);
  graph.restore_residuals(initial);

  double per_slot = 0.0;
  for (const auto& e : full.entries) per_slot += e.allocated_bits;

  TransmissionPlan plan;
  plan.candidates = cands.paths;
  plan.total_bits = data_bits;
  plan.rounds = full.rounds;
  plan.chosen = full.chosen;
  if (data_bits == 0.0) return plan;
  if (!(per_slot > 0.0))
    throw CapacityExhausted(data_bits, "every path to the sink has zero capacity");

  double full_slots = std::max(0.0, std::ceil(data_bits / per_slot) - 1.0);
  double last = data_bits - full_slots * per_slot;
  if (last <= 0.0 && full_slots > 0.0) {
    full_slots -= 1.0;
    last += per_slot;
  }

  TransmissionPlan tail;
  greedy(graph, cands, last, config, tail);

  for (std::size_t i = 0; i < full.entries.size(); ++i) {
    const auto& f = full.entries[i];
    double allocated = full_slots * f.allocated_bits;
    double carried = full_slots * f.carried_bits;
    if (i < tail.entries.size()) {
      allocated += tail.entries[i].allocated_bits;
      carried += tail.entries[i].carried_bits;
    }
    if (!(carried > 0.0)) continue;
    PlanEntry entry = f;
    entry.allocated_bits = allocated;
    entry.carried_bits = carried;
    for (std::size_t h = 0; h < entry.hop_time_s.size(); ++h)
      entry.hop_time_s[h] = carried / entry.hop_capacity_before_bps[h];
    plan.entries.push_back(std::move(entry));
  }
  return plan;
}

TransmissionPlan single_path_baseline(LinkGraph& graph, const RoutingConfig& config,
                                      double data_bits) {
  if (!(data_bits >= 0.0)) throw Error(Errc::invalid_parameter, "negative data size");
  const auto cands = enumerate(graph, config);
  std::size_t best = 0;
  std::vector<double> bottlenecks;
  for (const auto& edges : cands.edges) bottlenecks.push_back(min_residual(graph, edges));
  for (std::size_t i = 1; i < bottlenecks.size(); ++i)
    if (bottlenecks[i] > bottlenecks[best]) best = i;
  if (!(bottlenecks[best] > 0.0))
    throw Error(Errc::no_route, "every path to the sink has zero capacity");

  TransmissionPlan plan;
  plan.candidates = cands.paths;
  plan.total_bits = data_bits;
  plan.rounds.push_back(bottlenecks);
  if (data_bits == 0.0) return plan;
  plan.chosen.push_back(best);
  const double b = bottlenecks[best];
  plan.entries.push_back(
      make_entry(graph, cands.paths[best], cands.edges[best], b, data_bits, data_bits));
  for (auto e : cands.edges[best]) graph.consume(e, b);
  return plan;
}

}  // namespace uavnet::routing
