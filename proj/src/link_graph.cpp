#include "uavnet/link_graph.hpp"

#include <algorithm>
#include <string>

#include "uavnet/error.hpp"

namespace uavnet::channel {

void LinkGraph::add_node(DroneId id) { adjacency_.try_emplace(id); }

std::vector<DroneId> LinkGraph::nodes() const {
  std::vector<DroneId> out;
  out.reserve(adjacency_.size());
  for (const auto& [id, _] : adjacency_) out.push_back(id);
  return out;
}

std::size_t LinkGraph::add_edge(DroneId from, DroneId to, double max_capacity_bps,
                                std::optional<LinkBudget> budget) {
  if (from == to)
    throw Error(Errc::invalid_parameter, "self-loop on drone " + std::to_string(from));
  if (!(max_capacity_bps >= 0.0))
    throw Error(Errc::invalid_parameter, "negative link capacity");
  if (find_edge(from, to))
    throw Error(Errc::invalid_parameter, "duplicate link " + std::to_string(from) + "->" +
                                             std::to_string(to));
  add_node(from);
  add_node(to);
  const std::size_t index = edges_.size();
  edges_.push_back({from, to, max_capacity_bps, max_capacity_bps, max_capacity_bps,
                    std::move(budget)});
  auto& out = adjacency_[from];
  const auto pos = std::lower_bound(out.begin(), out.end(), std::pair{to, std::size_t{0}});
  out.insert(pos, {to, index});
  return index;
}

std::optional<std::size_t> LinkGraph::find_edge(DroneId from, DroneId to) const {
  const auto it = adjacency_.find(from);
  if (it == adjacency_.end()) return std::nullopt;
  const auto& out = it->second;
  const auto pos = std::lower_bound(out.begin(), out.end(), std::pair{to, std::size_t{0}});
  if (pos == out.end() || pos->first != to) return std::nullopt;
  return pos->second;
}

const std::vector<std::pair<DroneId, std::size_t>>& LinkGraph::out_edges(DroneId id) const {
  static const std::vector<std::pair<DroneId, std::size_t>> none;
  const auto it = adjacency_.find(id);
  return it == adjacency_.end() ? none : it->second;
}

void LinkGraph::consume(std::size_t edge, double amount_bps) {
  auto& e = edges_.at(edge);
  if (!(amount_bps >= 0.0) || amount_bps > e.residual_bps)
    throw Error(Errc::invalid_state, "cannot consume " + std::to_string(amount_bps) +
                                         " bps from link with residual " +
                                         std::to_string(e.residual_bps));
  e.residual_bps -= amount_bps;
}

void LinkGraph::set_capacity(std::size_t edge, double capacity_bps) {
  auto& e = edges_.at(edge);
  if (!(capacity_bps >= 0.0) || capacity_bps > e.max_capacity_bps)
    throw Error(Errc::invalid_state, "derated capacity outside [0, max]");
  e.capacity_bps = capacity_bps;
  e.residual_bps = capacity_bps;
}

void LinkGraph::set_max_capacity(std::size_t edge, double max_capacity_bps) {
  if (!(max_capacity_bps >= 0.0))
    throw Error(Errc::invalid_parameter, "negative link capacity");
  auto& e = edges_.at(edge);
  e.max_capacity_bps = e.capacity_bps = e.residual_bps = max_capacity_bps;
}

void LinkGraph::reset_residuals() {
  for (auto& e : edges_) e.residual_bps = e.capacity_bps;
}

std::vector<double> LinkGraph::residual_snapshot() const {
  std::vector<double> out;
  out.reserve(edges_.size());
  for (const auto& e : edges_) out.push_back(e.residual_bps);
  return out;
}

void LinkGraph::restore_residuals(const std::vector<double>& snapshot) {
  if (snapshot.size() != edges_.size())
    throw Error(Errc::invalid_state, "residual snapshot does not match the graph");
  for (std::size_t i = 0; i < edges_.size(); ++i) edges_[i].residual_bps = snapshot[i];
}

LinkGraph build_link_graph(const deployment::Fleet& fleet,
                           const deployment::DistanceMatrix& distances,
                           const ChannelParams& params, const NeighborRule& rule,
                           const CapacityPins& pins, energy::LevelBasis basis) {
  if (fleet.size() < 2)
    throw Error(Errc::degenerate_network, "a link graph needs at least 2 drones, got " +
                                              std::to_string(fleet.size()));
  if (distances.size() != fleet.size())
    throw Error(Errc::invalid_parameter, "distance matrix size does not match the fleet");
  params.validate();

  const std::size_t n = fleet.size();
  std::vector<std::pair<std::size_t, std::size_t>> links;
  switch (rule.kind) {
    case NeighborRule::Kind::grid:
    case NeighborRule::Kind::distance: {
      if (!(rule.max_distance_m > 0.0))
        throw Error(Errc::invalid_parameter, "neighbor distance must be positive");
      // lattice neighbours sit exactly one spacing apart; allow round-off only
      const double limit = rule.kind == NeighborRule::Kind::grid
                               ? rule.max_distance_m * (1.0 + 1e-9)
                               : rule.max_distance_m;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (i != j && distances(i, j) <= limit) links.emplace_back(i, j);
      break;
    }
    case NeighborRule::Kind::explicit_pairs: {
      for (const auto& [a, b] : rule.pairs) {
        if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n ||
            static_cast<std::size_t>(b) >= n)
          throw Error(Errc::invalid_parameter, "link " + std::to_string(a) + "->" +
                                                   std::to_string(b) + " names an unknown drone");
        links.emplace_back(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
      }
      break;
    }
  }

  // one fading draw per unordered pair keeps the channel reciprocal
  std::map<std::pair<std::size_t, std::size_t>, double> gains;
  std::optional<RayleighFading> fading;
  if (params.fading == FadingMode::rayleigh) fading.emplace(params.fading_seed);
  auto gain_for = [&](std::size_t i, std::size_t j) {
    if (!fading) return 1.0;
    const auto key = std::minmax(i, j);
    auto it = gains.find(key);
    if (it == gains.end()) it = gains.emplace(key, fading->draw()).first;
    return it->second;
  };

  LinkGraph graph;
  for (const auto& d : fleet) graph.add_node(d.id);
  for (const auto& [i, j] : links) {
    const auto budget = link_budget(params, distances(i, j), gain_for(i, j));
    double c_max = budget.capacity_bps;
    if (const auto pin = pins.find({fleet[i].id, fleet[j].id}); pin != pins.end())
      c_max = pin->second;
    graph.add_edge(fleet[i].id, fleet[j].id, c_max, budget);
  }
  for (const auto& [link, _] : pins) {
    if (!graph.find_edge(link.first, link.second))
      throw Error(Errc::invalid_parameter, "pinned link " + std::to_string(link.first) + "->" +
                                               std::to_string(link.second) +
                                               " is not in the neighbor set");
  }
  refresh_capacities(graph, fleet, basis);
  return graph;
}

void refresh_capacities(LinkGraph& graph, const deployment::Fleet& fleet,
                        energy::LevelBasis basis) {
  std::map<DroneId, double> fraction;
  for (const auto& d : fleet) fraction[d.id] = d.battery.derating_fraction(basis);
  for (std::size_t i = 0; i < graph.edge_count(); ++i) {
    const auto& e = graph.edge(i);
    const auto it = fraction.find(e.from);
    const double f = it == fraction.end() ? 1.0 : it->second;
    graph.set_capacity(i, energy::derate_capacity(e.max_capacity_bps, f));
  }
}

}  // namespace uavnet::channel
