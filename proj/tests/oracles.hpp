#pragma once

// Test-only reference implementations. Kept independent of the library's
// search and scheduling code paths.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "uavnet/link_graph.hpp"
#include "uavnet/routing.hpp"

namespace oracle {

using uavnet::DroneId;
using uavnet::channel::LinkGraph;
using uavnet::routing::Path;

// Every injective node sequence start..end of at most `threshold` nodes,
// filtered afterwards for consecutive links.
inline std::set<Path> all_simple_paths(const LinkGraph& g, DroneId start, DroneId end,
                                       int threshold) {
  std::set<Path> out;
  if (start == end) {
    out.insert({start});
    return out;
  }
  if (!g.has_node(start) || !g.has_node(end)) return out;
  std::vector<DroneId> middle;
  for (DroneId n : g.nodes())
    if (n != start && n != end) middle.push_back(n);

  const int max_mid = threshold - 2;
  for (int k = 0; k <= max_mid && k <= static_cast<int>(middle.size()); ++k) {
    // choose k of the middle nodes, then every ordering of them
    std::vector<bool> pick(middle.size(), false);
    std::fill(pick.begin(), pick.begin() + k, true);
    do {
      std::vector<DroneId> chosen;
      for (std::size_t i = 0; i < middle.size(); ++i)
        if (pick[i]) chosen.push_back(middle[i]);
      std::sort(chosen.begin(), chosen.end());
      do {
        Path p{start};
        p.insert(p.end(), chosen.begin(), chosen.end());
        p.push_back(end);
        bool linked = true;
        for (std::size_t i = 0; i + 1 < p.size() && linked; ++i)
          linked = g.find_edge(p[i], p[i + 1]).has_value();
        if (linked) out.insert(p);
      } while (std::next_permutation(chosen.begin(), chosen.end()));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

struct GreedyStep {
  Path path;
  double allocated;
};

// Straight re-execution of the greedy widest-path loop over a private copy
// of edge residuals.
inline std::vector<GreedyStep> greedy_trace(const LinkGraph& g, const std::vector<Path>& paths,
                                            double data, double slot = 1.0) {
  std::map<std::pair<DroneId, DroneId>, double> residual;
  for (const auto& e : g.edges()) residual[{e.from, e.to}] = e.residual_bps;
  std::vector<GreedyStep> steps;
  double remaining = data;
  while (remaining > 0) {
    double best_b = 0.0;
    int best = -1;
    for (std::size_t i = 0; i < paths.size(); ++i) {
      double b = 1e300;
      for (std::size_t h = 0; h + 1 < paths[i].size(); ++h)
        b = std::min(b, residual.at({paths[i][h], paths[i][h + 1]}));
      if (b > best_b) {
        best_b = b;
        best = static_cast<int>(i);
      }
    }
    if (best < 0) break;
    const auto& p = paths[static_cast<std::size_t>(best)];
    for (std::size_t h = 0; h + 1 < p.size(); ++h) residual[{p[h], p[h + 1]}] -= best_b;
    steps.push_back({p, best_b * slot});
    remaining -= best_b * slot;
  }
  return steps;
}

// Random directed graph on `n` nodes with symmetric link existence and
// independent per-direction capacities.
inline LinkGraph random_graph(std::mt19937_64& rng, int n, double density, double cap_lo = 1.0,
                              double cap_hi = 10.0, bool integral = false) {
  std::bernoulli_distribution link(density);
  std::uniform_real_distribution<double> cap(cap_lo, cap_hi);
  LinkGraph g;
  for (int i = 0; i < n; ++i) g.add_node(i);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!link(rng)) continue;
      double a = cap(rng), b = cap(rng);
      if (integral) a = std::round(a), b = std::round(b);
      g.add_edge(i, j, a);
      g.add_edge(j, i, b);
    }
  }
  return g;
}

}  // namespace oracle
