#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "uavnet/error.hpp"
#include "uavnet/routing.hpp"

using namespace uavnet;
using namespace uavnet::routing;
using channel::LinkGraph;

namespace {

void link(LinkGraph& g, DroneId a, DroneId b, double cap) {
  g.add_edge(a, b, cap);
  g.add_edge(b, a, cap);
}

// 0 -> {1, 2} -> 4, with 1 - 3 - 2 bridging the arms
LinkGraph diamond() {
  LinkGraph g;
  link(g, 0, 1, 5);
  link(g, 0, 2, 5);
  link(g, 1, 4, 5);
  link(g, 2, 4, 5);
  link(g, 1, 3, 5);
  link(g, 3, 2, 5);
  return g;
}

// two node-disjoint routes 0 -> 4: via 1 (cap 5) and via 2-3 (cap 3)
LinkGraph two_routes() {
  LinkGraph g;
  g.add_edge(0, 1, 5);
  g.add_edge(1, 4, 6);
  g.add_edge(0, 2, 3);
  g.add_edge(2, 3, 4);
  g.add_edge(3, 4, 3);
  return g;
}

RoutingConfig cfg(DroneId s, DroneId t, int threshold = 5) {
  RoutingConfig c;
  c.source = s;
  c.sink = t;
  c.hop_threshold = threshold;
  return c;
}

}  // namespace

TEST_CASE("find_all_paths edge cases") {
  const auto g = diamond();
  const auto self = find_all_paths(g, 3, 3, 4);
  REQUIRE(self.size() == 1);
  CHECK(self[0] == Path{3});
  CHECK(find_all_paths(g, 42, 4, 4).empty());
  CHECK(find_all_paths(g, 0, 42, 4).empty());
  CHECK_THROWS_AS(find_all_paths(g, 0, 4, 0), Error);
}

TEST_CASE("diamond: both arms, bridged detours excluded at threshold 4") {
  const auto g = diamond();
  const auto paths = find_all_paths(g, 0, 4, 4);
  const std::set<Path> got(paths.begin(), paths.end());
  CHECK(got == std::set<Path>{{0, 1, 4}, {0, 2, 4}});
  CHECK(got == oracle::all_simple_paths(g, 0, 4, 4));
  // ascending neighbour order fixes the output order
  CHECK(paths[0] == Path{0, 1, 4});

  const auto wide = find_all_paths(g, 0, 4, 5);
  CHECK(wide.size() == 4);
  CHECK(std::set<Path>(wide.begin(), wide.end()) == oracle::all_simple_paths(g, 0, 4, 5));
}

TEST_CASE("property: enumeration equals brute force on small random graphs") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const auto g = oracle::random_graph(rng, n, 0.5);
    const int threshold = 2 + static_cast<int>(rng() % 5);
    const DroneId s = static_cast<DroneId>(rng() % n);
    const DroneId t = static_cast<DroneId>(rng() % n);
    const auto paths = find_all_paths(g, s, t, threshold);
    const std::set<Path> got(paths.begin(), paths.end());
    CHECK(got.size() == paths.size());
    CHECK(got == oracle::all_simple_paths(g, s, t, threshold));
    for (const auto& p : paths) CHECK(static_cast<int>(p.size()) <= threshold);
  }
}

TEST_CASE("schedule: single path with ample capacity") {
  LinkGraph g;
  g.add_edge(0, 1, 10);
  g.add_edge(1, 2, 12);
  const auto plan = schedule(g, cfg(0, 2), 7);
  REQUIRE(plan.entries.size() == 1);
  CHECK(plan.entries[0].path == Path{0, 1, 2});
  CHECK(plan.entries[0].allocated_bits == 10);
  CHECK(plan.entries[0].carried_bits == 7);
  CHECK(plan.entries[0].hop_capacity_before_bps == std::vector<double>{10, 12});
  CHECK(g.residual(*g.find_edge(0, 1)) == 0);
  CHECK(g.residual(*g.find_edge(1, 2)) == 2);
}

TEST_CASE("schedule: widest first, then the narrow route") {
  auto g = two_routes();
  const auto expected = oracle::greedy_trace(g, find_all_paths(g, 0, 4, 5), 7);
  const auto plan = schedule(g, cfg(0, 4), 7);
  REQUIRE(plan.entries.size() == 2);
  CHECK(plan.entries[0].path == Path{0, 1, 4});
  CHECK(plan.entries[0].allocated_bits == 5);
  CHECK(plan.entries[1].path == Path{0, 2, 3, 4});
  CHECK(plan.entries[1].allocated_bits == 3);
  REQUIRE(expected.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(plan.entries[i].path == expected[i].path);
    CHECK(plan.entries[i].allocated_bits == expected[i].allocated);
  }
  CHECK(plan.allocated_bits() >= 7);
}

TEST_CASE("schedule: exhausted capacity reports the shortfall") {
  auto g = two_routes();
  try {
    schedule(g, cfg(0, 4), 10);
    FAIL("expected capacity exhaustion");
  } catch (const CapacityExhausted& e) {
    CHECK(e.code() == Errc::capacity_exhausted);
    CHECK(e.shortfall_bits() == doctest::Approx(2.0));
  }
  LinkGraph disconnected;
  disconnected.add_edge(0, 1, 1);
  disconnected.add_node(2);
  try {
    schedule(disconnected, cfg(0, 2), 1);
    FAIL("expected no route");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::no_route);
  }
}

TEST_CASE("schedule: shared edges are decremented for every candidate") {
  // 0 -> 1 is shared by both routes to 3
  LinkGraph g;
  g.add_edge(0, 1, 6);
  g.add_edge(1, 2, 4);
  g.add_edge(2, 3, 4);
  g.add_edge(1, 3, 5);
  const auto plan = schedule(g, cfg(0, 3), 6);
  REQUIRE(plan.entries.size() == 2);
  CHECK(plan.entries[0].path == Path{0, 1, 3});
  CHECK(plan.entries[0].bottleneck_bps == 5);
  // only 1 left on the shared first hop
  CHECK(plan.entries[1].path == Path{0, 1, 2, 3});
  CHECK(plan.entries[1].bottleneck_bps == 1);
  CHECK(plan.entries[1].hop_capacity_before_bps == std::vector<double>{1, 4, 4});
  CHECK(g.residual(*g.find_edge(0, 1)) == 0);
}

TEST_CASE("schedule: zero-bottleneck paths are skipped and zero data is a no-op") {
  LinkGraph g;
  g.add_edge(0, 1, 0);
  g.add_edge(1, 3, 9);
  g.add_edge(0, 2, 2);
  g.add_edge(2, 3, 2);
  const auto plan = schedule(g, cfg(0, 3), 2);
  REQUIRE(plan.entries.size() == 1);
  CHECK(plan.entries[0].path == Path{0, 2, 3});
  CHECK(schedule(g, cfg(0, 3), 0).entries.empty());
}

TEST_CASE("schedule: literal zeroing rule empties every edge of the chosen path") {
  auto g = two_routes();
  auto c = cfg(0, 4);
  c.decrement = DecrementRule::zero_path_edges;
  const auto plan = schedule(g, c, 5);
  REQUIRE(plan.entries.size() == 1);
  CHECK(g.residual(*g.find_edge(0, 1)) == 0);
  CHECK(g.residual(*g.find_edge(1, 4)) == 0);
  CHECK(g.residual(*g.find_edge(0, 2)) == 3);
}

TEST_CASE("routing config validation") {
  LinkGraph g = two_routes();
  CHECK_THROWS_AS(schedule(g, cfg(0, 0), 1), Error);
  CHECK_THROWS_AS(schedule(g, cfg(0, 4, 1), 1), Error);
  CHECK_THROWS_AS(schedule(g, cfg(0, 4), -1), Error);
}

TEST_CASE("deliver spreads large jobs over repeated slots") {
  auto g = two_routes();
  const auto plan = deliver(g, cfg(0, 4), 100);
  // per slot the network moves 5 + 3; 100 bits need 12 full slots plus 4
  REQUIRE(plan.entries.size() == 2);
  CHECK(plan.entries[0].carried_bits == doctest::Approx(12 * 5 + 4));
  CHECK(plan.entries[1].carried_bits == doctest::Approx(12 * 3));
  CHECK(plan.carried_bits() == doctest::Approx(100));
  CHECK(plan.entries[0].hop_time_s[0] == doctest::Approx(64.0 / 5.0));
  CHECK(plan.completion_time_s() == doctest::Approx(64.0 / 5.0));

  LinkGraph one;
  one.add_edge(0, 1, 3.5e6);
  const auto p = deliver(one, cfg(0, 1), 600e6);
  REQUIRE(p.entries.size() == 1);
  CHECK(p.entries[0].hop_time_s[0] == doctest::Approx(600.0 / 3.5).epsilon(1e-12));

  LinkGraph dead;
  dead.add_edge(0, 1, 0);
  CHECK_THROWS_AS(deliver(dead, cfg(0, 1), 1), CapacityExhausted);
}

TEST_CASE("baseline") {
  LinkGraph g;
  g.add_edge(0, 1, 4);
  auto copy = g;
  const auto base = single_path_baseline(g, cfg(0, 1), 3);
  const auto multi = schedule(copy, cfg(0, 1), 3);
  REQUIRE(base.entries.size() == 1);
  CHECK(base.entries[0].path == multi.entries[0].path);
  CHECK(base.completion_time_s() == multi.completion_time_s());

  // two disjoint equal routes: parallelism halves the completion time
  LinkGraph twin;
  twin.add_edge(0, 1, 4);
  twin.add_edge(1, 3, 4);
  twin.add_edge(0, 2, 4);
  twin.add_edge(2, 3, 4);
  auto twin2 = twin;
  const double t_multi = schedule(twin, cfg(0, 3), 8).completion_time_s();
  const double t_base = single_path_baseline(twin2, cfg(0, 3), 8).completion_time_s();
  CHECK(t_base == doctest::Approx(2 * t_multi));
}

TEST_CASE("property: greedy dominance, conservation, termination") {
  std::mt19937_64 rng(77);
  int exhausted = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 6);
    auto g = oracle::random_graph(rng, n, 0.55, 1.0, 10.0, trial % 2 == 0);
    const DroneId s = 0, t = n - 1;
    if (find_all_paths(g, s, t, 5).empty()) continue;
    const double data = 1.0 + static_cast<double>(rng() % 25);
    const auto before = g.residual_snapshot();
    try {
      const auto plan = schedule(g, cfg(s, t), data);
      CHECK(plan.allocated_bits() >= data);
      CHECK(plan.entries.size() <= g.edge_count());
      for (std::size_t r = 0; r < plan.chosen.size(); ++r) {
        const auto& bs = plan.rounds[r];
        for (double b : bs) CHECK(bs[plan.chosen[r]] >= b);
        CHECK(plan.entries[r].allocated_bits > 0);
      }
      // total decrement equals sum of (hops x bottleneck)
      double decremented = 0.0, expected = 0.0;
      for (std::size_t i = 0; i < before.size(); ++i) decremented += before[i] - g.residual(i);
      for (const auto& e : plan.entries)
        expected += static_cast<double>(e.path.size() - 1) * e.bottleneck_bps;
      CHECK(decremented == doctest::Approx(expected).epsilon(1e-9));
    } catch (const CapacityExhausted& e) {
      ++exhausted;
      CHECK(e.shortfall_bits() > 0);
    }
    for (std::size_t i = 0; i < g.edge_count(); ++i) CHECK(g.residual(i) >= 0.0);
  }
  CHECK(exhausted > 0);
}

TEST_CASE("property: multipath never finishes later than the widest single path") {
  std::mt19937_64 rng(8);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto g = oracle::random_graph(rng, 8, 0.4);
    if (find_all_paths(g, 0, 7, 6).empty()) continue;
    auto g2 = g;
    const double data = 5.0 + static_cast<double>(rng() % 200);
    const double multi = deliver(g, cfg(0, 7, 6), data).completion_time_s();
    const double base = single_path_baseline(g2, cfg(0, 7, 6), data).completion_time_s();
    CHECK(multi <= base * (1 + 1e-12));
    ++checked;
  }
  CHECK(checked > 50);
}
