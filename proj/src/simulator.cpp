#include "uavnet/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>

#include "uavnet/error.hpp"

namespace uavnet::simulator {
namespace {

using scenario::ScenarioConfig;

geometry::CoverageGrid load_area(const ScenarioConfig& c, double cell_size) {
  if (!c.area_matrix.empty()) return geometry::load_binary_matrix(c.area_matrix, cell_size);
  return geometry::rasterize(geometry::normalize(geometry::load_polygon(c.area_polygon)),
                             cell_size);
}

void assign_batteries(deployment::Fleet& fleet, const ScenarioConfig& c) {
  std::vector<double> levels;
  if (c.battery_initial)
    levels.assign(fleet.size(), *c.battery_initial);
  else
    levels = energy::sample_initial_levels(fleet.size(),
                                           scenario::stream_seed(*c.seed, scenario::Stream::battery));
  for (const auto& [id, level] : c.battery_overrides) {
    if (id < 0 || static_cast<std::size_t>(id) >= fleet.size())
      throw Error(Errc::scenario_error,
                  "battery override names unknown drone " + std::to_string(id));
    levels[static_cast<std::size_t>(id)] = level;
  }
  for (std::size_t i = 0; i < fleet.size(); ++i)
    fleet[i].battery = energy::BatteryState(levels[i], c.battery_voltage_v, c.battery_charge_mah);
}

std::string join(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += "->";
    out += cells[i];
  }
  return out;
}

std::string fixed0(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.0f", v);
  return buf;
}

template <typename T, typename F>
std::string join_cells(const std::vector<T>& values, F&& format) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (const auto& v : values) cells.push_back(format(v));
  return join(cells);
}

}  // namespace

Network build_network(const ScenarioConfig& config) {
  config.validate();
  deployment::FovSpec fov(config.fov_half_angle_deg, config.altitude_m);
  auto grid = load_area(config, fov.footprint_side());
  auto fleet = deployment::place_fleet(grid, fov);
  assign_batteries(fleet, config);
  const DroneId anchor = deployment::select_anchor(fleet);
  if (config.sink && *config.sink != anchor)
    throw Error(Errc::scenario_error, "configured sink " + std::to_string(*config.sink) +
                                          " is not the centroid anchor " +
                                          std::to_string(anchor));
  auto distances = deployment::distance_matrix(fleet);

  auto params = config.channel;
  if (params.fading == channel::FadingMode::rayleigh)
    params.fading_seed = scenario::stream_seed(*config.seed, scenario::Stream::fading);

  channel::NeighborRule rule;
  switch (config.neighbor) {
    case scenario::NeighborMode::grid:
      rule = channel::NeighborRule::grid(fov.footprint_side());
      break;
    case scenario::NeighborMode::distance:
      rule = channel::NeighborRule::within(config.neighbor_max_distance_m);
      break;
    case scenario::NeighborMode::pinned: {
      std::vector<std::pair<DroneId, DroneId>> pairs;
      for (const auto& [link, _] : config.pinned_capacities) pairs.push_back(link);
      rule = channel::NeighborRule::only(std::move(pairs));
      break;
    }
  }
  auto graph = channel::build_link_graph(fleet, distances, params, rule,
                                         config.pinned_capacities, config.derating_basis);
  return Network{std::move(grid), fov,    std::move(fleet), anchor, std::move(distances),
                 std::move(graph)};
}

std::size_t activation_count(std::size_t fleet_size, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw Error(Errc::invalid_parameter, "activation fraction must be in (0, 1]");
  if (fleet_size < 2) throw Error(Errc::no_sources, "fleet has no drone besides the anchor");
  const std::size_t candidates = fleet_size - 1;
  const auto k = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(candidates)));
  return std::clamp<std::size_t>(k, 1, candidates);
}

std::vector<DroneId> activate_sources(const deployment::Fleet& fleet, double fraction,
                                      std::uint64_t seed) {
  std::vector<DroneId> pool;
  for (const auto& d : fleet)
    if (!d.is_anchor) pool.push_back(d.id);
  if (pool.empty()) throw Error(Errc::no_sources, "fleet has no drone besides the anchor");
  const std::size_t k = activation_count(pool.size() + 1, fraction);

  // partial Fisher-Yates
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

RunResult run(const ScenarioConfig& config, Strategy strategy) {
  auto net = build_network(config);
  auto& fleet = net.fleet;
  auto& graph = net.graph;

  RunResult result;
  result.anchor = net.anchor;
  if (!config.sources.empty()) {
    for (DroneId id : config.sources) {
      if (id < 0 || static_cast<std::size_t>(id) >= fleet.size())
        throw Error(Errc::scenario_error, "source " + std::to_string(id) + " is not in the fleet");
      if (id == net.anchor)
        throw Error(Errc::scenario_error, "source " + std::to_string(id) + " is the anchor");
    }
    result.sources = config.sources;
  } else {
    result.sources = activate_sources(
        fleet, config.activation_fraction,
        scenario::stream_seed(*config.seed, scenario::Stream::activation));
  }

  result.level_history.resize(fleet.size());
  for (const auto& d : fleet) result.level_history[d.id].push_back(d.battery.level());

  for (DroneId source : result.sources) {
    channel::refresh_capacities(graph, fleet, config.derating_basis);
    routing::RoutingConfig rc{config.hop_threshold, source, net.anchor, config.slot_s,
                              config.decrement};

    TransmissionReport report;
    report.source = source;
    report.data_bits = config.data_bits;

    routing::TransmissionPlan plan;
    try {
      plan = strategy == Strategy::multipath
                 ? routing::deliver(graph, rc, config.data_bits)
                 : routing::single_path_baseline(graph, rc, config.data_bits);
    } catch (const Error& e) {
      if (e.code() != Errc::no_route && e.code() != Errc::capacity_exhausted) throw;
      report.failed = true;
      report.failure = e.what();
      result.reports.push_back(std::move(report));
      continue;
    }

    std::map<DroneId, double> busy_s;
    for (const auto& entry : plan.entries)
      for (std::size_t h = 0; h < entry.hop_time_s.size(); ++h)
        busy_s[entry.path[h]] += entry.hop_time_s[h];

    std::vector<int> before_pct(fleet.size());
    for (const auto& d : fleet) before_pct[d.id] = d.battery.reported_percent();
    for (const auto& [id, t] : busy_s)
      fleet[id].battery = energy::drain(fleet[id].battery, t, config.channel.tx_power_w,
                                        config.drain);
    channel::refresh_capacities(graph, fleet, config.derating_basis);

    for (const auto& entry : plan.entries) {
      ReportRow row;
      row.data_bits = entry.carried_bits;
      row.path = entry.path;
      row.prev_capacity_bps = entry.hop_capacity_before_bps;
      row.transmission_time_s = entry.hop_time_s;
      for (std::size_t h = 0; h + 1 < entry.path.size(); ++h) {
        const DroneId tx = entry.path[h];
        row.initial_battery_pct.push_back(before_pct[tx]);
        row.remaining_battery_pct.push_back(fleet[tx].battery.reported_percent());
        const auto e = graph.find_edge(tx, entry.path[h + 1]);
        row.current_capacity_bps.push_back(graph.edge(*e).capacity_bps);
      }
      report.rows.push_back(std::move(row));
    }
    report.allocated_bits = plan.allocated_bits();
    report.delivered_bits = plan.carried_bits();
    report.completion_time_s = plan.completion_time_s();
    result.reports.push_back(std::move(report));
    for (const auto& d : fleet) result.level_history[d.id].push_back(d.battery.level());
  }

  for (const auto& d : fleet) result.final_levels.push_back(d.battery.level());
  return result;
}

std::vector<TransmissionReport> run_scenario(const ScenarioConfig& config) {
  return run(config, Strategy::multipath).reports;
}

Comparison compare_with_baseline(const ScenarioConfig& config) {
  auto metrics = [&](Strategy s) {
    const auto r = run(config, s);
    StrategyMetrics m;
    double requested = 0.0;
    double delivered = 0.0;
    for (const auto& rep : r.reports) {
      m.completion_time_s += rep.completion_time_s;
      requested += rep.data_bits;
      delivered += std::min(rep.delivered_bits, rep.data_bits);
      if (rep.failed) ++m.failed_jobs;
    }
    m.delivered_fraction = requested > 0.0 ? delivered / requested : 1.0;
    double lo = 1.0;
    double hi = 0.0;
    for (std::size_t id = 0; id < r.final_levels.size(); ++id) {
      if (static_cast<DroneId>(id) == r.anchor) continue;
      lo = std::min(lo, r.final_levels[id]);
      hi = std::max(hi, r.final_levels[id]);
    }
    m.battery_spread = hi >= lo ? hi - lo : 0.0;
    return m;
  };
  return {metrics(Strategy::multipath), metrics(Strategy::single_path)};
}

void write_report_csv(std::ostream& out, const std::vector<TransmissionReport>& reports) {
  out << kReportHeader << '\n';
  for (const auto& rep : reports) {
    if (rep.failed) continue;
    for (const auto& row : rep.rows) {
      out << fixed0(row.data_bits) << ',' << routing::format_path(row.path) << ','
          << join_cells(row.prev_capacity_bps, fixed0) << ','
          << join_cells(row.transmission_time_s,
                        [](double t) { return std::to_string(std::llround(t)); })
          << ',' << join_cells(row.initial_battery_pct, [](int p) { return std::to_string(p); })
          << ',' << join_cells(row.remaining_battery_pct, [](int p) { return std::to_string(p); })
          << ',' << join_cells(row.current_capacity_bps, fixed0) << '\n';
    }
  }
}

}  // namespace uavnet::simulator
