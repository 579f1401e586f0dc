#include "uavnet/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "uavnet/channel.hpp"
#include "uavnet/deployment.hpp"
#include "uavnet/error.hpp"
#include "uavnet/geometry.hpp"
#include "uavnet/routing.hpp"
#include "uavnet/scenario.hpp"
#include "uavnet/simulator.hpp"

namespace uavnet::cli {
namespace {

struct Options {
  std::string scenario_file;
  std::string area;
  std::string matrix;
  std::optional<double> fov_angle;
  std::optional<double> altitude;
  std::optional<double> activation;
  std::optional<long long> seed;
  std::optional<int> hop_threshold;
  std::string drain_mode;
  std::string fading;
  std::string out;
  std::vector<std::string> sets;
  // command specific
  std::optional<double> distance;
  std::optional<int> source;
  bool single_slot = false;
};

void add_common(CLI::App* cmd, Options& o, bool scenario_required) {
  auto* pos = cmd->add_option("scenario", o.scenario_file, "Scenario file");
  if (scenario_required) pos->required();
  cmd->add_option("--area", o.area, "Polygon file, one \"lat,lon\" vertex per line");
  cmd->add_option("--matrix", o.matrix, "Binary coverage matrix file");
  cmd->add_option("--fov-angle", o.fov_angle, "Camera FOV half angle, degrees");
  cmd->add_option("--altitude", o.altitude, "Flight altitude, meters");
  cmd->add_option("--activation", o.activation,
                  "Fraction of non-anchor drones activated as sources (drops pinned sources)");
  cmd->add_option("--seed", o.seed, "RNG seed");
  cmd->add_option("--hop-threshold", o.hop_threshold, "Maximum nodes per path");
  cmd->add_option("--drain-mode", o.drain_mode, "Battery drain model")
      ->check(CLI::IsMember({"percent", "joule"}));
  cmd->add_option("--fading", o.fading, "Small-scale fading")
      ->check(CLI::IsMember({"off", "rayleigh"}));
  cmd->add_option("--out", o.out, "Output file (default: stdout)");
  cmd->add_option("--set", o.sets, "Scenario override key=value (repeatable)");
}

std::string num(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

scenario::ScenarioConfig resolve(const Options& o) {
  scenario::ScenarioConfig c;
  if (!o.scenario_file.empty()) c = scenario::load_scenario(o.scenario_file);
  auto set = [&c](const std::string& k, const std::string& v) {
    scenario::apply_override(c, k, v, std::filesystem::current_path());
  };
  if (!o.area.empty()) set("area_polygon", o.area);
  if (!o.matrix.empty()) set("area_matrix", o.matrix);
  if (o.fov_angle) set("fov_half_angle_deg", num(*o.fov_angle));
  if (o.altitude) set("altitude_m", num(*o.altitude));
  if (o.activation) {
    set("activation_fraction", num(*o.activation));
    set("sources", "");
  }
  if (o.seed) set("seed", std::to_string(*o.seed));
  if (o.hop_threshold) set("hop_threshold", std::to_string(*o.hop_threshold));
  if (!o.drain_mode.empty()) set("drain_mode", o.drain_mode);
  if (!o.fading.empty()) set("fading", o.fading);
  for (const auto& kv : o.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw Error(Errc::scenario_error, "override '" + kv + "' is not key=value");
    set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  return c;
}

void echo_config(const scenario::ScenarioConfig& c, std::ostream& err) {
  std::istringstream lines(scenario::to_text(c));
  std::string line;
  err << "# resolved configuration\n";
  while (std::getline(lines, line)) err << "#   " << line << '\n';
}

void emit(const Options& o, const std::string& content, std::ostream& out) {
  if (o.out.empty())
    out << content;
  else
    write_atomically(o.out, content);
}

int cmd_deploy(const Options& o, std::ostream& out, std::ostream& err) {
  auto c = resolve(o);
  echo_config(c, err);
  if (c.area_polygon.empty() == c.area_matrix.empty())
    throw Error(Errc::scenario_error, "deploy needs exactly one of --area / --matrix");
  deployment::FovSpec fov(c.fov_half_angle_deg, c.altitude_m);
  const auto grid =
      c.area_matrix.empty()
          ? geometry::rasterize(geometry::normalize(geometry::load_polygon(c.area_polygon)),
                                fov.footprint_side())
          : geometry::load_binary_matrix(c.area_matrix, fov.footprint_side());
  auto fleet = deployment::place_fleet(grid, fov);
  deployment::select_anchor(fleet);

  std::ostringstream s;
  s << "id,x,y,anchor\n";
  char buf[128];
  for (const auto& d : fleet) {
    std::snprintf(buf, sizeof buf, "%d,%.3f,%.3f,%s\n", d.id, d.position.x, d.position.y,
                  d.is_anchor ? "true" : "false");
    s << buf;
  }
  emit(o, s.str(), out);
  return kOk;
}

int cmd_linkbudget(const Options& o, std::ostream& out, std::ostream& err) {
  auto c = resolve(o);
  echo_config(c, err);
  std::ostringstream s;
  char buf[256];
  if (o.distance) {
    const auto b = channel::link_budget(c.channel, *o.distance);
    s << "distance_m,path_loss_db,zeta,snr,capacity_bps\n";
    std::snprintf(buf, sizeof buf, "%.6g,%.6f,%.6e,%.6e,%.3f\n", b.distance_m, b.path_loss_db,
                  b.zeta, b.snr, b.capacity_bps);
    s << buf;
  } else {
    if (o.scenario_file.empty() && c.area_matrix.empty() && c.area_polygon.empty())
      throw Error(Errc::scenario_error, "linkbudget needs --distance or an area/scenario");
    const auto net = simulator::build_network(c);
    s << "from,to,distance_m,path_loss_db,snr,max_capacity_bps,capacity_bps\n";
    for (const auto& e : net.graph.edges()) {
      const auto& b = *e.budget;
      std::snprintf(buf, sizeof buf, "%d,%d,%.3f,%.6f,%.6e,%.3f,%.3f\n", e.from, e.to,
                    b.distance_m, b.path_loss_db, b.snr, e.max_capacity_bps, e.capacity_bps);
      s << buf;
    }
  }
  emit(o, s.str(), out);
  return kOk;
}

int cmd_plan(const Options& o, std::ostream& out, std::ostream& err) {
  auto c = resolve(o);
  echo_config(c, err);
  auto net = simulator::build_network(c);
  if (!o.source) throw Error(Errc::scenario_error, "plan needs --source");
  routing::RoutingConfig rc{c.hop_threshold, *o.source, net.anchor, c.slot_s, c.decrement};
  const auto plan = o.single_slot ? routing::schedule(net.graph, rc, c.data_bits)
                                  : routing::deliver(net.graph, rc, c.data_bits);

  std::ostringstream s;
  char buf[256];
  s << "# " << plan.candidates.size() << " candidate paths from " << rc.source << " to "
    << rc.sink << '\n';
  s << "path,bottleneck_bps,allocated_bits,carried_bits,completion_s\n";
  for (const auto& e : plan.entries) {
    std::snprintf(buf, sizeof buf, ",%.3f,%.0f,%.0f,%.3f\n", e.bottleneck_bps, e.allocated_bits,
                  e.carried_bits, e.completion_time_s());
    s << routing::format_path(e.path) << buf;
  }
  std::snprintf(buf, sizeof buf, "# completion_s = %.3f\n", plan.completion_time_s());
  s << buf;
  emit(o, s.str(), out);
  return kOk;
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  auto c = resolve(o);
  echo_config(c, err);
  const auto result = simulator::run(c);
  for (const auto& rep : result.reports)
    if (rep.failed) err << "job from drone " << rep.source << " failed: " << rep.failure << '\n';
  std::ostringstream s;
  simulator::write_report_csv(s, result.reports);
  emit(o, s.str(), out);
  return kOk;
}

int cmd_compare(const Options& o, std::ostream& out, std::ostream& err) {
  auto c = resolve(o);
  echo_config(c, err);
  const auto cmp = simulator::compare_with_baseline(c);
  std::ostringstream s;
  char buf[256];
  s << "strategy,completion_time_s,battery_spread,delivered_fraction,failed_jobs\n";
  auto row = [&](const char* name, const simulator::StrategyMetrics& m) {
    std::snprintf(buf, sizeof buf, "%s,%.3f,%.6f,%.6f,%zu\n", name, m.completion_time_s,
                  m.battery_spread, m.delivered_fraction, m.failed_jobs);
    s << buf;
  };
  row("multipath", cmp.multipath);
  row("single_path", cmp.baseline);
  emit(o, s.str(), out);
  return kOk;
}

}  // namespace

void write_atomically(const std::filesystem::path& target, const std::string& content) {
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(Errc::scenario_error, "cannot write " + tmp.string());
    f << content;
    f.flush();
    if (!f) throw Error(Errc::scenario_error, "write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(Errc::scenario_error, "cannot move output into place: " + ec.message());
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"UAV surveillance offload simulator"};
  app.require_subcommand(1);
  Options o;

  auto* deploy = app.add_subcommand("deploy", "Place drones over an area and pick the anchor");
  add_common(deploy, o, false);
  auto* linkbudget = app.add_subcommand("linkbudget", "Link budget at a distance, or per edge");
  add_common(linkbudget, o, false);
  linkbudget->add_option("--distance", o.distance, "Link distance, meters");
  auto* plan = app.add_subcommand("plan", "Enumerate paths and schedule one source");
  add_common(plan, o, true);
  plan->add_option("--source", o.source, "Source drone id")->required();
  plan->add_flag("--single-slot", o.single_slot, "One allocation slot; fail if data does not fit");
  auto* simulate = app.add_subcommand("simulate", "Run a scenario and write the report table");
  add_common(simulate, o, true);
  auto* compare = app.add_subcommand("compare", "Multipath versus single widest path");
  add_common(compare, o, true);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (deploy->parsed()) return cmd_deploy(o, out, err);
    if (linkbudget->parsed()) return cmd_linkbudget(o, out, err);
    if (plan->parsed()) return cmd_plan(o, out, err);
    if (simulate->parsed()) return cmd_simulate(o, out, err);
    if (compare->parsed()) return cmd_compare(o, out, err);
  } catch (const CapacityExhausted& e) {
    err << "error: " << e.what() << '\n';
    return kCapacityExhausted;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kScenario;
  }
  return kUsage;
}

}  // namespace uavnet::cli
