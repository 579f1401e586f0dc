#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "uavnet/cli.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kScenarios = fs::path(UAVNET_SOURCE_DIR) / "scenarios";

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = uavnet::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path temp(const std::string& name) { return fs::temp_directory_path() / ("uavnet_cli_" + name); }

fs::path write_temp(const std::string& name, const std::string& content) {
  const auto p = temp(name);
  std::ofstream(p) << content;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream s(text);
  for (std::string l; std::getline(s, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST_CASE("deploy on a single cell") {
  const auto m = write_temp("one.txt", "1\n");
  const auto r = invoke({"deploy", "--matrix", m.string()});
  CHECK(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 2);
  CHECK(l[0] == "id,x,y,anchor");
  CHECK(l[1].substr(0, 2) == "0,");
  CHECK(l[1].find(",true") != std::string::npos);
}

TEST_CASE("deploy echoes the resolved configuration to stderr") {
  const auto m = write_temp("two.txt", "11\n");
  const auto r = invoke({"deploy", "--matrix", m.string(), "--altitude", "50"});
  CHECK(r.code == 0);
  CHECK(r.err.find("# resolved configuration") != std::string::npos);
  CHECK(r.err.find("altitude_m = 50") != std::string::npos);
}

TEST_CASE("deploy picks the drone nearest the area centroid") {
  const auto r = invoke({"deploy", "--matrix", (kScenarios / "table1_area.txt").string()});
  REQUIRE(r.code == 0);
  auto l = lines(r.out);
  l.erase(l.begin());
  REQUIRE(l.size() == 41);
  std::vector<std::pair<double, double>> pos;
  int printed_anchor = -1;
  for (const auto& row : l) {
    int id;
    double x, y;
    char anchor[8] = {};
    REQUIRE(std::sscanf(row.c_str(), "%d,%lf,%lf,%7s", &id, &x, &y, anchor) == 4);
    pos.emplace_back(x, y);
    if (std::string(anchor) == "true") printed_anchor = id;
  }
  double cx = 0, cy = 0;
  for (const auto& [x, y] : pos) cx += x, cy += y;
  cx /= pos.size();
  cy /= pos.size();
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pos.size(); ++i) {
    const double d = std::hypot(pos[i].first - cx, pos[i].second - cy);
    if (d < best_d - 1e-6) best_d = d, best = static_cast<int>(i);
  }
  CHECK(printed_anchor == best);
}

TEST_CASE("invalid polygon is reported, not crashed on") {
  const auto p = write_temp("bowtie.txt", "0,0\n0.01,0.01\n0,0.01\n0.01,0\n");
  const auto r = invoke({"deploy", "--area", p.string()});
  CHECK(r.code == uavnet::cli::kScenario);
  CHECK(r.err.find("error:") != std::string::npos);
  CHECK(r.err.find("invalid polygon") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(invoke({}).code == uavnet::cli::kUsage);
  CHECK(invoke({"frobnicate"}).code == uavnet::cli::kUsage);
  CHECK(invoke({"simulate"}).code == uavnet::cli::kUsage);
  CHECK(invoke({"plan", (kScenarios / "table1.scenario").string()}).code ==
        uavnet::cli::kUsage);
  CHECK(invoke({"simulate", (kScenarios / "table1.scenario").string(), "--drain-mode", "x"})
            .code == uavnet::cli::kUsage);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("scenario errors") {
  const auto table1 = (kScenarios / "table1.scenario").string();
  const auto unknown = invoke({"simulate", table1, "--set", "warp_factor=9"});
  CHECK(unknown.code == uavnet::cli::kScenario);
  CHECK(unknown.err.find("warp_factor") != std::string::npos);
  CHECK(invoke({"simulate", table1, "--set", "noequals"}).code == uavnet::cli::kScenario);
  CHECK(invoke({"simulate", "/nonexistent/x.scenario"}).code == uavnet::cli::kScenario);
  CHECK(invoke({"deploy", "--matrix", write_temp("zeros.txt", "00\n00\n").string()}).code ==
        uavnet::cli::kScenario);
}

TEST_CASE("simulate table1 writes the report table") {
  const auto r = invoke({"simulate", (kScenarios / "table1.scenario").string()});
  REQUIRE(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 5);
  CHECK(l[0] ==
        "data_bits,path,prev_capacity_bps,transmission_time_s,initial_battery_pct,"
        "remaining_battery_pct,current_capacity_bps");
  CHECK(l[1].rfind("600000000,4->8->15->23->24,3500000->3500000->3400000->3500000,", 0) == 0);
  CHECK(l[4].rfind("600000000,40->33->24,", 0) == 0);
}

TEST_CASE("activation 1.0 on a two-drone fleet runs one job") {
  const auto m = write_temp("pair.txt", "11\n");
  const auto s = write_temp("pair.scenario", "area_matrix = " + m.string() +
                                                 "\nbattery_initial = 1\ndata_bits = 1e6\n");
  const auto r = invoke({"simulate", s.string(), "--activation", "1.0", "--seed", "1"});
  REQUIRE(r.code == 0);
  CHECK(lines(r.out).size() == 2);
}

TEST_CASE("same seed, byte-identical output files") {
  const auto ref = (kScenarios / "reference41.scenario").string();
  const auto a = temp("a.csv"), b = temp("b.csv"), c = temp("c.csv");
  REQUIRE(invoke({"simulate", ref, "--seed", "11", "--out", a.string()}).code == 0);
  REQUIRE(invoke({"simulate", ref, "--seed", "11", "--out", b.string()}).code == 0);
  REQUIRE(invoke({"simulate", ref, "--seed", "12", "--out", c.string()}).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) != slurp(c));
  CHECK_FALSE(fs::exists(a.string() + ".tmp"));
}

TEST_CASE("single-slot plan that cannot fit exits with the capacity code") {
  const auto table1 = (kScenarios / "table1.scenario").string();
  const auto r = invoke({"plan", table1, "--source", "40", "--single-slot"});
  CHECK(r.code == uavnet::cli::kCapacityExhausted);
  CHECK(r.err.find("capacity exhausted") != std::string::npos);
  const auto ok = invoke({"plan", table1, "--source", "40"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("40->33->24") != std::string::npos);
  const auto fits =
      invoke({"plan", table1, "--source", "40", "--single-slot", "--set", "data_bits=1e6"});
  CHECK(fits.code == 0);
}

TEST_CASE("linkbudget at a distance") {
  const auto r = invoke({"linkbudget", "--distance", "100"});
  REQUIRE(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 2);
  CHECK(l[0] == "distance_m,path_loss_db,zeta,snr,capacity_bps");
  CHECK(invoke({"linkbudget", "--distance", "0.5"}).code == uavnet::cli::kScenario);
}

TEST_CASE("compare prints both strategies") {
  const auto r = invoke({"compare", (kScenarios / "reference41.scenario").string()});
  REQUIRE(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 3);
  CHECK(l[1].rfind("multipath,", 0) == 0);
  CHECK(l[2].rfind("single_path,", 0) == 0);
}

TEST_CASE("atomic writes replace the target and leave no temp file") {
  const auto target = temp("atomic.txt");
  std::ofstream(target) << "old contents that are longer than the new ones\n";
  uavnet::cli::write_atomically(target, "new\n");
  CHECK(slurp(target) == "new\n");
  CHECK_FALSE(fs::exists(target.string() + ".tmp"));
  CHECK_THROWS(uavnet::cli::write_atomically("/nonexistent/dir/out.txt", "x"));
}
