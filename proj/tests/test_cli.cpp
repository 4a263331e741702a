#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "infogeo/commands.hpp"
#include "support/fixtures.hpp"

using namespace infogeo;
using namespace infogeo::cli;
using Catch::Matchers::WithinAbs;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const auto dir = fs::temp_directory_path() / "infogeo_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
  const auto path = scratch_dir() / name;
  std::ofstream(path, std::ios::binary) << text;
  return path.string();
}

std::string write_distribution(const std::string& name, const JointDistribution& d) {
  return write_file(name, io::distribution_to_json(d).dump());
}

RunConfig config(const std::string& command, const std::string& input) {
  RunConfig c;
  c.command = command;
  c.input = input;
  return c;
}

double entropy_of(const json& report, const std::vector<std::string>& names) {
  for (const auto& e : report["entropies"]) {
    if (e["subset"].get<std::vector<std::string>>() == names) return e["value"].get<double>();
  }
  FAIL("subset not in report");
  return 0.0;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("measures", "[cli]") {
  SECTION("fair bit") {
    const auto r = run(config("measures", write_distribution("fair.json", testing::fair_bit())));
    REQUIRE(r.exit_code == 0);
    const auto j = json::parse(r.output);
    CHECK_THAT(entropy_of(j, {"A"}), WithinAbs(1.0, 1e-15));
    CHECK(j["meta"]["version"] == kToolVersion);
    CHECK(j["meta"].contains("seed"));
    CHECK(j["meta"]["config"]["command"] == "measures");
  }
  SECTION("GHZ-Z distribution") {
    const auto r = run(config("measures", write_distribution("ghz.json", testing::ghz_z())));
    REQUIRE(r.exit_code == 0);
    const auto j = json::parse(r.output);
    CHECK_THAT(entropy_of(j, {"A", "B", "C"}), WithinAbs(1.0, 1e-14));
    REQUIRE(j["mutual_information"].size() == 3);
    for (const auto& mi : j["mutual_information"]) CHECK_THAT(mi["value"].get<double>(), WithinAbs(1.0, 1e-14));
    CHECK_THAT(j["co_information"].get<double>(), WithinAbs(1.0, 1e-14));
    CHECK(j["entropies"].size() == 7);
  }
  SECTION("not normalized input") {
    const auto path = write_file("bad.json", R"({"variables":[{"name":"A","cardinality":2}],"probabilities":[0.7,0.4]})");
    const auto r = run(config("measures", path));
    CHECK(r.exit_code == 2);
    CHECK(json::parse(r.error)["error"]["code"] == "NOT_NORMALIZED");
  }
  SECTION("syntactically broken JSON") {
    const auto r = run(config("measures", write_file("broken.json", "{\"variables\": [")));
    CHECK(r.exit_code == 2);
    CHECK(json::parse(r.error)["error"]["code"] == "MALFORMED_INPUT");
  }
  SECTION("sample CSV") {
    const auto path = write_file("samples.csv", "X,Y\n0,0\n1,1\n0,0\n1,1\n");
    const auto r = run(config("measures", path));
    REQUIRE(r.exit_code == 0);
    const auto j = json::parse(r.output);
    CHECK_THAT(entropy_of(j, {"X", "Y"}), WithinAbs(1.0, 1e-15));
    CHECK(j["distribution"]["probabilities"] == json::array({0.5, 0.0, 0.0, 0.5}));
  }
  SECTION("subset selection") {
    auto c = config("measures", write_distribution("xor.json", testing::xor_triple()));
    c.subset = {"C", "A"};
    const auto j = json::parse(run(c).output);
    CHECK(j["variables"] == json::array({"C", "A"}));
    CHECK(j["entropies"].size() == 3);
    CHECK_FALSE(j.contains("co_information"));
  }
}

TEST_CASE("reports round-trip their distribution", "[cli][property]") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const auto d = testing::random_distribution(rng, testing::random_cardinalities(rng, 3, 2, 4));
    const auto first = json::parse(run(config("measures", write_distribution("rt.json", d))).output);
    const auto again_path = write_file("rt2.json", first["distribution"].dump());
    const auto second = json::parse(run(config("measures", again_path)).output);
    REQUIRE(first["entropies"].size() == second["entropies"].size());
    for (std::size_t i = 0; i < first["entropies"].size(); ++i) {
      REQUIRE_THAT(second["entropies"][i]["value"].get<double>(),
                   WithinAbs(first["entropies"][i]["value"].get<double>(), 1e-12));
    }
    const auto geo = json::parse(run(config("geometry", again_path)).output);
    const auto geo_path = write_file("rt3.json", geo["meta"]["distribution"].dump());
    const auto third = json::parse(run(config("measures", geo_path)).output);
    REQUIRE_THAT(third["entropies"].back()["value"].get<double>(),
                 WithinAbs(first["entropies"].back()["value"].get<double>(), 1e-12));
  }
}

TEST_CASE("geometry", "[cli]") {
  SECTION("independent fair bits") {
    const auto r = run(config("geometry", write_distribution("ind3.json", testing::independent_fair_bits(3))));
    REQUIRE(r.exit_code == 0);
    const auto j = json::parse(r.output);
    for (const char* key : {"distances", "areas", "volumes", "n_volume", "surface_area", "reactivity", "meta"}) {
      CHECK(j.contains(key));
    }
    CHECK(j.size() == 7);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t k = 0; k < 3; ++k) {
        CHECK_THAT(j["distances"][i][k].get<double>(), WithinAbs(i == k ? 0.0 : 2.0, 1e-14));
      }
    }
    REQUIRE(j["areas"].size() == 1);
    CHECK_THAT(j["areas"][0]["info_area"].get<double>(), WithinAbs(3.0, 1e-14));
    CHECK_THAT(j["surface_area"].get<double>(), WithinAbs(6.0, 1e-13));
    CHECK_THAT(j["reactivity"].get<double>(), WithinAbs(2.0, 1e-13));
    CHECK(j["volumes"].empty());
  }
  SECTION("XOR triple") {
    const auto j = json::parse(run(config("geometry", write_distribution("xor.json", testing::xor_triple()))).output);
    CHECK_THAT(j["areas"][0]["info_area"].get<double>(), WithinAbs(0.0, 1e-12));
    CHECK_THAT(j["areas"][0]["blended_area"].get<double>(), WithinAbs(0.8660254037844386, 1e-9));
  }
  SECTION("four variables produce volumes") {
    const auto j = json::parse(run(config("geometry", write_distribution("ind4.json", testing::independent_fair_bits(4)))).output);
    REQUIRE(j["volumes"].size() == 1);
    CHECK_THAT(j["volumes"][0]["info_volume"].get<double>(), WithinAbs(4.0, 1e-13));
    CHECK(j["areas"].size() == 4);
    CHECK_THAT(j["surface_area"].get<double>(), WithinAbs(12.0, 1e-13));
  }
  SECTION("maximal correlation reports DIVERGENT") {
    const auto j = json::parse(run(config("geometry", write_distribution("ghz.json", testing::ghz_z()))).output);
    CHECK(j["reactivity"] == "DIVERGENT");
  }
  SECTION("two variables with --volume") {
    auto c = config("geometry", write_distribution("pair.json", testing::correlated_pair()));
    c.require_volume = true;
    const auto r = run(c);
    CHECK(r.exit_code == 3);
    CHECK(json::parse(r.error)["error"]["code"] == "SUBSET_TOO_SMALL");
  }
  SECTION("two variables without --volume") {
    const auto j = json::parse(run(config("geometry", write_distribution("pair.json", testing::correlated_pair()))).output);
    CHECK(j["surface_area"].is_null());
    CHECK(j["areas"].empty());
  }
}

TEST_CASE("quantum", "[cli]") {
  SECTION("GHZ with a single Z setting is DIVERGENT") {
    auto c = config("quantum", write_file("ghz3.json", R"({"kind":"ghz","n":3})"));
    c.scheme = "grid";
    c.n_theta = 1;
    c.n_phi = 1;
    c.settings = 1;
    const auto r = run(c);
    REQUIRE(r.exit_code == 0);
    const auto j = json::parse(r.output);
    CHECK(j["reactivity"] == "DIVERGENT");
    CHECK(j["meta"]["setting_count"] == 1);
  }
  SECTION("product state is finite and reproducible") {
    auto c = config("quantum", write_file("p3.json", R"({"kind":"product_zero","n":3})"));
    c.settings = 100;
    c.seed = 1;
    const auto a = run(c);
    const auto b = run(c);
    REQUIRE(a.exit_code == 0);
    CHECK(a.output == b.output);
    const auto j = json::parse(a.output);
    CHECK(j["reactivity"].is_number());
    CHECK(j["reactivity"].get<double>() > 0.0);
    CHECK(j["meta"]["seed"] == 1);
    CHECK(j["volume_stats"]["min"].get<double>() <= j["volume_stats"]["mean"].get<double>());
  }
  SECTION("non-normalized amplitudes") {
    const auto r = run(config("quantum", write_file("bad_state.json", R"({"kind":"amplitudes","n":1,"amplitudes":[[1,0],[1,0]]})")));
    CHECK(r.exit_code == 2);
    CHECK(json::parse(r.error)["error"]["code"] == "NOT_NORMALIZED");
  }
  SECTION("setting config file") {
    auto c = config("quantum", write_file("w3.json", R"({"kind":"w","n":3})"));
    c.setting_config = write_file("settings.json", R"({"scheme":"grid","count":16,"seed":3,"n_theta":2,"n_phi":2})");
    const auto j = json::parse(run(c).output);
    CHECK(j["meta"]["setting_count"] == 16);
    CHECK(j["meta"]["setting_config"]["scheme"] == "grid");
  }
  SECTION("bad scheme") {
    auto c = config("quantum", write_file("w3.json", R"({"kind":"w","n":3})"));
    c.scheme = "spiral";
    CHECK(run(c).exit_code == 2);
  }
  SECTION("two qubits is a precondition failure") {
    CHECK(run(config("quantum", write_file("ghz2.json", R"({"kind":"ghz","n":2})"))).exit_code == 3);
  }
}

TEST_CASE("sweep", "[cli]") {
  auto c = config("sweep", "");
  c.settings = 200;
  c.seed = 5;
  c.alpha_start = 0.0;
  c.alpha_stop = std::numbers::pi / 4;
  c.steps = 5;
  const auto r = run(c);
  REQUIRE(r.exit_code == 0);
  const auto rows = parse_csv(r.output);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == std::vector<std::string>{"alpha", "surface", "volume", "reactivity"});
  for (std::size_t i = 2; i < rows.size(); ++i) CHECK(std::stod(rows[i][0]) > std::stod(rows[i - 1][0]));

  SECTION("alpha = 0 matches product_zero") {
    auto q = config("quantum", write_file("p3.json", R"({"kind":"product_zero","n":3})"));
    q.settings = 200;
    q.seed = 5;
    const auto j = json::parse(run(q).output);
    CHECK_THAT(std::stod(rows[1][1]), WithinAbs(j["mean_surface_area"].get<double>(), 1e-12));
    CHECK_THAT(std::stod(rows[1][2]), WithinAbs(j["mean_n_volume"].get<double>(), 1e-12));
    CHECK_THAT(std::stod(rows[1][3]), WithinAbs(j["reactivity"].get<double>(), 1e-12));
  }
  SECTION("alpha = pi/4 matches GHZ") {
    auto q = config("quantum", write_file("ghz3.json", R"({"kind":"ghz","n":3})"));
    q.settings = 200;
    q.seed = 5;
    const auto j = json::parse(run(q).output);
    CHECK_THAT(std::stod(rows[5][1]), WithinAbs(j["mean_surface_area"].get<double>(), 1e-9));
    CHECK_THAT(std::stod(rows[5][2]), WithinAbs(j["mean_n_volume"].get<double>(), 1e-9));
    CHECK_THAT(std::stod(rows[5][3]), WithinAbs(j["reactivity"].get<double>(), 1e-9));
  }
  SECTION("bad bounds") {
    auto bad = c;
    bad.steps = 1;
    CHECK(run(bad).exit_code == 2);
    bad = c;
    bad.alpha_stop = -1.0;
    CHECK(run(bad).exit_code == 2);
  }
}

TEST_CASE("cli binary exit codes", "[cli][binary]") {
  const std::string exe = INFOGEO_CLI_PATH;
  const auto out = (scratch_dir() / "bin_out.json").string();
  auto status = [&](const std::string& args) {
    const int raw = std::system((exe + " " + args + " >" + out + " 2>/dev/null").c_str());
    return WEXITSTATUS(raw);
  };
  CHECK(status("measures --input " + write_distribution("fair.json", testing::fair_bit())) == 0);
  CHECK(status("measures --input " +
               write_file("bad.json", R"({"variables":[{"name":"A","cardinality":2}],"probabilities":[0.7,0.4]})")) ==
        2);
  CHECK(status("geometry --volume --input " + write_distribution("pair.json", testing::correlated_pair())) == 3);
  CHECK(status("measures") == 2);
  CHECK(status("sweep --steps 3 --settings 20 --output " + (scratch_dir() / "sweep.csv").string()) == 0);
  std::ifstream csv(scratch_dir() / "sweep.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "alpha,surface,volume,reactivity");
}
