#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gravdirac/config.hpp"
#include "gravdirac/errors.hpp"
#include "gravdirac/run.hpp"

using namespace gravdirac;
namespace fs = std::filesystem;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("gravdirac_test_" + name);
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST_CASE("minimal config fills defaults") {
  const auto c = parse_config_string("[nucleus]\nZ = 26\n");
  CHECK(c.nucleus.Z == 26);
  CHECK(c.law.name == "maxwell");
  CHECK(c.tasks == std::vector<std::string>{"classify"});
  CHECK(c.format == "csv");
  CHECK_NOTHROW(validate(c));
}

TEST_CASE("parse errors name the offending key") {
  CHECK(kind_of([] { parse_config_string("[nucleus]\nZ = 1\nZ = 2\n"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_config_string("[nucleus]\nZq = 1\n"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_config_string("[bogus]\nx = 1\n"); }) == ErrorKind::ParseError);
  try {
    parse_config_string("[solver]\ngrid_nodes = many\n");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(std::string(e.what()).find("grid_nodes") != std::string::npos);
  }
}

TEST_CASE("validation collects every violation") {
  try {
    parse_config_string("[nucleus]\nZ = 0\n[solver]\ngrid_nodes = 10\n[run]\ntasks = fly\n");
    FAIL("expected ValidationError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ValidationError);
    const std::string w = e.what();
    CHECK(w.find("Z") != std::string::npos);
    CHECK(w.find("grid_nodes") != std::string::npos);
    CHECK(w.find("fly") != std::string::npos);
  }
}

TEST_CASE("serialize round trip") {
  auto c = parse_config_string("[nucleus]\nZ = 1\n[law]\nname = \"born\"\nfield_strength = 2.5\n");
  c.spectrum.thetas = {0.0, 0.1, 0.7853981633974483};
  c.nucleus.M_adm = 1.0 / 3;
  c.bs.scan_Z = std::pair{1, 5};
  c.profile.radii = {1e-3, 0.1, 7.0};
  c.solver.x_max = 321.5;
  c.tasks = {"profile", "bs-spectrum"};
  CHECK(parse_config_string(serialize(c)) == c);
  CHECK(serialize(parse_config_string(serialize(c))) == serialize(c));
}

TEST_CASE("tasks run in dependency order") {
  const auto t = ordered_tasks({"spectrum", "classify", "profile", "validate-law"});
  CHECK(t == std::vector<std::string>{"profile", "validate-law", "classify", "spectrum"});
  CHECK(ordered_tasks({"bs-spectrum", "bs-spectrum", "oscillate"}) ==
        std::vector<std::string>{"oscillate", "bs-spectrum"});
}

TEST_CASE("run writes outputs and the manifest deterministically") {
  const auto ini =
      "[nucleus]\nZ = 26\nN = 30\n[bs]\nmodel = SR\nn_max = 2\nscan_Z = 1:40\n"
      "[profile]\npoints = 9\n[run]\ntasks = classify, profile, bs-spectrum\n";
  auto c = parse_config_string(ini);
  c.output_dir = scratch("run_a").string();
  const auto m1 = run(c);
  CHECK(m1.ok());
  REQUIRE(m1.tasks.size() == 3);
  const fs::path a(c.output_dir);
  CHECK(fs::exists(a / "manifest.json"));
  CHECK(fs::exists(a / "profile.csv"));
  CHECK(fs::exists(a / "bs-spectrum.csv"));
  const auto man = nlohmann::json::parse(slurp(a / "manifest.json"));
  CHECK(man.at("version") == version());
  CHECK(man.at("ok") == true);
  CHECK(man.at("tasks").size() == 3);
  // the snapshot reproduces the config
  CHECK(parse_config_string(man.at("config").get<std::string>()) == c);

  c.output_dir = scratch("run_b").string();
  run(c);
  const fs::path b(c.output_dir);
  CHECK(slurp(a / "profile.csv") == slurp(b / "profile.csv"));
  CHECK(slurp(a / "bs-spectrum.csv") == slurp(b / "bs-spectrum.csv"));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("failing spectrum leaves a partial file and a failed manifest") {
  auto c = parse_config_string(
      "[nucleus]\nZ = 50\n[constants]\ngamma_pe = 0\n[spectrum]\nwindow_hi = 0.99999\n"
      "[solver]\ngrid_nodes = 20000\n[run]\ntasks = spectrum\n");
  c.output_dir = scratch("run_edge").string();
  const auto m = run(c);
  CHECK_FALSE(m.ok());
  REQUIRE(m.tasks.size() == 1);
  CHECK(m.tasks[0].error_kind == "WindowAtEdge");
  CHECK(m.tasks[0].output.ends_with(".partial"));
  CHECK(fs::exists(m.tasks[0].output));
  CHECK(fs::exists(fs::path(c.output_dir) / "manifest.json"));
  fs::remove_all(c.output_dir);
}

TEST_CASE("table and report formatting") {
  Table t;
  t.columns = {"a", "b"};
  t.rows.push_back({1.5, "x"});
  t.rows.push_back({ordered_json::array({1, 2}), "inf"});
  const auto csv = t.to_csv();
  CHECK(csv.starts_with("a,b\n"));
  CHECK(csv.find("1;2") != std::string::npos);
  CHECK(nlohmann::json::parse(t.to_json()).size() == 2);
  Report r;
  r.add("esa", "EssentiallySelfAdjoint");
  r.add("count", 3);
  CHECK(r.to_text().find("count = 3") != std::string::npos);
  CHECK(format_double(0.1) == "0.10000000000000001");
}
