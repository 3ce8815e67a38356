#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"

using namespace radiant;
using namespace radiant::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("radiant-test-" + name);
  fs::remove_all(p);
  return p;
}

Json read_json(const fs::path& p) {
  std::ifstream in(p);
  return Json::parse(in);
}

int run_exe(const std::string& args) {
  const std::string cmd = std::string(RADIANT_EXE) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("config round trip") {
  RunConfig cfg = defaults_for("solve");
  cfg.space = "dr:4,3";
  cfg.schedule = {2.0, 4.0};
  cfg.seed = 12345678901ull;
  cfg.tol = 1e-9;
  CHECK(apply_json(defaults_for("solve"), to_json(cfg)) == cfg);
  CHECK(defaults_for("verify").space == "dr:2,1");
}

TEST_CASE("config errors name the field") {
  const RunConfig base = defaults_for("classify");
  try {
    apply_json(base, Json{{"spacee", 0.1}});
    FAIL("unknown key accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ConfigError);
    CHECK(std::string(e.what()).find("spacee") != std::string::npos);
  }
  CHECK_THROWS_AS(apply_json(base, Json{{"tol", "small"}}), Error);
  CHECK_THROWS_AS(apply_json(base, Json{{"seed", -1}}), Error);
  RunConfig bad = base;
  bad.mode = "sideways";
  CHECK_THROWS_AS(validate(bad), Error);
  bad = base;
  bad.h1prime = true;
  bad.psi = "power:2";
  CHECK_THROWS_AS(validate(bad), Error);
  bad = base;
  bad.schedule = {4.0, 2.0};
  CHECK_THROWS_AS(validate(bad), Error);
}

TEST_CASE("classify writes a versioned report") {
  RunConfig cfg = defaults_for("classify");
  cfg.space = "dr:2,1";
  cfg.weight = "exp:1";
  cfg.out = scratch("classify").string();
  std::ostringstream log;
  CHECK(run(cfg, log) == 0);
  const Json r = read_json(fs::path(cfg.out) / "report.json");
  CHECK(r["schema_version"] == kSchemaVersion);
  CHECK(r["results"]["classification"]["verdict"] == "bounded");
  CHECK(apply_json(defaults_for("classify"), r["config"]) == cfg);
  CHECK(fs::exists(fs::path(cfg.out) / "timing.json"));
}

TEST_CASE("solve writes a profile") {
  RunConfig cfg = defaults_for("solve");
  cfg.psi = "linear";
  cfg.r_max = 1.0;
  cfg.out = scratch("solve").string();
  std::ostringstream log;
  CHECK(run(cfg, log) == 0);
  std::ifstream csv(fs::path(cfg.out) / "profile.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "r,u");
  const Json r = read_json(fs::path(cfg.out) / "report.json");
  CHECK(r["results"]["solution"]["center_value"].get<double>() == doctest::Approx(1.0 / std::sinh(1.0)).epsilon(1e-8));
}

TEST_CASE("executable exit codes") {
  const fs::path out = scratch("exe");
  CHECK(run_exe("classify --out " + (out / "a").string()) == 0);
  CHECK(run_exe("classify --psi power:2 --out " + (out / "b").string()) == 2);
  CHECK(run_exe("solve --mode bounded --psi sqrt --weight constant --out " + (out / "c").string()) == 2);
  CHECK(run_exe("solve --mode nowhere --out " + (out / "d").string()) == 1);
  CHECK(run_exe("solve --no-such-flag") == 1);
  CHECK(run_exe("") == 1);

  // malformed config: exit 1 and nothing written
  const fs::path cfg = out / "bad.json";
  fs::create_directories(out);
  std::ofstream(cfg) << "{\"space\": \"euclid:3\",, }";
  CHECK(run_exe("classify --config " + cfg.string() + " --out " + (out / "e").string()) == 1);
  CHECK_FALSE(fs::exists(out / "e"));

  // flags override the file
  const fs::path good = out / "good.json";
  std::ofstream(good) << R"({"space": "euclid:3", "weight": "constant", "out": "ignored"})";
  CHECK(run_exe("classify --config " + good.string() + " --weight exp:1 --out " + (out / "f").string()) == 0);
  const Json r = read_json(out / "f" / "report.json");
  CHECK(r["config"]["weight"] == "exp:1");
  CHECK(r["results"]["classification"]["verdict"] == "bounded");
}

}
