#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

std::string binary() {
  const char* env = std::getenv("WEYLBEC_BIN");
  REQUIRE_MESSAGE(env != nullptr, "WEYLBEC_BIN must point at the CLI binary");
  return env;
}

int run(const std::string& args) {
  const std::string cmd = binary() + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("weylbec_test_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static inline int counter = 0;
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("verify writes a passing report for the first example") {
  TempDir dir;
  CHECK(run("verify --model example1 --grid 256 --out " + dir.path.string()) == 0);
  const std::string rep = slurp(dir.path / "bec_report.json");
  CHECK(rep.find("\"verdict\": \"pass\"") != std::string::npos);
  CHECK(rep.find("\"bulk\": [") != std::string::npos);
}

TEST_CASE("outputs are byte-identical across runs") {
  TempDir d1, d2;
  REQUIRE(run("verify --model example2 --grid 256 --out " + d1.path.string()) == 0);
  REQUIRE(run("verify --model example2 --grid 256 --out " + d2.path.string()) == 0);
  CHECK(slurp(d1.path / "bec_report.json") == slurp(d2.path / "bec_report.json"));

  TempDir d3, d4;
  REQUIRE(run("arcs --model example3 --grid 256 --out " + d3.path.string()) == 0);
  REQUIRE(run("arcs --model example3 --grid 256 --out " + d4.path.string()) == 0);
  CHECK(slurp(d3.path / "arcs.csv") == slurp(d4.path / "arcs.csv"));
  CHECK(slurp(d3.path / "arcs.json") == slurp(d4.path / "arcs.json"));
}

TEST_CASE("weyl on a gapped custom model: empty set, exit 0") {
  TempDir dir;
  CHECK(run("weyl --a 3 --b \"sin(ky)\" --grid 128 --out " + dir.path.string()) == 0);
  const std::string j = slurp(dir.path / "weyl.json");
  CHECK(j.find("\"points\": []") != std::string::npos);
  CHECK(j.find("\"all_passed\": true") != std::string::npos);
}

TEST_CASE("weyl on example 2 reports four charged points") {
  TempDir dir;
  CHECK(run("weyl --model example2 --grid 256 --out " + dir.path.string()) == 0);
  const std::string j = slurp(dir.path / "weyl.json");
  CHECK(j.find("\"charge\": 1") != std::string::npos);
  CHECK(j.find("\"charge\": -1") != std::string::npos);
}

TEST_CASE("edge-spectrum writes the midgap flow") {
  TempDir dir;
  CHECK(run("edge-spectrum --model qwz:1:1.5 --samples 180 --out " + dir.path.string()) == 0);
  const std::string csv = slurp(dir.path / "spectrum.csv");
  CHECK(csv.rfind("sample_index,s,eigenvalue,left_weight", 0) == 0);
  CHECK(csv.size() > 100);  // the chiral branch produces rows

  TempDir gapped;  // constant gapped loop: header only
  CHECK(run("edge-spectrum --a 3 --b \"sin(ky)\" --loop x:0.5 --samples 120 --out " +
            gapped.path.string()) == 0);
  CHECK(slurp(gapped.path / "spectrum.csv") == "sample_index,s,eigenvalue,left_weight\n");

  TempDir circle;  // midgap branch on a circle around a Weyl projection
  CHECK(run("edge-spectrum --model example1 --loop \"circle:3*pi/2,pi,0.3\" --samples 180 "
            "--out " +
            circle.path.string()) == 0);
  const std::string branch = slurp(circle.path / "spectrum.csv");
  CHECK(std::count(branch.begin(), branch.end(), '\n') > 60);
}

TEST_CASE("assumption violations exit with code 2") {
  TempDir dir;
  CHECK(run("verify --model qwz:1:1.5 --grid 128 --out " + dir.path.string()) == 2);
  CHECK(run("weyl --a 0 --b \"sin(ky - 0.1)*sin(ky - 0.1)*sin(ky - 0.1)*sin(ky - 0.1)*sin(ky - 0.1)\" --grid 128 --out " +
            dir.path.string()) == 2);
}

TEST_CASE("configuration mistakes exit with code 4") {
  TempDir dir;
  CHECK(run("verify --model nosuchmodel --out " + dir.path.string()) == 4);
  CHECK(run("verify --a \"cos(kz)\" --b 0 --out " + dir.path.string()) == 4);
  CHECK(run("arcs --out " + dir.path.string()) == 4);
  CHECK(run("edge-spectrum --model example1 --loop bogus --out " + dir.path.string()) == 4);
}

TEST_CASE("base point override accepts pi expressions") {
  TempDir dir;
  CHECK(run("verify --model example2 --grid 256 --base \"pi/4,7*pi/4\" --out " +
            dir.path.string()) == 0);
}

TEST_CASE("model config file replaces flags") {
  TempDir dir;
  const fs::path cfg = dir.path / "model.json";
  std::ofstream(cfg) << R"json({"name": "first example", "a": "2 + cos(kx) + cos(ky)",
                                "b": "sin(ky)", "grid": 256, "base": [0.0, 0.0]})json";
  CHECK(run("verify --config " + cfg.string() + " --out " + dir.path.string()) == 0);
  const std::string rep = slurp(dir.path / "bec_report.json");
  CHECK(rep.find("\"model\": \"first example\"") != std::string::npos);
}

}  // TEST_SUITE
