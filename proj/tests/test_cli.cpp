#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "cli/output.hpp"

using namespace necklace::cli;
using nlohmann::json;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "necklace");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

RunConfig parse(std::vector<std::string> args) {
  args.insert(args.begin(), "necklace");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  auto cfg = parse_args(static_cast<int>(argv.size()), argv.data());
  REQUIRE(cfg);
  return *cfg;
}

int exit_code_of(const std::string& command) {
  const int status = std::system((command + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("necklace_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("defaults and flag parsing") {
  const RunConfig d = parse({"bands"});
  CHECK(d.subcommand == Subcommand::Bands);
  CHECK(d.tol == 1e-10);
  CHECK(d.grid == 4000);
  CHECK(d.omega_max == 6.0);
  CHECK(d.samples_per_edge == 64);
  CHECK(d.format == OutputFormat::Json);

  const RunConfig h = parse({"homoclinic", "--eps", "0.03", "--symmetry", "both", "--L", "2"});
  CHECK(h.eps == 0.03);
  CHECK(h.L == 2.0);
  CHECK(h.symmetry == SymmetryChoice::Both);
  CHECK(symmetries(h.symmetry).size() == 2);

  const RunConfig b = parse({"boundstate", "--lambda", "-0.01", "--method", "both"});
  CHECK(b.resolved_eps() == doctest::Approx(0.1));
  CHECK(b.method == Method::Both);

  const RunConfig v = parse({"verify", "--eps", "0.04,0.02"});
  REQUIRE(v.eps_list.size() == 2);
  CHECK(v.eps_list[1] == 0.02);
}

TEST_CASE("bad usage exits with code 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"bands", "--L", "-1"}).code == 2);
  CHECK(run({"bands", "--tol", "0"}).code == 2);
  CHECK(run({"bands", "--no-such-flag"}).code == 2);
  CHECK(run({"homoclinic"}).code == 2);
  CHECK(run({"homoclinic", "--eps", "0.05", "--symmetry", "sideways"}).code == 2);
  CHECK(run({"boundstate", "--lambda", "0.5"}).code == 2);
  CHECK(run({"sweep"}).code == 2);
  CHECK(run({"boundstate", "--eps", "0.05", "--samples-per-edge", "31"}).code == 2);
  const Result r = run({"homoclinic", "--eps", "0.05"});
  CHECK(r.code == 0);
  CHECK(r.err.empty());
}

TEST_CASE("bands output") {
  const Result r = run({"bands"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["schema_version"] == kSchemaVersion);
  CHECK(doc["config"]["subcommand"] == "bands");
  CHECK(doc["data"]["bands"][0]["omega_lo"] == 0.0);
  CHECK(doc["data"]["flat_bands"].size() == 6);
  CHECK(doc["data"]["flat_bands"][1]["location"] == "edge");
  CHECK(doc["data"]["trace_table"]["omega"].size() == 4000);

  const Result csv = run({"bands", "--format", "csv", "--grid", "200"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("omega,T,in_band\r\n", 0) == 0);
}

TEST_CASE("csv rendering quotes special fields") {
  Table t;
  t.columns = {"a", "b"};
  t.rows = {{"1", "x,y"}, {"2", "say \"hi\""}};
  CHECK(render_csv(t) == "a,b\r\n1,\"x,y\"\r\n2,\"say \"\"hi\"\"\"\r\n");
  CHECK(suffixed_path("out/run.csv", "link") == "out/run_link.csv");
  CHECK(format_number(0.1) == "0.1");
}

TEST_CASE("both symmetries write one file each") {
  const auto dir = scratch_dir("both");
  const std::string out = (dir / "orbit.csv").string();
  const Result r = run({"homoclinic", "--eps", "0.05", "--symmetry", "both", "--format", "csv", "--out", out});
  REQUIRE(r.code == 0);
  const std::string link = slurp(dir / "orbit_link.csv");
  const std::string ring = slurp(dir / "orbit_ring.csv");
  CHECK(link.rfind("n,alpha,beta,gamma,delta", 0) == 0);
  CHECK(ring.rfind("n,alpha,beta,gamma,delta", 0) == 0);
  CHECK(link != ring);

  const Result j = run({"homoclinic", "--eps", "0.05", "--symmetry", "both"});
  REQUIRE(j.code == 0);
  const json doc = json::parse(j.out);
  CHECK(doc["data"].contains("link"));
  CHECK(doc["data"].contains("ring"));

  CHECK(run({"homoclinic", "--eps", "0.05", "--symmetry", "both", "--format", "csv"}).code == 2);
}

TEST_CASE("runs are deterministic") {
  const Result a = run({"boundstate", "--eps", "0.08", "--method", "both", "--symmetry", "both"});
  const Result b = run({"boundstate", "--eps", "0.08", "--method", "both", "--symmetry", "both"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const json doc = json::parse(a.out);
  CHECK(doc["data"]["link"]["sup_difference"].get<double>() < 1e-6);
  CHECK(doc["data"]["ring"]["profiles"]["orbit"]["max_kirchhoff_residual"].get<double>() < 1e-8);

  const Result s1 = run({"sweep", "--eps", "0.05,0.04,0.03", "--symmetry", "both", "--threads", "1"});
  const Result s4 = run({"sweep", "--eps", "0.05,0.04,0.03", "--symmetry", "both", "--threads", "4"});
  REQUIRE(s1.code == 0);
  CHECK(s1.out.find("\"threads\": 1") != std::string::npos);
  const json j1 = json::parse(s1.out), j4 = json::parse(s4.out);
  CHECK(j1["data"] == j4["data"]);
  CHECK(j1["data"]["jobs"].size() == 6);
  CHECK(j1["data"]["jobs"][1]["symmetry"] == "ring");
}

TEST_CASE("sweep reports failing jobs") {
  const Result r = run({"sweep", "--eps", "0.05,0.3"});
  CHECK(r.code == 3);
  const json doc = json::parse(r.out);
  CHECK(doc["data"]["jobs"][0]["status"] == "ok");
  CHECK(doc["data"]["jobs"][1]["status"].get<std::string>().rfind("error", 0) == 0);
}

TEST_CASE("verify passes and catches a broken vertex rule") {
  const Result ok = run({"verify", "--eps", "0.04,0.02"});
  CHECK(ok.code == 0);
  const json doc = json::parse(ok.out);
  CHECK(doc["data"]["passed"] == true);
  CHECK(doc["data"]["checks"].size() > 20);

  const Result bad = run({"verify", "--inject-kirchhoff-fault"});
  CHECK(bad.code == 3);
  CHECK(bad.err.find("kirchhoff_residual") != std::string::npos);
  CHECK(json::parse(bad.out)["data"]["passed"] == false);
}

TEST_CASE("map output") {
  const Result r = run({"map", "--eps", "0.05", "--alpha", "0.5", "--beta", "0.1", "--steps", "1"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  const auto& orbit = doc["data"]["orbit"];
  REQUIRE(orbit.size() == 2);
  CHECK(orbit[1]["alpha"].get<double>() * 0.05 == doctest::Approx(0.0260503128812025).epsilon(1e-10));
  CHECK(doc["data"]["jacobian_origin"]["det"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("executable exit codes") {
  const std::string exe = NECKLACE_CLI_PATH;
  CHECK(exit_code_of(exe + " bands") == 0);
  CHECK(exit_code_of(exe + " --help") == 0);
  CHECK(exit_code_of(exe + " bands --L 0") == 2);
  CHECK(exit_code_of(exe + " verify --inject-kirchhoff-fault") == 3);
  CHECK(exit_code_of(exe + " bands --out /nonexistent-dir/x.json") == 4);
  const auto dir = scratch_dir("exe");
  const auto file = dir / "bands.json";
  CHECK(exit_code_of(exe + " bands --out " + file.string()) == 0);
  CHECK(json::parse(slurp(file))["schema_version"] == kSchemaVersion);
}

}
