#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + std::string(WEDGECTL_PATH) + " " + args + " 2>&1";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string zoo_file(const std::string& name) { return std::string(WEDGE_ZOO_DIR) + "/" + name + ".json"; }

json read_json(const std::string& path) {
  std::ifstream in(path);
  return json::parse(in);
}

std::string write_temp(const std::string& name, const json& j) {
  fs::path dir = fs::temp_directory_path() / "wedgectl_tests";
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream(p) << j.dump(2);
  return p.string();
}

}  // namespace

TEST(Cli, CheckPassesOnZooFile) {
  CliRun r = run("check " + zoo_file("aff"));
  EXPECT_EQ(r.code, 0) << r.out;
}

TEST(Cli, CheckWholeZooDirectory) {
  CliRun r = run("--format json check " + std::string(WEDGE_ZOO_DIR));
  EXPECT_EQ(r.code, 0) << r.out;
  json j = json::parse(r.out);
  EXPECT_EQ(j.at("schema"), "wedgectl/batch/1");
}

TEST(Cli, BrokenJacobiNamesTheTriple) {
  json j = read_json(zoo_file("dilation"));
  j["brackets"].push_back({{"i", 0}, {"j", 1}, {"coeffs", {{"2", "1"}}}});
  CliRun r = run("check " + write_temp("broken_jacobi.json", j));
  EXPECT_EQ(r.code, 1) << r.out;
  EXPECT_NE(r.out.find("Jacobi"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("(e1, e2, h)"), std::string::npos) << r.out;
}

TEST(Cli, NonInvariantConeFails) {
  json j = read_json(zoo_file("aff"));
  j["cone"]["generators"] = json::array({json::array({"1", "1"})});
  j.erase("expected");
  CliRun r = run("wedge " + write_temp("aff_bad_cone.json", j));
  EXPECT_EQ(r.code, 1) << r.out;
  EXPECT_NE(r.out.find("reflect certificate failed"), std::string::npos) << r.out;
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("check --bogus " + zoo_file("aff")).code, 2);
  EXPECT_EQ(run("").code, 2);
  json j = read_json(zoo_file("aff"));
  j["tau"][0][0] = 1.5;
  CliRun r = run("check " + write_temp("aff_parse.json", j));
  EXPECT_EQ(r.code, 2) << r.out;
  EXPECT_NE(r.out.find("$.tau[0][0]"), std::string::npos) << r.out;
  EXPECT_EQ(run("wedge zoo:nonexistent").code, 2);
}

TEST(Cli, JsonOutputIsDeterministic) {
  CliRun a = run("--format json wedge zoo:poincare3");
  CliRun b = run("wedge zoo:poincare3 --format json");
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  json j = json::parse(a.out);
  EXPECT_EQ(j.at("schema"), "wedgectl/wedge-report/1");
  EXPECT_EQ(j.at("verdict"), "pass");
}

TEST(Cli, ToleranceFromEnvironment) {
  const std::string args = "--format json decompose zoo:sl2 --vector 1,2,3";
  CliRun r = run(args);
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(json::parse(r.out).at("tolerance").at("source"), "default");
  CliRun e = run(args, "env WEDGECTL_TOL=1e-7 ");
  EXPECT_EQ(e.code, 0) << e.out;
  EXPECT_EQ(json::parse(e.out).at("tolerance").at("source"), "WEDGECTL_TOL");
  EXPECT_EQ(json::parse(e.out).at("tolerance").at("value"), 1e-7);
  EXPECT_EQ(run(args, "env WEDGECTL_TOL=abc ").code, 2);
}

TEST(Cli, OracleAndTube) {
  CliRun r = run("--format json oracle zoo:poincare3 --count 200");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(json::parse(r.out).at("disagreements"), 0);
  EXPECT_EQ(run("tube zoo:poincare3 --vector 1,1,0,0,0,0").code, 0);
  EXPECT_EQ(run("tube zoo:poincare3 --vector 1,0,0,0,0,0").code, 0);
}

TEST(Cli, Decompose) {
  CliRun r = run("--format json decompose " + std::string(WEDGE_FIXTURE_DIR) + "/abelian3.json --vector 1,2,3");
  EXPECT_EQ(r.code, 0) << r.out;
  json j = json::parse(r.out);
  ASSERT_EQ(j.at("components").size(), 3u);
  EXPECT_EQ(j.at("components")[0].at("weight"), -1);
  EXPECT_EQ(j.at("components")[0].at("component"), json({"0", "2", "0"}));
  EXPECT_EQ(j.at("verdict"), "pass");
}

TEST(Cli, MatrixCommands) {
  EXPECT_EQ(run("matrix example57 --eps 0.1").code, 0);
  EXPECT_EQ(run("matrix jordan --eps 0.05").code, 0);
  EXPECT_EQ(run("matrix euler --preset minus-identity --n 3").code, 0);
  EXPECT_EQ(run("matrix strip --cases 3").code, 0);
  EXPECT_EQ(run("matrix trajectory --preset minus-identity").code, 0);
}

TEST(Cli, ZooListing) {
  CliRun r = run("zoo");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("sl2_approx"), std::string::npos);
  CliRun one = run("zoo aff");
  std::ifstream in(zoo_file("aff"));
  std::string file((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(one.out, file);
}
