#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

// Scratch directory shared by the tests, created once per run.
const fs::path& scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("walkfit_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = std::string(WALKFIT_CLI) + " " + args + " > " + (scratch() / "last.log").string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string at(const std::string& name) { return (scratch() / name).string(); }

int lines(const fs::path& p) {
  std::ifstream in(p);
  int n = 0;
  for (std::string l; std::getline(in, l);) ++n;
  return n;
}

// Reference scenes and one layout run, built once.
void prepare() {
  static bool done = false;
  if (done) return;
  ASSERT_EQ(run("gen-reference-scenes --out " + at("ref")), 0);
  ASSERT_EQ(run("layout --scene " + at("ref/exp3.json") + " --out " + at("lay") + " --samples 60"), 0);
  done = true;
}

}  // namespace

TEST(Cli, ReferenceScenesAreWrittenWithCatalog) {
  prepare();
  for (const char* f : {"exp1.json", "exp2.json", "exp3.json", "exp4.json", "exp5.json", "catalog.json"})
    EXPECT_TRUE(fs::exists(scratch() / "ref" / f)) << f;
}

TEST(Cli, LayoutWritesScenePairAndTotals) {
  prepare();
  for (const char* f : {"scene.json", "layout.json", "baseline_layout.json", "catalog.json", "score_map.csv",
                        "report.json", "transcript_baseline.json", "transcript_enipp.json"})
    EXPECT_TRUE(fs::exists(scratch() / "lay" / f)) << f;
  const auto report = nlohmann::json::parse(slurp(scratch() / "lay/report.json"));
  EXPECT_LE(report["llm_layout"].get<double>(), report["floor_plan"].get<double>());
  EXPECT_LE(report["refined_layout"].get<double>(), report["floor_plan"].get<double>());
}

TEST(Cli, SkipRefineKeepsTheRepairedLayout) {
  prepare();
  ASSERT_EQ(run("layout --scene " + at("ref/exp3.json") + " --out " + at("skip") + " --samples 60 --skip-refine"), 0);
  const auto report = nlohmann::json::parse(slurp(scratch() / "skip/report.json"));
  EXPECT_EQ(report["refine_iterations"], 0);
  EXPECT_EQ(report["refined_layout"], report["unrefined_layout"]);
  const auto full = nlohmann::json::parse(slurp(scratch() / "lay/report.json"));
  EXPECT_EQ(report["unrefined_layout"], full["unrefined_layout"]);
}

TEST(Cli, SimulateRowsPerCondition) {
  prepare();
  ASSERT_EQ(run("simulate --scene " + at("lay/scene.json") + " --out " + at("sim3") + " --trials 20"), 0);
  EXPECT_EQ(lines(scratch() / "sim3/trials.csv"), 61);
  EXPECT_EQ(lines(scratch() / "sim3/stats.csv"), 4);
  ASSERT_EQ(run("simulate --scene " + at("lay/scene.json") + " --out " + at("sim1") +
                " --trials 20 --conditions enipp_arc"),
            0);
  EXPECT_EQ(lines(scratch() / "sim1/trials.csv"), 21);
}

TEST(Cli, SimulateIsDeterministicGivenSeedBase) {
  prepare();
  const std::string base = "simulate --scene " + at("lay/scene.json") + " --trials 5 --seed-base 9 --out ";
  ASSERT_EQ(run(base + at("detA")), 0);
  ASSERT_EQ(run(base + at("detB")), 0);
  for (const char* f : {"trials.csv", "stats.csv", "experiment.json"})
    EXPECT_EQ(slurp(scratch() / "detA" / f), slurp(scratch() / "detB" / f)) << f;
}

TEST(Cli, ScoreMapReportsThreeTotals) {
  prepare();
  ASSERT_EQ(run("score-map --scene " + at("lay/scene.json") + " --out " + at("map") + " --samples 60"), 0);
  const auto t = nlohmann::json::parse(slurp(scratch() / "map/totals.json"));
  EXPECT_TRUE(t.contains("floor_plan") && t.contains("llm_layout") && t.contains("refined_layout"));
  EXPECT_TRUE(fs::exists(scratch() / "map/score_map.svg"));
  ASSERT_EQ(run("score-map --scene " + at("ref/exp1.json") + " --out " + at("map1") + " --samples 60"), 0);
  const auto t1 = nlohmann::json::parse(slurp(scratch() / "map1/totals.json"));
  EXPECT_NEAR(t1["floor_plan"].get<double>(), 0.0, 1e-9);
}

TEST(Cli, ExitCodes) {
  prepare();
  EXPECT_EQ(run("score-map --scene " + at("missing.json") + " --out " + at("x")), 2);
  EXPECT_NE(slurp(scratch() / "last.log").find("missing.json"), std::string::npos);
  EXPECT_EQ(run("layout --scene " + at("ref/exp3.json") + " --out " + at("x") + " --catalog " + at("nope.json")), 2);
  EXPECT_EQ(run("simulate --scene " + at("ref/exp3.json") + " --out " + at("x")), 2);  // no layouts yet
  EXPECT_EQ(run("simulate --scene " + at("lay/scene.json") + " --out " + at("x") + " --conditions walk"), 2);
  EXPECT_EQ(run("layout --scene " + at("ref/exp3.json") + " --out " + at("x") + " --provider carrier"), 2);
  EXPECT_EQ(run("layout --scene " + at("ref/exp3.json") + " --out " + at("x") + " --gains 1.3,0.9"), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run("--help"), 0);
  // A provider that cannot be reached is an internal failure, and its transcript is kept.
  EXPECT_EQ(run("layout --scene " + at("ref/exp3.json") + " --out " + at("http") +
                " --provider http --endpoint http://127.0.0.1:9/v1 --samples 20"),
            1);
  EXPECT_TRUE(fs::exists(scratch() / "http/transcript_baseline.json"));
}
