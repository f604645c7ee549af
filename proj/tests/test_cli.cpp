#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "isotopy/cli.hpp"

using namespace isotopy;
using namespace isotopy::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("isotopy_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

RunConfig config(const std::string& scenario, std::size_t depth, const fs::path& out) {
  RunConfig c;
  c.scenario = scenario;
  c.depth = depth;
  c.out = out;
  return c;
}

}  // namespace

TEST(Cli, RunWritesReportAndMatches) {
  const auto dir = scratch("run");
  std::ostringstream log;
  EXPECT_EQ(cmd_run(config("countable_r1", 10, dir), log), ok) << log.str();
  const auto report = nlohmann::json::parse(slurp(dir / "countable_r1_10_0.report"));
  EXPECT_EQ(report["hypotheses"]["verdict"], "pass");
  EXPECT_EQ(report["injectivity"], "pass");
  EXPECT_TRUE(report["match"].get<bool>());
  for (const char* f : {"tail_diameters", "containment_ok", "disjoint_supports"})
    EXPECT_TRUE(report["hypotheses"].contains(f)) << f;
  for (const char* f : {"sup_deviation", "min_image_separation", "unsettled_points", "budget_exhausted"})
    EXPECT_TRUE(report["probes"].contains(f)) << f;
  // snapshots round-trip
  const auto path = dir / "countable_r1_10_0_initial.curve";
  const PLCurve c = load_curve(path.string());
  EXPECT_EQ(curve_to_string(c), slurp(path));
  EXPECT_EQ(crossing_count(c), 10u);
  EXPECT_EQ(crossing_count(load_curve((dir / "countable_r1_10_0_final.curve").string())), 0u);
}

TEST(Cli, FoxRunsWithExpectedInjectivityFailure) {
  const auto dir = scratch("fox");
  std::ostringstream log;
  EXPECT_EQ(cmd_run(config("fox_remarkable", 20, dir), log), ok) << log.str();
  const auto report = nlohmann::json::parse(slurp(dir / "fox_remarkable_20_0.report"));
  EXPECT_EQ(report["injectivity"], "fail");
  EXPECT_LT(report["probes"]["min_image_separation"].get<double>(), 1e-3);
}

TEST(Cli, RecursiveReportCarriesBallFactoring) {
  const auto dir = scratch("rec");
  std::ostringstream log;
  EXPECT_EQ(cmd_run(config("recursive_r1", 8, dir), log), ok) << log.str();
  const auto report = nlohmann::json::parse(slurp(dir / "recursive_r1_8_0.report"));
  ASSERT_TRUE(report["ball_factoring"].is_object());
  // V_1 half-widths (3.05, 1.05, 1.05): eps = 0.525; V_k half-diagonal
  // sqrt(3.05^2 + 2 * 1.05^2) / 2^{k-1} first drops below eps at k = 4
  EXPECT_DOUBLE_EQ(report["ball_factoring"]["epsilon"].get<double>(), 0.525);
  EXPECT_EQ(report["ball_factoring"]["n0"], 4);
}

TEST(Cli, ErrorsAndUsage) {
  std::ostringstream log;
  EXPECT_EQ(cmd_run(config("unknown_name", 5, scratch("unk")), log), unknown_scenario);
  EXPECT_EQ(cmd_check(config("unknown_name", 5, "."), log), unknown_scenario);
  auto bad = config("countable_r1", 5, ".");
  bad.horizon = 1;
  EXPECT_EQ(cmd_check(bad, log), usage);
  bad.horizon = 20;
  bad.times = {0.5, 0.2};
  EXPECT_EQ(cmd_frames(bad, log), usage);
  // output path is a regular file
  const auto file = scratch("iofile");
  { std::ofstream(file) << "x"; }
  EXPECT_EQ(cmd_run(config("countable_r1", 3, file / "sub"), log), io_error);
  fs::remove(file);
}

TEST(Cli, CheckPrintsTableAndFlagsCondition) {
  std::ostringstream good, ext;
  EXPECT_EQ(cmd_check(config("countable_r1", 5, "."), good), ok);
  EXPECT_NE(good.str().find("n diameter\n1 "), std::string::npos);
  EXPECT_NE(cmd_check(config("trefoil_chain_extended", 5, "."), ext), ok);
  EXPECT_NE(ext.str().find("failed_condition: 1"), std::string::npos);
  EXPECT_NE(ext.str().find("\n20 "), std::string::npos);
}

TEST(Cli, FramesStartAtInitialCurveAndEndUntangled) {
  const auto dir = scratch("frames");
  auto cfg = config("countable_r1", 10, dir);
  cfg.times = {0.0, 0.5, 1.0};
  std::ostringstream log;
  ASSERT_EQ(cmd_frames(cfg, log), ok) << log.str();
  const auto s = *find_scenario("countable_r1");
  const PLCurve base = densify(s.initial_curve(10), kFrameMaxSegment);
  const PLCurve f0 = load_curve((dir / "countable_r1_10_0_frame000.curve").string());
  EXPECT_EQ(f0.vertices(), base.vertices());
  EXPECT_EQ(crossing_count(f0), 10u);
  EXPECT_EQ(crossing_count(load_curve((dir / "countable_r1_10_0_frame002.curve").string())), 0u);
  for (const char* f : {"frame000.svg", "frame001.svg", "frame002.svg", "frame001.curve"})
    EXPECT_TRUE(fs::exists(dir / (std::string("countable_r1_10_0_") + f))) << f;
  EXPECT_NE(slurp(dir / "countable_r1_10_0_frame000.svg").find("<svg"), std::string::npos);
}

TEST(Cli, ReportsAreDeterministic) {
  const auto a = scratch("det_a"), b = scratch("det_b");
  std::ostringstream log;
  for (const auto& d : {a, b}) {
    auto cfg = config("recursive_r1", 6, d);
    cfg.seed = 42;
    ASSERT_EQ(cmd_run(cfg, log), ok) << log.str();
  }
  const std::string ra = slurp(a / "recursive_r1_6_42.report");
  EXPECT_FALSE(ra.empty());
  EXPECT_EQ(ra, slurp(b / "recursive_r1_6_42.report"));
}
