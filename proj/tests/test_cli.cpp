#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hellyrel/cli.hpp"

using namespace hellyrel;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(HELLYREL_TEST_DATA) + "/" + name; }

std::string tmp(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "hellyrel_test_cli";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

}  // namespace

TEST(Cli, UsageErrors) {
  auto r = run({"frobnicate"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("unknown subcommand 'frobnicate'"), std::string::npos);
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"analyze"}).code, kExitUsage);
  EXPECT_EQ(run({"analyze", data("missing.edges")}).code, kExitUsage);
  EXPECT_EQ(run({"gamma", "build", "--group", data("zz_z2.json"), "--N", "1", "--radius", "2"}).code, kExitOk);
  EXPECT_EQ(run({"measure", "--what", "bogus", "--group", data("z2_z3.json")}).code, kExitUsage);
}

TEST(Cli, AnalyzeFourCycle) {
  auto r = run({"analyze", data("c4.edges")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto j = r.report();
  EXPECT_EQ(j["schema"], "hellyrel.analyze");
  EXPECT_EQ(j["vertices"], 4);
  EXPECT_EQ(j["is_helly"], false);
  EXPECT_EQ(j["xi"], 1);
  EXPECT_EQ(j["pseudo_modular"], true);
}

TEST(Cli, HellyfyFourCycle) {
  auto out = tmp("c4_helly.edges");
  auto r = run({"hellyfy", data("c4.edges"), "--graph-out", out});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto j = r.report();
  EXPECT_EQ(j["vertices"], 5);
  EXPECT_EQ(j["helly"], true);
  EXPECT_EQ(j["isometric"], true);
  auto again = run({"analyze", out}).report();
  EXPECT_EQ(again["is_helly"], true);
  EXPECT_EQ(again["vertices"], 5);
}

TEST(Cli, CorpusGraphsAndGroups) {
  auto g = tmp("king3.edges");
  auto r = run({"corpus", "--kind", "king-grid", "--width", "3", "--height", "3", "--file", g});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.report()["vertices"], 9);
  EXPECT_EQ(r.report()["edges"], 20);
  EXPECT_EQ(run({"analyze", g}).report()["is_helly"], true);

  auto spec = tmp("fp.json");
  r = run({"corpus", "--kind", "group-freeproduct", "--factors", "cyclic:2,cyclic:3", "--file", spec});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto ball = run({"group", "ball", "--group", spec, "--radius", "3"});
  ASSERT_EQ(ball.code, kExitOk) << ball.err;
  // 1, a, b, b^2, then alternating words: 1 + 3 + 4 + 6
  EXPECT_EQ(ball.report()["count"], 14);
}

TEST(Cli, DeriveExitCodes) {
  auto ok = run({"derive", "--group", data("zz_z2.json"), "--radius", "6", "--samples", "100"});
  EXPECT_EQ(ok.code, kExitOk) << ok.err;
  EXPECT_EQ(ok.report()["violations"], 0);
  EXPECT_EQ(ok.report()["asserted"], true);

  // Below the certified N the violations are reported but not asserted.
  auto small = run({"derive", "--group", data("zz_z2.json"), "--N", "1", "--allow-small-N", "--radius", "8",
                    "--samples", "300"});
  EXPECT_EQ(small.code, kExitOk) << small.err;
  EXPECT_EQ(small.report()["asserted"], false);
  EXPECT_GT(small.report()["violations"].get<int>(), 0);
  EXPECT_NE(small.err.find("warning"), std::string::npos);
}

TEST(Cli, QuasiconvexKingRow) {
  auto r = run({"quasiconvex", "--ambient", data("king4x3.edges"), "--orbit", data("king4x3_row.orbit")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto j = r.report();
  EXPECT_EQ(j["quasiconvexity"]["k"], 1);
  EXPECT_EQ(j["lemmas"]["coarse_helly"]["status"], "verified");
  EXPECT_EQ(j["lemmas"]["isometric"]["status"], "verified");
  EXPECT_EQ(run({"quasiconvex", "--ambient", data("c4.edges"), "--orbit", data("king4x3_row.orbit")}).code,
            kExitUsage);
}

TEST(Cli, ReportsAreDeterministic) {
  for (std::vector<std::string> args :
       {std::vector<std::string>{"measure", "--what", "nu", "--group", data("z2_z3.json"), "--radius", "5"},
        std::vector<std::string>{"derive", "--group", data("z2_z3.json"), "--radius", "6", "--samples", "50"},
        std::vector<std::string>{"gamma", "build", "--group", data("z2_z2.json"), "--radius", "3"}}) {
    auto a = run(args), b = run(args);
    EXPECT_EQ(a.code, kExitOk) << a.err;
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, OutputFile) {
  auto path = tmp("report.json");
  auto r = run({"-o", path, "analyze", data("c4.edges")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  EXPECT_EQ(json::parse(in)["xi"], 1);
}
