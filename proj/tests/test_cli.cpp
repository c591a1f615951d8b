// Drives the built executable end to end.
#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <json.hpp>

#include "test_util.hpp"

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run(const std::string& args) {
  const std::string cmd = std::string(ODDITY_CLI) + " " + args + " 2>&1";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string q(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

}  // namespace

TEST(Cli, GenerateThenSolveSheet) {
  testutil::TempDir dir;
  const CliResult g = run("generate --concept closure --seed 42 --sheet --out " + q(dir.path()));
  ASSERT_EQ(g.code, 0) << g.out;
  const auto manifest = nlohmann::json::parse(testutil::read_text(dir / "manifest.json"));
  EXPECT_EQ(manifest["concept"], "closure");
  EXPECT_EQ(manifest["seed"], 42);
  const int odd = manifest["odd_index"];
  for (int k = 1; k <= 6; ++k) EXPECT_TRUE(std::filesystem::exists(dir / ("panel_" + std::to_string(k) + ".pgm")));

  const CliResult s = run("solve " + q(dir / "sheet.pgm"));
  EXPECT_EQ(s.code, 0) << s.out;
  EXPECT_NE(s.out.find("answer: panel " + std::to_string(odd + 1) + "\n"), std::string::npos) << s.out;

  const CliResult j = run("--format json solve --id sheet42 " + q(dir / "sheet.pgm"));
  ASSERT_EQ(j.code, 0) << j.out;
  const auto verdict = nlohmann::json::parse(j.out);
  EXPECT_EQ(verdict["panel"], odd);
  EXPECT_EQ(verdict["problem_id"], "sheet42");
  // JSON output is byte-identical across runs.
  EXPECT_EQ(run("--format json solve --id sheet42 " + q(dir / "sheet.pgm")).out, j.out);

  std::string panels;
  for (int k = 1; k <= 6; ++k) panels += " " + q(dir / ("panel_" + std::to_string(k) + ".pgm"));
  const CliResult p = run("--format csv solve" + panels);
  EXPECT_EQ(p.code, 0);
  EXPECT_EQ(p.out.rfind("problem\tanswer\t" + std::to_string(odd) + "\t", 0), 0u) << p.out;
}

TEST(Cli, IdenticalBlankPanelsSkip) {
  testutil::TempDir dir;
  save_pgm(oddity::GrayRaster(30, 30, 255), dir / "blank.pgm");
  const std::string b = q(dir / "blank.pgm");
  const CliResult r = run("solve " + b + " " + b + " " + b + " " + b + " " + b + " " + b);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("skipped: no feature exceeded delta_z=2"), std::string::npos) << r.out;
}

TEST(Cli, ErrorsExitOne) {
  EXPECT_EQ(run("solve /nonexistent/sheet.pgm").code, 1);
  EXPECT_EQ(run("solve a.pgm b.pgm").code, 1);
  EXPECT_EQ(run("generate --concept tessellation --out /tmp/x").code, 1);
  EXPECT_EQ(run("--z-threshold 0 list-features").code, 1);
  EXPECT_EQ(run("--center mode list-features").code, 1);
  EXPECT_EQ(run("").code, 1);
}

TEST(Cli, ListFeatures) {
  const CliResult r = run("list-features");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("id\tcomplexity_rank\tstage\ndensity\t1\traw\n", 0), 0u) << r.out;
  const CliResult c = run("--enable-chirality-feature --complexity mirror_gap=1 --format json list-features");
  const auto j = nlohmann::json::parse(c.out);
  ASSERT_EQ(j.size(), 10u);
  EXPECT_EQ(j[1]["id"], "mirror_gap");
  EXPECT_EQ(j[9]["id"], "chirality");
}

TEST(Cli, ReportOverGeneratedManifest) {
  testutil::TempDir dir;
  ASSERT_EQ(run("generate --concept holes --seed 5 --count 4 --out " + q(dir / "holes")).code, 0);
  const std::string lines = testutil::read_text(dir / "holes/manifest.jsonl");
  // Add a malformed row; valid rows must still be scored.
  testutil::write_bytes(dir / "holes/manifest.jsonl", lines + "{broken\n");
  const CliResult r = run("--out " + q(dir / "rep") + " report " + q(dir / "holes/manifest.jsonl"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("holes"), std::string::npos);
  EXPECT_NE(r.out.find("overall 4/4 = 1.00"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("error: line 5"), std::string::npos) << r.out;
  const auto j = nlohmann::json::parse(testutil::read_text(dir / "rep/report.json"));
  EXPECT_EQ(j["overall"]["total"], 4);
  EXPECT_EQ(testutil::read_text(dir / "rep/report.csv").rfind("concept,true,total,ratio,skipped\nholes,4,4,1.00,0\n", 0), 0u);
}

TEST(Cli, EmptyManifest) {
  testutil::TempDir dir;
  testutil::write_bytes(dir / "m.jsonl", "");
  const CliResult r = run("report " + q(dir / "m.jsonl"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("overall 0/0 = n/a"), std::string::npos) << r.out;
}

TEST(Cli, SyntheticReportIsDeterministicAcrossParallelism) {
  const std::string args = "--format json --seed 300 report --synthetic --concept closure --concept alignment --count 6";
  const CliResult a = run("--parallelism 1 " + args);
  const CliResult b = run("--parallelism 8 " + args);
  ASSERT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(nlohmann::json::parse(a.out)["overall"]["total"], 12);
}

TEST(Cli, ExplainWritesArtifacts) {
  testutil::TempDir dir;
  ASSERT_EQ(run("generate --concept closure --seed 42 --out " + q(dir / "p")).code, 0);
  std::string panels;
  for (int k = 1; k <= 6; ++k) panels += " " + q(dir / ("p/panel_" + std::to_string(k) + ".pgm"));
  const CliResult r = run("--out " + q(dir / "x") + " explain" + panels);
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("contour_count,3,"), std::string::npos);
  for (const char* f : {"features.csv", "zscores.csv", "verdict.json", "clouds/panel_1.svg", "clouds/panel_6.csv"}) {
    EXPECT_TRUE(std::filesystem::exists(dir.path() / "x" / f)) << f;
  }
}

TEST(Cli, ExplainBlankProblemShowsWarnings) {
  testutil::TempDir dir;
  save_pgm(oddity::GrayRaster(30, 30, 255), dir / "blank.pgm");
  const std::string b = q(dir / "blank.pgm");
  const CliResult r = run("explain " + b + " " + b + " " + b + " " + b + " " + b + " " + b);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("warnings\n  panel 1 is empty"), std::string::npos) << r.out;
}

TEST(Cli, DumpClouds) {
  testutil::TempDir dir;
  ASSERT_EQ(run("generate --concept vertical_symmetry --seed 4 --sheet --out " + q(dir / "p")).code, 0);
  const CliResult r = run("solve --dump-clouds " + q(dir / "c") + " " + q(dir / "p/sheet.pgm"));
  EXPECT_NE(r.code, 1) << r.out;
  EXPECT_TRUE(std::filesystem::exists(dir / "c/panel_3.svg"));
}
