#include <gtest/gtest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "toriclift/cli.hpp"

using namespace toriclift;

namespace {

const std::string kData = TORICLIFT_TEST_DATA;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  for (auto& a : args)
    if (a.size() > 4 && (a.ends_with(".fan") || a.ends_with(".json")) && a.front() != '-') a = kData + "/" + a;
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, InvariantsReport) {
  auto r = run({"invariants", "quadric.fan"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "toriclift report v1\n"));
  EXPECT_TRUE(has(r.out, "class group: Z/2; simplicial: yes; smooth: no"));
  EXPECT_TRUE(has(r.out, "sha256="));
}

TEST(Cli, QuadricBlowdownDoesNotLift) {
  auto r = run({"lift", "blowup.fan", "quadric.fan", "--morphism", "blowdown"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "exists: false"));
  EXPECT_TRUE(has(r.out, "2·φ(D_(1,0)) = (2,1,0) has no integral solution"));
}

TEST(Cli, KajiwaraLiftExists) {
  auto r = run({"lift", "blowup.fan", "quadric.fan", "--matrix", "1,0,0,1", "--dst-subgroup", "kajiwara",
                "--src-subgroup", "kajiwara"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(has(r.out, "exists: true"));
}

TEST(Cli, AffineBlowupLiftsUniquely) {
  auto r = run({"lift", "bl_a2.fan", "a2.fan", "--matrix", "1,0,0,1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "exists: true"));
  EXPECT_TRUE(has(r.out, "phi: [[1,0,1],[0,1,1]]"));
  EXPECT_TRUE(has(r.out, "unique: yes"));
}

TEST(Cli, JsonReportIsStructured) {
  auto r = run({"--format", "json", "iso", "p2.fan", "p2_conjugated.fan"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["report_version"], 1);
  EXPECT_EQ(j["command"], "iso");
  EXPECT_EQ(j["inputs"].size(), 2u);
  EXPECT_TRUE(j["result"]["isomorphic"].get<bool>());
  auto trailing = run({"iso", "p2.fan", "p2_conjugated.fan", "--format", "json"});
  EXPECT_EQ(trailing.out, r.out);
}

TEST(Cli, IsoAndSplit) {
  EXPECT_TRUE(has(run({"iso", "p2.fan", "f1.fan"}).out, "not isomorphic"));
  auto t = run({"iso", "quadric_torus.fan", "quadric_conjugated_torus.fan"});
  EXPECT_TRUE(has(t.out, "isomorphic after cancelling a torus factor of rank 1"));
  auto s = run({"split", "quadric_torus.fan"});
  EXPECT_EQ(s.code, 0);
  EXPECT_TRUE(has(s.out, "torus factor rank: 1"));
}

TEST(Cli, PresentModes) {
  auto cox = run({"present", "p2.fan", "--mode", "cox"});
  EXPECT_TRUE(has(cox.out, "grading group: Z\n"));
  EXPECT_TRUE(has(cox.out, "{0,1,2}"));
  auto kaj = run({"present", "quadric.fan", "--mode", "kajiwara"});
  EXPECT_EQ(kaj.code, 0);
  EXPECT_TRUE(has(kaj.out, "grading group: 0"));
  auto named = run({"present", "p2.fan", "--mode", "subgroup", "cox"});
  EXPECT_EQ(named.code, 0) << named.err;
  auto principal = run({"present", "p2.fan", "--mode", "subgroup", "principal"});
  EXPECT_EQ(principal.code, 1);
  EXPECT_TRUE(has(principal.err, "enough divisors"));
}

TEST(Cli, ExitCodes) {
  auto bad = run({"validate", "bad_index.fan"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_TRUE(has(bad.err, "bad_index.fan:5:"));
  EXPECT_EQ(run({"validate", "missing.fan"}).code, 1);
  EXPECT_EQ(run({"lift", "blowup.fan", "quadric.fan", "--matrix", "1,0"}).code, 1);
  EXPECT_EQ(run({"nonsense"}).code, 1);
  auto wrong_target = run({"lift", "blowup.fan", "a2.fan", "--morphism", "blowdown"});
  EXPECT_EQ(wrong_target.code, 1);
  EXPECT_TRUE(has(wrong_target.err, "targets quadric.fan"));
  EXPECT_EQ(run({"--max-rays", "2", "iso", "p2.fan", "f1.fan"}).code, 2);
  EXPECT_EQ(run({"validate", "p2.fan"}).code, 0);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ReportsAreDeterministic) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"lift", "blowup.fan", "quadric.fan", "--morphism", "blowdown"},
           {"present", "f1.fan", "--mode", "kajiwara"},
           {"--format", "json", "iso", "f1.fan", "f1.fan"}}) {
    EXPECT_EQ(run(args).out, run(args).out);
  }
}
