#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "descriptor.hpp"
#include "hshift/version.hpp"
#include "support/corpus.hpp"

using namespace hshift;
using namespace hshift::testing;
using hshift::json::Json;

namespace {

  struct Report {
    Json json;
    int  exit;
  };

  Report run(std::vector<std::string> args) {
    auto o = cli::run(args);
    return {json::parse_text(o.report), o.exit};
  }

  std::string temp_dir(std::string const& leaf) {
    auto d = std::filesystem::temp_directory_path() / ("hshift_cli_" + leaf);
    std::filesystem::remove_all(d);
    std::filesystem::create_directories(d);
    return d.string();
  }

  std::string write_temp(std::string const& dir, std::string const& name, std::string const& text) {
    auto path = dir + "/" + name;
    std::ofstream(path) << text;
    return path;
  }

  std::string slurp(std::string const& path) {
    std::ifstream      in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

}  // namespace

TEST(Cli, GoldenMeanWindowOfFive) {
  auto r = run({"window-language", corpus_path("golden_mean.json")});
  EXPECT_EQ(r.exit, 0);
  EXPECT_EQ(r.json["counts"], Json::parse(R"({"allowed":13,"forbidden":19,"unknown":0})"));
  EXPECT_EQ(r.json["method"], "ZExact");
  EXPECT_EQ(r.json["entries"].size(), 32u);
  EXPECT_EQ(r.json["window"], Json::parse("[[0],[1],[2],[3],[4]]"));
}

TEST(Cli, MemberOnTheStepConfiguration) {
  auto r = run({"member", corpus_path("even_pairs.json")});
  EXPECT_EQ(r.exit, 0);
  ASSERT_EQ(r.json["entries"].size(), 2u);
  auto const& x = r.json["entries"][0];
  EXPECT_EQ(x["configuration"]["kind"], "step");
  EXPECT_EQ(x["configuration"]["cut"], 1);
  EXPECT_EQ(x["verdict"]["state"], "CertifiedAllowed");
}

TEST(Cli, SmallRadiusOnZ2LeavesUnknowns) {
  auto r = run({"window-language", corpus_path("poisoned_z2.json")});
  EXPECT_EQ(r.exit, 2);
  EXPECT_EQ(r.json["method"], "Inflation(0)");
  EXPECT_GT(r.json["counts"]["unknown"].get<int>(), 0);
  auto bigger = run({"window-language", corpus_path("poisoned_z2.json"), "--radius", "1"});
  EXPECT_EQ(bigger.exit, 0);
  EXPECT_EQ(bigger.json["counts"]["forbidden"], 1);
}

TEST(Cli, EvenPairsVerdicts) {
  auto p = run({"realize", corpus_path("even_pairs.json"), "--pattern",
                corpus_path("even_pairs_P.json"), "--radius", "2"});
  EXPECT_EQ(p.exit, 0);
  EXPECT_EQ(p.json["verdict"]["state"], "CertifiedAllowed");
  auto q = run({"realize", corpus_path("even_pairs.json"), "--pattern",
                corpus_path("even_pairs_Q.json")});
  EXPECT_EQ(q.exit, 0);
  EXPECT_EQ(q.json["verdict"]["state"], "CertifiedForbidden");
  EXPECT_TRUE(q.json["verdict"].contains("violation"));
}

TEST(Cli, ReportsCarryProvenance) {
  auto r = run({"window-language", corpus_path("golden_mean.json"), "--method", "inflate",
                "--radius", "3", "--symbol-budget", "2", "--h-ball", "7"});
  EXPECT_EQ(r.json["version"], hshift::version);
  EXPECT_EQ(r.json["command"], "window-language");
  EXPECT_EQ(r.json["method"], "Inflation(3)");
  EXPECT_EQ(r.json["budgets"]["radius"], 3);
  EXPECT_EQ(r.json["budgets"]["symbol_budget"], 2);
  EXPECT_EQ(r.json["budgets"]["h_ball"], 7);
  EXPECT_EQ(r.json["counts"]["allowed"], 13);
}

TEST(Cli, EveryManifestRunHasItsExitCode) {
  auto runs = corpus_runs();
  ASSERT_GE(runs.size(), 40u);
  std::set<std::string> seen;
  for (auto const& c : runs) {
    auto o = cli::run(c.args);
    EXPECT_EQ(o.exit, c.exit) << c.command << " " << c.descriptor << "\n" << o.report;
    seen.insert(c.command);
  }
  for (auto const& name : cli::commands()) {
    EXPECT_TRUE(seen.count(name)) << name << " has no corpus run";
  }
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  for (auto const& c : corpus_runs()) {
    auto a = cli::run(c.args);
    auto b = cli::run(c.args);
    EXPECT_EQ(a.report, b.report) << c.command << " " << c.descriptor;
  }
}

TEST(Cli, ParseErrorsNameTheField) {
  auto r = run({"brute-force", corpus_path("malformed_cell.json")});
  EXPECT_EQ(r.exit, 1);
  EXPECT_EQ(r.json["error"]["kind"], "ParseError");
  EXPECT_EQ(r.json["error"]["pointer"], "/forbidden/0/cells/0/g");

  auto dir = temp_dir("parse");
  auto zero = write_temp(dir, "zero.json",
                         R"({"group":{"kind":"z_lattice","rank":1},"alphabet":["0","1"],
                             "subgroup":"whole","symbol_budget":0})");
  EXPECT_EQ(run({"compactness", zero}).json["error"]["pointer"], "/symbol_budget");
  auto unknown = write_temp(dir, "unknown.json",
                            R"({"group":{"kind":"z_lattice","rank":1},"alphabet":["0","1"],
                                "subgroup":"whole","windw":[[0]]})");
  EXPECT_EQ(run({"window-language", unknown}).json["error"]["pointer"], "/windw");
  auto text = write_temp(dir, "text.json", "{ not json");
  auto t    = run({"member", text});
  EXPECT_EQ(t.exit, 1);
  EXPECT_EQ(t.json["error"]["pointer"], "");

  auto bad_pattern = write_temp(dir, "p.json", R"({"cells":[{"g":[0],"a":"7"}]})");
  auto p = run({"realize", corpus_path("golden_mean.json"), "--pattern", bad_pattern});
  EXPECT_EQ(p.json["error"]["pointer"], "/cells/0/a");
  EXPECT_EQ(p.json["error"]["file"], bad_pattern);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"frobnicate", corpus_path("golden_mean.json")}).exit, 1);
  EXPECT_EQ(run({"member"}).exit, 1);
  EXPECT_EQ(run({"member", "/nonexistent/file.json"}).exit, 1);
  EXPECT_EQ(run({"window-language", corpus_path("golden_mean.json"), "--method", "magic"}).exit, 1);
  EXPECT_EQ(run({"compactness", corpus_path("golden_mean.json"), "--symbol-budget", "0"}).exit, 1);
  EXPECT_EQ(cli::run({"--help"}).exit, 0);
}

TEST(Cli, OutputDirectoryOverride) {
  auto dir = temp_dir("out");
  ::setenv("HSHIFT_OUTPUT_DIR", dir.c_str(), 1);
  auto o = cli::run({"brute-force", corpus_path("z2_constants.json"), "--out", "sub/report.json"});
  ::unsetenv("HSHIFT_OUTPUT_DIR");
  EXPECT_EQ(o.exit, 0);
  EXPECT_EQ(slurp(dir + "/sub/report.json"), o.report);

  auto abs = dir + "/abs.json";
  auto p   = cli::run({"brute-force", corpus_path("z2_constants.json"), "--out", abs});
  EXPECT_EQ(slurp(abs), p.report);
}

TEST(Cli, DescriptorsRoundTripAfterCanonicalization) {
  for (auto const& entry : std::filesystem::directory_iterator(HSHIFT_CORPUS_DIR)) {
    auto name = entry.path().filename().string();
    auto j    = read_corpus(name);
    if (!j.contains("group") || name == "malformed_cell.json") {
      continue;
    }
    auto once  = json::dump(cli::to_json(cli::parse_descriptor(j)));
    auto twice = json::dump(cli::to_json(cli::parse_descriptor(json::parse_text(once))));
    EXPECT_EQ(once, twice) << name;
  }
}

TEST(Cli, BruteForceAndReconstruct) {
  auto b = run({"brute-force", corpus_path("z2_constants.json")});
  EXPECT_EQ(b.json["count"], 2);
  EXPECT_EQ(b.json["configurations"], Json::parse(R"([["0","0"],["1","1"]])"));
  auto r = run({"reconstruct", corpus_path("z2_constants.json"), "--language",
                corpus_path("z2_constants_language.json")});
  EXPECT_EQ(r.exit, 0);
  EXPECT_TRUE(r.json["equal"].get<bool>());
  EXPECT_EQ(r.json["configurations"], b.json["configurations"]);
}

TEST(Cli, CompareAndCompactness) {
  auto c = run({"compare", corpus_path("z2_constants.json")});
  EXPECT_EQ(c.exit, 0);
  EXPECT_FALSE(c.json["equal"].get<bool>());
  EXPECT_EQ(c.json["sets_equal"], false);
  EXPECT_FALSE(c.json["distinguishing"].is_null());

  auto d = run({"compactness", corpus_path("gl2_determinant.json")});
  EXPECT_EQ(d.exit, 0);
  EXPECT_EQ(d.json["summary"], "Compact");
  EXPECT_EQ(d.json["cells"].size(), 48u);
  auto n = run({"compactness", corpus_path("naturals_full_shift.json")});
  EXPECT_EQ(n.exit, 2);
  EXPECT_EQ(n.json["summary"], "NonCompactEvidence");
}

TEST(Cli, ExtendTraceReplays) {
  auto r = run({"extend", corpus_path("golden_mean.json"), "--target-ball", "2"});
  EXPECT_EQ(r.exit, 0);
  ASSERT_FALSE(r.json["extension"].is_null());
  auto x     = json::parse_subshift(read_corpus("golden_mean.json"));
  auto p     = json::parse_pattern(r.json["pattern"], x.group_ptr(), x.alphabet());
  auto trace = json::parse_trace(r.json["trace"], x.group(), x.alphabet());
  auto e     = json::parse_pattern(r.json["extension"], x.group_ptr(), x.alphabet());
  EXPECT_EQ(replay(p, trace), e);
  EXPECT_EQ(e.size(), 5u);
}

TEST(Cli, PropsOnFiniteAndTruncatedScopes) {
  auto k = run({"props", corpus_path("klein_four.json")});
  EXPECT_EQ(k.exit, 0);
  EXPECT_TRUE(k.json["L1"]["holds"].get<bool>());
  EXPECT_TRUE(k.json["L2"]["holds"].get<bool>());
  EXPECT_TRUE(k.json["L3"]["holds"].get<bool>());
  EXPECT_EQ(k.json["language"]["source"], "extracted");

  // On Z the checks only cover the given cells and part of H.
  auto g = run({"props", corpus_path("golden_mean.json"), "--l2"});
  EXPECT_EQ(g.exit, 2);
  EXPECT_FALSE(g.json.contains("L1"));

  auto chains = run({"props", corpus_path("even_pairs.json"), "--l4"});
  EXPECT_EQ(chains.exit, 0);
  EXPECT_TRUE(chains.json["L4"]["holds"].get<bool>());
  EXPECT_EQ(chains.json["L4"]["unknown"], 0);
  EXPECT_EQ(run({"props", corpus_path("even_pairs.json")}).exit, 1);
}

TEST(Cli, DistanceUsesTheFirstDisagreement) {
  auto r = run({"distance", corpus_path("klein_four.json")});
  EXPECT_EQ(r.exit, 0);
  EXPECT_EQ(r.json["kind"], "exact");
  // Tables differ first at the third element of V4 in well-order.
  EXPECT_EQ(r.json["k"], 1);
  EXPECT_DOUBLE_EQ(r.json["value"].get<double>(), 0.5);
}
