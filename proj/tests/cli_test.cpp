#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "srlx/cli.hpp"
#include "test_support.hpp"

namespace srlx {
namespace {

using testing::ScratchDir;
using testing::corpus_dir;
using testing::data_dir;
using testing::slurp;
using testing::spit;

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "srlx");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int status = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> layout_args(const fs::path& root) {
  return {"--prop", (root / "prop").string(), "--onf", (root / "onf").string(), "--parse",
          (root / "parse").string()};
}

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

const char kCatOnf[] =
    "\n------------------------------\nPlain sentence:\n---------------\n    The cat sits .\n"
    "Treebanked sentence:\n--------------------\n    The cat sits .\n\n";
const char kCatParse[] = "(TOP (S (NP (DT The) (NN cat)) (VP (VBZ sits)) (. .)))\n";

TEST(CliExtract, MatchesGolden) {
  ScratchDir dir;
  auto r = run(with({"extract"}, with(layout_args(corpus_dir()),
                                      {"--out", (dir / "out.csv").string()})));
  ASSERT_EQ(0, r.status) << r.err;
  EXPECT_EQ(slurp(data_dir() / "golden_srl.csv"), slurp(dir / "out.csv"));
  EXPECT_NE(r.out.find("rows emitted:                  21"), std::string::npos);
  EXPECT_EQ("wsj_0104\tmissing .onf and .parse\n", slurp(dir / "skipped.tsv"));
}

TEST(CliExtract, EmptyCorpusFails) {
  ScratchDir dir;
  fs::create_directories(dir / "prop");
  fs::create_directories(dir / "onf");
  fs::create_directories(dir / "parse");
  auto r = run(with({"extract"}, with(layout_args(dir.path()),
                                      {"--out", (dir / "out.csv").string()})));
  EXPECT_NE(0, r.status);
  EXPECT_NE(r.err.find("EmptyCorpus"), std::string::npos);
}

TEST(CliExtract, StrictNamesFileAndLine) {
  ScratchDir dir;
  spit(dir / "prop/00/x.prop", "x 0 2 g p v 0:1-ARG0 2:0-rel\nx 0 2 g p v 8:-ARG0 2:0-rel\n");
  spit(dir / "onf/00/x.onf", kCatOnf);
  spit(dir / "parse/00/x.parse", kCatParse);
  auto args = with(layout_args(dir.path()), {"--out", (dir / "out.csv").string()});
  auto strict = run(with({"extract", "--strict"}, args));
  EXPECT_NE(0, strict.status);
  EXPECT_NE(strict.err.find("x"), std::string::npos);
  EXPECT_NE(strict.err.find("line 2"), std::string::npos);
  EXPECT_NE(strict.err.find("MalformedPointer"), std::string::npos);

  auto tolerant = run(with({"extract"}, args));
  EXPECT_EQ(0, tolerant.status) << tolerant.err;
  EXPECT_NE(tolerant.out.find("rows emitted:                  1"), std::string::npos);
}

TEST(CliExtract, OrlSchemaAndExclusions) {
  ScratchDir dir;
  spit(dir / "exclude.txt", "# skip these\nwsj_0001\nwsj_0002\n");
  auto r = run(with({"extract", "--schema", "orl", "--exclude", (dir / "exclude.txt").string()},
                    with(layout_args(corpus_dir()), {"--out", (dir / "orl.csv").string()})));
  ASSERT_EQ(0, r.status) << r.err;
  std::string csv = slurp(dir / "orl.csv");
  EXPECT_EQ(0u, csv.find("sentence,treebanked_sentence,holder,expression,target\n"));
  EXPECT_EQ(std::string::npos, csv.find("John wants"));
  EXPECT_NE(r.out.find("files excluded:                2"), std::string::npos);
}

TEST(CliExtract, ConfigFile) {
  ScratchDir dir;
  std::string cfg = "# flat keys apply to the invoked subcommand\n";
  cfg += "prop = \"" + (corpus_dir() / "prop").string() + "\"\n";
  cfg += "onf = \"" + (corpus_dir() / "onf").string() + "\"\n";
  cfg += "parse = \"" + (corpus_dir() / "parse").string() + "\"\n";
  cfg += "out = \"" + (dir / "cfg.csv").string() + "\"\n";
  cfg += "jobs = 3\n";
  spit(dir / "run.toml", cfg);
  auto r = run({"--config", (dir / "run.toml").string(), "extract"});
  ASSERT_EQ(0, r.status) << r.err;
  EXPECT_EQ(slurp(data_dir() / "golden_srl.csv"), slurp(dir / "cfg.csv"));

  // Flags on the command line win over the file; --config may follow the
  // subcommand.
  r = run({"extract", "--config", (dir / "run.toml").string(), "--out",
           (dir / "flag.csv").string()});
  ASSERT_EQ(0, r.status) << r.err;
  EXPECT_TRUE(fs::exists(dir / "flag.csv"));

  spit(dir / "sections.toml", "[extract]\n" + cfg.substr(cfg.find("prop")));
  fs::remove(dir / "cfg.csv");
  r = run({"extract", "--config=" + (dir / "sections.toml").string()});
  ASSERT_EQ(0, r.status) << r.err;
  EXPECT_EQ(slurp(data_dir() / "golden_srl.csv"), slurp(dir / "cfg.csv"));
}

TEST(CliExtract, BadFlagValues) {
  EXPECT_NE(0, run(with({"extract", "--schema", "xml"}, layout_args(corpus_dir()))).status);
  EXPECT_NE(0, run(with({"extract", "--jobs", "0"}, layout_args(corpus_dir()))).status);
  EXPECT_NE(0, run({"extract"}).status);
  EXPECT_NE(0, run({}).status);
}

// ---------------------------------------------------------------------------

TEST(CliStats, GoldenBreakdown) {
  ScratchDir dir;
  auto r = run({"stats", "--csv", (data_dir() / "golden_srl.csv").string(), "--lexicon",
                (data_dir() / "lexicon.tsv").string(), "--top", "3", "--out", dir.path().string()});
  ASSERT_EQ(0, r.status) << r.err;
  EXPECT_NE(r.out.find("both ARG0 & ARG1: 52.4"), std::string::npos);
  EXPECT_NE(r.out.find("only ARG1: 42.9"), std::string::npos);
  EXPECT_NE(r.out.find("only ARG0: 4.8"), std::string::npos);
  EXPECT_NE(r.out.find("mean ARG0 words: 1.4"), std::string::npos);
  EXPECT_NE(r.out.find("mean ARG1 words: 3.0"), std::string::npos);
  EXPECT_NE(r.out.find("  said\t4\n  fell\t2\n  is\t2\n"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "stats.json"));
  EXPECT_TRUE(fs::exists(dir / "stats.txt"));
}

TEST(CliStats, ThresholdsEchoed) {
  ScratchDir dir;
  auto r = run({"stats", "--csv", (data_dir() / "golden_srl.csv").string(), "--t1", "0.1",
                "--t2", "0.6", "--out", dir.path().string()});
  ASSERT_EQ(0, r.status) << r.err;
  auto j = nlohmann::json::parse(slurp(dir / "stats.json"));
  EXPECT_EQ(0.1, j["metadata"]["t1"].get<double>());
  EXPECT_EQ(0.6, j["metadata"]["t2"].get<double>());
  EXPECT_TRUE(j["metadata"]["lexicon"].is_null());
}

TEST(CliStats, Errors) {
  ScratchDir dir;
  spit(dir / "bad.csv", "sentence,treebanked_sentence,predicate,arg0\na,b,c,d\n");
  auto missing = run({"stats", "--csv", (dir / "bad.csv").string(), "--out", dir.path().string()});
  EXPECT_NE(0, missing.status);
  EXPECT_NE(missing.err.find("HeaderMismatch"), std::string::npos);
  EXPECT_NE(missing.err.find("arg1"), std::string::npos);

  auto thresholds = run({"stats", "--csv", (data_dir() / "golden_srl.csv").string(), "--t1",
                         "0.7", "--t2", "0.6", "--out", dir.path().string()});
  EXPECT_NE(0, thresholds.status);
  EXPECT_NE(thresholds.err.find("BadThresholds"), std::string::npos);

  spit(dir / "header.csv", std::string(kSrlHeader) + "\n");
  auto empty = run({"stats", "--csv", (dir / "header.csv").string(), "--out", dir.path().string()});
  EXPECT_NE(0, empty.status);
  EXPECT_NE(empty.err.find("EmptyInput"), std::string::npos);
}

// ---------------------------------------------------------------------------

TEST(CliValidate, CleanCorpus) {
  ScratchDir dir;
  spit(dir / "prop/00/x.prop", "x 0 2 g p v 0:1-ARG0 2:0-rel\n");
  spit(dir / "onf/00/x.onf", kCatOnf);
  spit(dir / "parse/00/x.parse", kCatParse);
  auto r = run(with({"validate"}, layout_args(dir.path())));
  EXPECT_EQ(0, r.status) << r.out << r.err;
  EXPECT_EQ("1 files checked, 0 violations\n", r.out);
}

TEST(CliValidate, Violations) {
  ScratchDir dir;
  spit(dir / "prop/00/x.prop", "x 0 2 g p v 0:1-ARG0 9:0-rel\n");
  spit(dir / "onf/00/x.onf", kCatOnf);
  spit(dir / "parse/00/x.parse", kCatParse);
  spit(dir / "prop/00/y.prop", "y 0 2 g p v 2:0-rel\n");
  spit(dir / "onf/00/y.onf", std::string(kCatOnf) + kCatOnf);
  spit(dir / "parse/00/y.parse", kCatParse);
  auto r = run(with({"validate"}, layout_args(dir.path())));
  EXPECT_EQ(1, r.status);
  EXPECT_NE(r.out.find("x\t0\t9:0\t"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("TerminalOutOfRange"), std::string::npos);
  EXPECT_NE(r.out.find("y\t"), std::string::npos);
  EXPECT_NE(r.out.find("2 sentences"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("2 files checked, 2 violations"), std::string::npos) << r.out;
}

// ---------------------------------------------------------------------------

TEST(CliInspect, ShowsTerminalsAndSpans) {
  auto r = run(with({"inspect", "--file", "wsj_0002", "--tree", "0"}, layout_args(corpus_dir())));
  ASSERT_EQ(0, r.status) << r.err;
  EXPECT_NE(r.out.find("14\t-NONE-\t*T*-2"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("ARG0 14:1*16:1*17:1 -> \"two dealers brokers and analysts\""),
            std::string::npos)
      << r.out;
}

TEST(CliInspect, Errors) {
  auto unknown = run(with({"inspect", "--file", "wsj_9999", "--tree", "0"}, layout_args(corpus_dir())));
  EXPECT_NE(0, unknown.status);
  EXPECT_NE(unknown.err.find("UnknownFile"), std::string::npos);
  auto range = run(with({"inspect", "--file", "wsj_0001", "--tree", "50"}, layout_args(corpus_dir())));
  EXPECT_NE(0, range.status);
  EXPECT_NE(range.err.find("IndexOutOfRange"), std::string::npos);
}

}  // namespace
}  // namespace srlx
