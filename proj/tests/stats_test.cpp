#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "srlx/stats.hpp"
#include "test_support.hpp"

namespace srlx {
namespace {

using testing::data_dir;
using testing::slurp;

std::vector<SrlRecord> load(const std::string& name) {
  return records_from_csv(slurp(data_dir() / name));
}

SrlRecord rec(std::string pred, std::string arg0, std::string arg1) {
  SrlRecord r;
  r.predicate = std::move(pred);
  r.arg0 = std::move(arg0);
  r.arg1 = std::move(arg1);
  r.merged_arguments = merge_arguments(r.arg0, r.arg1);
  return r;
}

TEST(ArgBreakdown, FourRecords) {
  ArgBreakdown b = arg_breakdown(load("breakdown4.csv"));
  EXPECT_EQ(50.0, b.both_pct);
  EXPECT_EQ(25.0, b.only_arg1_pct);
  EXPECT_EQ(25.0, b.only_arg0_pct);
  EXPECT_EQ(4u, b.total);
}

TEST(ArgBreakdown, Golden) {
  ArgBreakdown b = arg_breakdown(load("golden_srl.csv"));
  EXPECT_EQ(11u, b.both);
  EXPECT_EQ(9u, b.only_arg1);
  EXPECT_EQ(1u, b.only_arg0);
  EXPECT_DOUBLE_EQ(52.4, b.both_pct);
  EXPECT_DOUBLE_EQ(42.9, b.only_arg1_pct);
  EXPECT_DOUBLE_EQ(4.8, b.only_arg0_pct);
}

TEST(ArgBreakdown, EmptyInput) {
  try {
    arg_breakdown({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(Errc::EmptyInput, e.code());
  }
}

TEST(PredicateFrequencies, GoldenTopThree) {
  auto top = predicate_frequencies(load("golden_srl.csv"), 3);
  EXPECT_EQ((std::vector<PredicateCount>{{"said", 4}, {"fell", 2}, {"is", 2}}), top);
  EXPECT_EQ(16u, predicate_frequencies(load("golden_srl.csv"), 100).size());
}

TEST(PredicateFrequencies, TiesAndErrors) {
  std::vector<SrlRecord> rs{rec("b", "x", ""), rec("a", "x", ""), rec("b", "x", "")};
  EXPECT_EQ((std::vector<PredicateCount>{{"b", 2}, {"a", 1}}), predicate_frequencies(rs, 5));
  EXPECT_EQ((std::vector<PredicateCount>{{"b", 2}}), predicate_frequencies(rs, 1));
  EXPECT_THROW(predicate_frequencies(rs, 0), Error);
  EXPECT_THROW(predicate_frequencies({}, 3), Error);
}

TEST(SpanLengths, Examples) {
  SpanLengths four = span_length_stats(load("breakdown4.csv"));
  EXPECT_DOUBLE_EQ(1.7, four.mean_arg0);  // 5 words over 3 spans
  SpanLengths golden = span_length_stats(load("golden_srl.csv"));
  EXPECT_DOUBLE_EQ(1.4, golden.mean_arg0);
  EXPECT_DOUBLE_EQ(3.0, golden.mean_arg1);
  EXPECT_EQ(12u, golden.arg0_spans);
  EXPECT_EQ(20u, golden.arg1_spans);

  SpanLengths only1 = span_length_stats(std::vector{rec("p", "", "a b")});
  EXPECT_TRUE(only1.arg0_undefined);
  EXPECT_FALSE(only1.arg1_undefined);
  EXPECT_THROW(span_length_stats(std::vector{rec("p", "", "")}), Error);
}

TEST(WordCount, Whitespace) {
  EXPECT_EQ(0u, word_count(""));
  EXPECT_EQ(0u, word_count("   "));
  EXPECT_EQ(3u, word_count(" a  b\tc "));
}

// ---------------------------------------------------------------------------

SentimentLexicon fixture_lexicon() {
  return SentimentLexicon::parse(slurp(data_dir() / "lexicon.tsv"));
}

TEST(Sentiment, CompoundValue) {
  SentimentLexicon lex = fixture_lexicon();
  double expected = 1.9 / std::sqrt(1.9 * 1.9 + 15.0);
  EXPECT_NEAR(expected, sentiment_score("good", lex), 1e-9);
  EXPECT_NEAR(0.4404, sentiment_score("good", lex), 1e-4);
  EXPECT_EQ(0.0, sentiment_score("unknown", lex));
  EXPECT_EQ(0.0, sentiment_score("", lex));
  EXPECT_NEAR(expected, sentiment_score("GOOD", lex), 1e-12);
  EXPECT_NEAR(compound_from_sum(2.5), sentiment_score("laughed", lex), 1e-12);
}

TEST(Sentiment, MultiWordPredicateSumsValences) {
  SentimentLexicon lex = fixture_lexicon();
  EXPECT_NEAR(compound_from_sum(1.9 - 1.2), sentiment_score("good fell", lex), 1e-12);
}

TEST(Sentiment, AntisymmetricAndBounded) {
  for (double s = -50; s <= 50; s += 0.37) {
    EXPECT_NEAR(-compound_from_sum(s), compound_from_sum(-s), 1e-15);
    EXPECT_LE(std::abs(compound_from_sum(s)), 1.0);
  }
  EXPECT_EQ(0.0, compound_from_sum(0));
}

TEST(Sentiment, BucketBoundaries) {
  Thresholds t;
  EXPECT_EQ(0, sentiment_bucket(0.05, t));
  EXPECT_EQ(1, sentiment_bucket(0.0500001, t));
  EXPECT_EQ(0, sentiment_bucket(-0.05, t));
  EXPECT_EQ(-1, sentiment_bucket(-0.0500001, t));
  EXPECT_EQ(1, sentiment_bucket(0.5, t));
  EXPECT_EQ(2, sentiment_bucket(0.5000001, t));
  EXPECT_EQ(-1, sentiment_bucket(-0.5, t));
  EXPECT_EQ(-2, sentiment_bucket(-0.5000001, t));
  EXPECT_EQ(2, sentiment_bucket(1.0, t));
  EXPECT_EQ(-2, sentiment_bucket(-1.0, t));
}

TEST(Sentiment, BucketMonotone) {
  Thresholds t;
  int prev = -2;
  for (int i = 0; i <= 10000; ++i) {
    double s = -1.0 + 2.0 * i / 10000;
    int c = sentiment_bucket(s, t);
    EXPECT_GE(c, prev) << s;
    EXPECT_EQ(-sentiment_bucket(-s, t), c) << s;
    prev = c;
  }
}

TEST(Sentiment, BadThresholds) {
  for (Thresholds t : {Thresholds{0, 0.5}, Thresholds{0.5, 0.5}, Thresholds{0.6, 0.5},
                       Thresholds{0.1, 1.5}, Thresholds{-0.1, 0.5}}) {
    try {
      sentiment_bucket(0, t);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(Errc::BadThresholds, e.code());
    }
  }
  EXPECT_NO_THROW(check_thresholds({0.1, 1.0}));
}

TEST(Lexicon, Parse) {
  SentimentLexicon lex = fixture_lexicon();
  EXPECT_EQ(5u, lex.size());
  EXPECT_EQ(2.5, lex.valence("laughed"));
  EXPECT_EQ(-1.2, lex.valence("Fell"));
  EXPECT_EQ(0.0, lex.valence("absent"));
  auto code = [](const std::string& text) {
    try {
      SentimentLexicon::parse(text);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::EmptyInput;
  };
  EXPECT_EQ(Errc::BadLexicon, code("x\t4.5\n"));
  EXPECT_EQ(Errc::BadLexicon, code("x\tabc\n"));
  EXPECT_EQ(Errc::BadLexicon, code("x\n"));
  EXPECT_EQ(0u, SentimentLexicon::parse("# only a comment\n\n").size());
}

TEST(SentimentStats, GoldenWithFixtureLexicon) {
  SentimentStats s = sentiment_stats(load("golden_srl.csv"), fixture_lexicon(), {});
  EXPECT_EQ(16u, s.distinct_predicates);
  EXPECT_EQ(21u, s.occurrences);
  EXPECT_EQ((std::map<int, std::size_t>{{-2, 0}, {-1, 1}, {0, 14}, {1, 0}, {2, 1}}), s.by_type);
  EXPECT_EQ((std::map<int, std::size_t>{{-2, 0}, {-1, 2}, {0, 18}, {1, 0}, {2, 1}}),
            s.by_occurrence);
  std::size_t hist = 0;
  for (std::size_t n : s.score_histogram) hist += n;
  EXPECT_EQ(16u, hist);
}

TEST(ScoreBin, Edges) {
  EXPECT_EQ(0u, score_bin(-1.0));
  EXPECT_EQ(kScoreBins - 1, score_bin(1.0));
  EXPECT_EQ(kScoreBins / 2, score_bin(0.0));
}

// ---------------------------------------------------------------------------

TEST(Report, JsonFieldsAndDeterminism) {
  auto records = load("golden_srl.csv");
  DatasetStats s = compute_stats(records, fixture_lexicon(), {0.1, 0.6}, 3);
  auto j = stats_json(s);
  EXPECT_EQ(52.4, j["breakdown"]["both_arg0_arg1_pct"].get<double>());
  EXPECT_EQ(0.1, j["metadata"]["t1"].get<double>());
  EXPECT_EQ(0.6, j["metadata"]["t2"].get<double>());
  EXPECT_EQ(15.0, j["metadata"]["compound_alpha"].get<double>());

  testing::ScratchDir a, b;
  emit_report(s, a.path());
  emit_report(compute_stats(records, fixture_lexicon(), {0.1, 0.6}, 3), b.path());
  EXPECT_EQ(slurp(a / "stats.json"), slurp(b / "stats.json"));
  EXPECT_EQ(slurp(a / "stats.txt"), slurp(b / "stats.txt"));
  EXPECT_NE(slurp(a / "stats.txt").find("t1=0.10, t2=0.60"), std::string::npos);
}

TEST(RecordsFromCsv, SchemasAndErrors) {
  auto srl = load("golden_srl.csv");
  ASSERT_EQ(21u, srl.size());
  EXPECT_EQ("two dealers brokers and analysts", srl[5].arg0);
  EXPECT_EQ("The firm is a \" leader \" .", srl[12].sentence);

  auto orl = records_from_csv(
      "sentence,treebanked_sentence,holder,expression,target\ns,t,He,said,it\n");
  ASSERT_EQ(1u, orl.size());
  EXPECT_EQ("said", orl[0].predicate);
  EXPECT_EQ("He", orl[0].arg0);
  EXPECT_EQ("it", orl[0].arg1);

  auto code = [](const std::string& text) {
    try {
      records_from_csv(text);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::EmptyInput;
  };
  EXPECT_EQ(Errc::HeaderMismatch, code("sentence,treebanked_sentence,predicate,arg0\na,b,c,d\n"));
  EXPECT_EQ(Errc::HeaderMismatch,
            code("sentence,treebanked_sentence,predicate,arg0,arg1\na,b,c\n"));
  EXPECT_EQ(Errc::HeaderMismatch, code(""));
}

}  // namespace
}  // namespace srlx
