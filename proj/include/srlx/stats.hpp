#pragma once

// Dataset statistics over extracted records: argument-configuration
// breakdown, predicate frequencies, mean span lengths and lexicon-based
// predicate sentiment with five-way bucketing.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "srlx/csv.hpp"
#include "srlx/error.hpp"
#include "srlx/onf.hpp"
#include "srlx/pipeline.hpp"

namespace srlx {

// Normalization constant of the compound score s / sqrt(s^2 + alpha).
inline constexpr double kCompoundAlpha = 15.0;
inline constexpr double kDefaultT1 = 0.05;
inline constexpr double kDefaultT2 = 0.5;
inline constexpr double kMaxValence = 4.0;

inline double round1(double x) { return std::round(x * 10.0) / 10.0; }

struct ArgBreakdown {
  double both_pct = 0;
  double only_arg1_pct = 0;
  double only_arg0_pct = 0;
  std::size_t both = 0;
  std::size_t only_arg1 = 0;
  std::size_t only_arg0 = 0;
  std::size_t total = 0;
  friend bool operator==(const ArgBreakdown&, const ArgBreakdown&) = default;
};

struct SpanLengths {
  double mean_arg0 = 0;
  double mean_arg1 = 0;
  bool arg0_undefined = false;
  bool arg1_undefined = false;
  std::size_t arg0_spans = 0;
  std::size_t arg1_spans = 0;
};

using PredicateCount = std::pair<std::string, std::size_t>;

// ---------------------------------------------------------------------------

inline ArgBreakdown arg_breakdown(std::span<const SrlRecord> records) {
  if (records.empty()) throw Error(Errc::EmptyInput, "no records for argument breakdown");
  ArgBreakdown b;
  for (const SrlRecord& r : records) {
    bool a0 = !r.arg0.empty(), a1 = !r.arg1.empty();
    if (a0 && a1) {
      ++b.both;
    } else if (a1) {
      ++b.only_arg1;
    } else if (a0) {
      ++b.only_arg0;
    }
  }
  b.total = records.size();
  auto pct = [&](std::size_t n) { return round1(100.0 * n / b.total); };
  b.both_pct = pct(b.both);
  b.only_arg1_pct = pct(b.only_arg1);
  b.only_arg0_pct = pct(b.only_arg0);
  return b;
}

// Descending by count, ties broken lexicographically, truncated to k.
inline std::vector<PredicateCount> predicate_frequencies(std::span<const SrlRecord> records,
                                                         std::size_t k) {
  if (records.empty()) throw Error(Errc::EmptyInput, "no records for predicate frequencies");
  if (k == 0) throw Error(Errc::EmptyInput, "top-k must be at least 1");
  std::map<std::string, std::size_t> counts;
  for (const SrlRecord& r : records) ++counts[r.predicate];
  std::vector<PredicateCount> ranked(counts.begin(), counts.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (ranked.size() > k) ranked.resize(k);
  return ranked;
}

inline std::size_t word_count(std::string_view s) {
  std::size_t n = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && treebank_detail::is_space(s[i])) ++i;
    if (i < s.size()) ++n;
    while (i < s.size() && !treebank_detail::is_space(s[i])) ++i;
  }
  return n;
}

inline SpanLengths span_length_stats(std::span<const SrlRecord> records) {
  SpanLengths out;
  std::size_t words0 = 0, words1 = 0;
  for (const SrlRecord& r : records) {
    if (!r.arg0.empty()) {
      ++out.arg0_spans;
      words0 += word_count(r.arg0);
    }
    if (!r.arg1.empty()) {
      ++out.arg1_spans;
      words1 += word_count(r.arg1);
    }
  }
  if (out.arg0_spans == 0 && out.arg1_spans == 0) {
    throw Error(Errc::EmptyInput, "no non-empty argument spans");
  }
  out.arg0_undefined = out.arg0_spans == 0;
  out.arg1_undefined = out.arg1_spans == 0;
  if (!out.arg0_undefined) out.mean_arg0 = round1(double(words0) / out.arg0_spans);
  if (!out.arg1_undefined) out.mean_arg1 = round1(double(words1) / out.arg1_spans);
  return out;
}

// ---------------------------------------------------------------------------
// Sentiment.

class SentimentLexicon {
 public:
  SentimentLexicon() = default;

  void add(std::string_view token, double valence) {
    if (!(valence >= -kMaxValence && valence <= kMaxValence)) {
      throw Error(Errc::BadLexicon, "valence for '" + std::string(token) + "' outside [-4, 4]");
    }
    entries_[onf_detail::lower(token)] = valence;
  }

  double valence(std::string_view token) const {
    auto it = entries_.find(onf_detail::lower(token));
    return it == entries_.end() ? 0.0 : it->second;
  }

  std::size_t size() const { return entries_.size(); }

  // Line-oriented `token<TAB>valence[<TAB>...]`, '#' comments. Extra
  // tab-separated columns are ignored.
  static SentimentLexicon parse(std::string_view text) {
    SentimentLexicon lex;
    std::size_t line_no = 0;
    for (std::string_view line : onf_detail::split_lines(text)) {
      ++line_no;
      if (onf_detail::trim(line).empty() || onf_detail::trim(line).front() == '#') continue;
      auto tab = line.find('\t');
      if (tab == std::string_view::npos) {
        throw Error(Errc::BadLexicon, "lexicon line " + std::to_string(line_no) +
                                          ": expected token<TAB>valence");
      }
      std::string_view token = onf_detail::trim(line.substr(0, tab));
      std::string_view rest = line.substr(tab + 1);
      rest = onf_detail::trim(rest.substr(0, rest.find('\t')));
      double v = 0;
      try {
        std::size_t used = 0;
        v = std::stod(std::string(rest), &used);
        if (used != rest.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw Error(Errc::BadLexicon, "lexicon line " + std::to_string(line_no) +
                                          ": bad valence '" + std::string(rest) + "'");
      }
      if (token.empty()) {
        throw Error(Errc::BadLexicon, "lexicon line " + std::to_string(line_no) + ": empty token");
      }
      lex.add(token, v);
    }
    return lex;
  }

 private:
  std::unordered_map<std::string, double> entries_;
};

inline double compound_from_sum(double sum) {
  double c = sum / std::sqrt(sum * sum + kCompoundAlpha);
  return std::clamp(c, -1.0, 1.0);
}

inline double sentiment_score(std::string_view predicate, const SentimentLexicon& lexicon) {
  double sum = 0;
  std::size_t i = 0;
  while (i < predicate.size()) {
    while (i < predicate.size() && treebank_detail::is_space(predicate[i])) ++i;
    std::size_t start = i;
    while (i < predicate.size() && !treebank_detail::is_space(predicate[i])) ++i;
    if (i > start) sum += lexicon.valence(predicate.substr(start, i - start));
  }
  return compound_from_sum(sum);
}

struct Thresholds {
  double t1 = kDefaultT1;
  double t2 = kDefaultT2;
};

inline void check_thresholds(Thresholds t) {
  if (!(t.t1 > 0 && t.t1 < t.t2 && t.t2 <= 1)) {
    throw Error(Errc::BadThresholds, "need 0 < t1 < t2 <= 1, got t1=" + std::to_string(t.t1) +
                                         " t2=" + std::to_string(t.t2));
  }
}

// -2 below -t2, -1 in [-t2, -t1), 0 in [-t1, t1], +1 in (t1, t2], +2 above t2.
inline int sentiment_bucket(double score, Thresholds t) {
  check_thresholds(t);
  if (score < -t.t2) return -2;
  if (score < -t.t1) return -1;
  if (score <= t.t1) return 0;
  if (score <= t.t2) return 1;
  return 2;
}

inline constexpr std::size_t kScoreBins = 20;

struct SentimentStats {
  Thresholds thresholds;
  // Keyed by class -2..+2; all five keys always present.
  std::map<int, std::size_t> by_type;        // distinct predicates
  std::map<int, std::size_t> by_occurrence;  // every record
  std::vector<std::size_t> score_histogram;  // kScoreBins equal bins over [-1, 1], types
  std::size_t distinct_predicates = 0;
  std::size_t occurrences = 0;
};

inline std::size_t score_bin(double score) {
  double pos = (score + 1.0) / 2.0 * kScoreBins;
  auto bin = static_cast<std::ptrdiff_t>(std::floor(pos));
  return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(bin, 0, kScoreBins - 1));
}

inline SentimentStats sentiment_stats(std::span<const SrlRecord> records,
                                      const SentimentLexicon& lexicon, Thresholds t) {
  check_thresholds(t);
  SentimentStats s;
  s.thresholds = t;
  for (int c = -2; c <= 2; ++c) s.by_type[c] = s.by_occurrence[c] = 0;
  s.score_histogram.assign(kScoreBins, 0);
  std::map<std::string, std::size_t> counts;
  for (const SrlRecord& r : records) {
    if (!r.predicate.empty()) ++counts[r.predicate];
  }
  for (const auto& [pred, n] : counts) {
    double score = sentiment_score(pred, lexicon);
    int cls = sentiment_bucket(score, t);
    ++s.by_type[cls];
    s.by_occurrence[cls] += n;
    ++s.score_histogram[score_bin(score)];
    s.occurrences += n;
  }
  s.distinct_predicates = counts.size();
  return s;
}

// ---------------------------------------------------------------------------
// Aggregate and report.

inline constexpr std::size_t kDefaultTopK = 20;

struct DatasetStats {
  std::size_t records = 0;
  ArgBreakdown breakdown;
  std::vector<PredicateCount> top_predicates;
  SpanLengths lengths;
  SentimentStats sentiment;
  std::optional<std::string> lexicon_path;
};

inline DatasetStats compute_stats(std::span<const SrlRecord> records,
                                  const SentimentLexicon& lexicon, Thresholds t,
                                  std::size_t top_k = kDefaultTopK) {
  DatasetStats s;
  s.records = records.size();
  s.breakdown = arg_breakdown(records);
  s.top_predicates = predicate_frequencies(records, top_k);
  s.lengths = span_length_stats(records);
  s.sentiment = sentiment_stats(records, lexicon, t);
  return s;
}

inline nlohmann::ordered_json breakdown_json(const ArgBreakdown& b) {
  nlohmann::ordered_json j;
  j["both_arg0_arg1_pct"] = b.both_pct;
  j["only_arg1_pct"] = b.only_arg1_pct;
  j["only_arg0_pct"] = b.only_arg0_pct;
  j["both_arg0_arg1"] = b.both;
  j["only_arg1"] = b.only_arg1;
  j["only_arg0"] = b.only_arg0;
  j["total"] = b.total;
  return j;
}

inline nlohmann::ordered_json stats_json(const DatasetStats& s) {
  using nlohmann::ordered_json;
  ordered_json j;
  ordered_json meta;
  meta["records"] = s.records;
  meta["t1"] = s.sentiment.thresholds.t1;
  meta["t2"] = s.sentiment.thresholds.t2;
  meta["lexicon"] = s.lexicon_path ? ordered_json(*s.lexicon_path) : ordered_json(nullptr);
  meta["compound_alpha"] = kCompoundAlpha;
  j["metadata"] = meta;
  j["breakdown"] = breakdown_json(s.breakdown);

  ordered_json top = ordered_json::array();
  for (const auto& [pred, n] : s.top_predicates) top.push_back({{"predicate", pred}, {"count", n}});
  j["top_predicates"] = top;

  ordered_json lengths;
  lengths["mean_arg0_words"] = s.lengths.mean_arg0;
  lengths["arg0_undefined"] = s.lengths.arg0_undefined;
  lengths["arg0_spans"] = s.lengths.arg0_spans;
  lengths["mean_arg1_words"] = s.lengths.mean_arg1;
  lengths["arg1_undefined"] = s.lengths.arg1_undefined;
  lengths["arg1_spans"] = s.lengths.arg1_spans;
  j["span_lengths"] = lengths;

  ordered_json sent;
  auto classes = [](const std::map<int, std::size_t>& m) {
    ordered_json c;
    for (const auto& [cls, n] : m) c[std::to_string(cls)] = n;
    return c;
  };
  sent["distinct_predicates"] = s.sentiment.distinct_predicates;
  sent["occurrences"] = s.sentiment.occurrences;
  sent["classes_by_type"] = classes(s.sentiment.by_type);
  sent["classes_by_occurrence"] = classes(s.sentiment.by_occurrence);
  auto neutral_pct = [](const std::map<int, std::size_t>& m, std::size_t total) {
    return total == 0 ? 0.0 : round1(100.0 * m.at(0) / total);
  };
  sent["neutral_pct_by_type"] = neutral_pct(s.sentiment.by_type, s.sentiment.distinct_predicates);
  sent["neutral_pct_by_occurrence"] =
      neutral_pct(s.sentiment.by_occurrence, s.sentiment.occurrences);
  sent["score_histogram"] = s.sentiment.score_histogram;
  j["sentiment"] = sent;
  return j;
}

namespace stats_detail {

inline std::string fixed1(double x) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(1);
  os << x;
  return os.str();
}

inline std::string fixed2(double x) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << x;
  return os.str();
}

inline constexpr std::size_t kBarWidth = 40;

inline std::string bar(std::size_t n, std::size_t max) {
  std::size_t w = max == 0 ? 0 : (n * kBarWidth + max - 1) / max;
  return std::string(w, '#');
}

inline std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace stats_detail

inline std::string stats_text(const DatasetStats& s) {
  using namespace stats_detail;
  std::ostringstream os;
  os << "records: " << s.records << "\n\n";

  os << "== argument configuration (%) ==\n";
  const ArgBreakdown& b = s.breakdown;
  std::size_t bmax = std::max({b.both, b.only_arg1, b.only_arg0});
  os << pad("both ARG0 & ARG1", 18) << pad(fixed1(b.both_pct), 6) << bar(b.both, bmax) << '\n';
  os << pad("only ARG1", 18) << pad(fixed1(b.only_arg1_pct), 6) << bar(b.only_arg1, bmax) << '\n';
  os << pad("only ARG0", 18) << pad(fixed1(b.only_arg0_pct), 6) << bar(b.only_arg0, bmax)
     << "\n\n";

  os << "== top predicates ==\n";
  std::size_t pmax = s.top_predicates.empty() ? 0 : s.top_predicates.front().second;
  std::size_t width = 4;
  for (const auto& [p, n] : s.top_predicates) width = std::max(width, p.size() + 2);
  for (const auto& [p, n] : s.top_predicates) {
    os << pad(p, width) << pad(std::to_string(n), 8) << bar(n, pmax) << '\n';
  }
  os << '\n';

  os << "== mean span length (words) ==\n";
  os << pad("ARG0", 6) << fixed1(s.lengths.mean_arg0)
     << (s.lengths.arg0_undefined ? "  (undefined)" : "") << '\n';
  os << pad("ARG1", 6) << fixed1(s.lengths.mean_arg1)
     << (s.lengths.arg1_undefined ? "  (undefined)" : "") << "\n\n";

  const SentimentStats& st = s.sentiment;
  os << "== predicate sentiment classes (t1=" << fixed2(st.thresholds.t1)
     << ", t2=" << fixed2(st.thresholds.t2) << ") ==\n";
  std::size_t cmax = 0;
  for (const auto& [c, n] : st.by_type) cmax = std::max(cmax, n);
  os << pad("class", 7) << pad("types", 8) << pad("tokens", 8) << '\n';
  for (const auto& [c, n] : st.by_type) {
    os << pad((c > 0 ? "+" : "") + std::to_string(c), 7) << pad(std::to_string(n), 8)
       << pad(std::to_string(st.by_occurrence.at(c)), 8) << bar(n, cmax) << '\n';
  }
  os << '\n';

  os << "== compound score histogram (types) ==\n";
  std::size_t hmax = 0;
  for (std::size_t n : st.score_histogram) hmax = std::max(hmax, n);
  for (std::size_t i = 0; i < st.score_histogram.size(); ++i) {
    double lo = -1.0 + 2.0 * i / kScoreBins;
    double hi = -1.0 + 2.0 * (i + 1) / kScoreBins;
    os << '[' << pad(fixed2(lo), 5) << ", " << pad(fixed2(hi), 5) << ") "
       << pad(std::to_string(st.score_histogram[i]), 6) << bar(st.score_histogram[i], hmax)
       << '\n';
  }
  return os.str();
}

// Writes stats.json and stats.txt into `dir`.
inline void emit_report(const DatasetStats& s, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  auto write = [](const fs::path& p, const std::string& body) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::IoError, "cannot write " + p.string());
    out << body;
    out.flush();
    if (!out) throw Error(Errc::IoError, "error while writing " + p.string());
  };
  write(dir / "stats.json", stats_json(s).dump(2) + "\n");
  write(dir / "stats.txt", stats_text(s));
}

// ---------------------------------------------------------------------------
// Reading an exported dataset back.

// Accepts either export schema; column order is free.
inline std::vector<SrlRecord> records_from_csv(std::string_view text) {
  auto rows = csv::parse(text);
  if (rows.empty()) throw Error(Errc::HeaderMismatch, "CSV has no header row");
  const auto& header = rows.front();
  auto col = [&](std::string_view name) -> std::optional<std::size_t> {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  };
  bool orl = !col("predicate") && col("expression");
  const std::vector<std::string_view> needed =
      orl ? std::vector<std::string_view>{"sentence", "treebanked_sentence", "holder",
                                          "expression", "target"}
          : std::vector<std::string_view>{"sentence", "treebanked_sentence", "predicate",
                                          "arg0", "arg1"};
  std::vector<std::size_t> idx;
  for (std::string_view name : needed) {
    auto c = col(name);
    if (!c) throw Error(Errc::HeaderMismatch, "CSV header lacks column '" + std::string(name) + "'");
    idx.push_back(*c);
  }
  std::vector<SrlRecord> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size()) {
      throw Error(Errc::HeaderMismatch, "CSV row " + std::to_string(r + 1) + " has " +
                                            std::to_string(row.size()) + " fields, header has " +
                                            std::to_string(header.size()));
    }
    SrlRecord rec;
    rec.sentence = row[idx[0]];
    rec.treebanked_sentence = row[idx[1]];
    if (orl) {
      rec.arg0 = row[idx[2]];
      rec.predicate = row[idx[3]];
      rec.arg1 = row[idx[4]];
    } else {
      rec.predicate = row[idx[2]];
      rec.arg0 = row[idx[3]];
      rec.arg1 = row[idx[4]];
    }
    rec.merged_arguments = merge_arguments(rec.arg0, rec.arg1);
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace srlx
