#pragma once

// End-to-end extraction: discover aligned .prop/.onf/.parse triples, resolve
// ARG0/REL/ARG1 pointers to cleaned spans, build one record per proposition,
// drop records with neither core argument, and export CSV.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "srlx/cleaning.hpp"
#include "srlx/csv.hpp"
#include "srlx/error.hpp"
#include "srlx/onf.hpp"
#include "srlx/propbank.hpp"
#include "srlx/treebank.hpp"

namespace srlx {

namespace fs = std::filesystem;

struct Provenance {
  std::string file_id;
  std::size_t tree_index = 0;
  std::size_t predicate_terminal = 0;
  std::size_t line_number = 0;
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct SrlRecord {
  std::string sentence;
  std::string treebanked_sentence;
  std::string predicate;
  std::string arg0;
  std::string arg1;
  std::string merged_arguments;
  Provenance provenance;
  friend bool operator==(const SrlRecord&, const SrlRecord&) = default;
};

struct OrlRecord {
  std::string sentence;
  std::string treebanked_sentence;
  std::string holder;
  std::string expression;
  std::string target;
  Provenance provenance;
  friend bool operator==(const OrlRecord&, const OrlRecord&) = default;
};

enum class Schema { Srl, Orl };

inline constexpr std::string_view kSrlHeader =
    "sentence,treebanked_sentence,predicate,arg0,arg1,merged_arguments";
inline constexpr std::string_view kOrlHeader =
    "sentence,treebanked_sentence,holder,expression,target";
inline constexpr char kMergeSeparator = '|';
inline constexpr char kSeparatorReplacement = '/';

struct CorpusLayout {
  fs::path prop_root;
  fs::path onf_root;
  fs::path parse_root;
  // Inclusive range of two-digit section folders searched under each root.
  int first_folder = 0;
  int last_folder = 24;
  std::vector<std::string> exclusions;
};

struct FileTriple {
  std::string file_id;
  fs::path prop;
  fs::path onf;
  fs::path parse;
};

struct SkipEntry {
  std::string file_id;
  std::string reason;
  friend bool operator==(const SkipEntry&, const SkipEntry&) = default;
};

struct Discovery {
  std::vector<FileTriple> triples;
  std::vector<SkipEntry> skipped;
  std::size_t excluded = 0;
};

struct ExtractOptions {
  TraceMode trace_mode = TraceMode::TreeGuided;
  bool strict = false;
  std::size_t jobs = 1;
};

struct ExtractSummary {
  std::size_t files_discovered = 0;
  std::size_t files_processed = 0;
  std::size_t files_skipped = 0;
  std::size_t files_excluded = 0;
  std::size_t propositions = 0;
  std::size_t propositions_in_skipped_files = 0;
  std::size_t propositions_failed = 0;
  std::size_t rows_filtered = 0;
  std::size_t rows_emitted = 0;
};

struct ExtractResult {
  std::vector<SrlRecord> records;
  std::vector<SkipEntry> skip_log;
  ExtractSummary summary;
};

// ---------------------------------------------------------------------------
// Small I/O helpers.

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(Errc::IoError, "error while reading " + path.string());
  return std::move(ss).str();
}

// One file id per line; '#' starts a comment.
inline std::vector<std::string> parse_exclusions(std::string_view text) {
  std::vector<std::string> ids;
  for (std::string_view line : onf_detail::split_lines(text)) {
    auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = onf_detail::trim(line);
    if (!line.empty()) ids.emplace_back(line);
  }
  return ids;
}

// ---------------------------------------------------------------------------
// Discovery.

namespace pipeline_detail {

inline std::string two_digits(int n) {
  std::string s = std::to_string(n);
  return s.size() < 2 ? "0" + s : s;
}

}  // namespace pipeline_detail

inline Discovery discover_files(const CorpusLayout& layout) {
  for (const fs::path* root : {&layout.prop_root, &layout.onf_root, &layout.parse_root}) {
    std::error_code ec;
    if (!fs::is_directory(*root, ec)) {
      throw Error(Errc::MissingRoot, "not a directory: " + root->string());
    }
  }

  // Relative directories to search: the root itself, then each section folder.
  std::vector<fs::path> rel_dirs{fs::path()};
  for (int f = layout.first_folder; f <= layout.last_folder; ++f) {
    rel_dirs.emplace_back(pipeline_detail::two_digits(f));
  }

  std::map<std::string, fs::path> found;  // file id -> relative dir
  std::vector<SkipEntry> skipped;
  for (const fs::path& rel : rel_dirs) {
    fs::path dir = layout.prop_root / rel;
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) continue;
    std::vector<fs::path> props;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".prop") {
        props.push_back(entry.path());
      }
    }
    std::sort(props.begin(), props.end());
    for (const fs::path& p : props) {
      std::string id = p.stem().string();
      if (!found.emplace(id, rel).second) {
        skipped.push_back({id, "duplicate file id in " + (layout.prop_root / rel).string()});
      }
    }
  }

  std::set<std::string> excluded(layout.exclusions.begin(), layout.exclusions.end());
  Discovery out;
  for (const auto& [id, rel] : found) {
    if (excluded.count(id) != 0) {
      ++out.excluded;
      continue;
    }
    FileTriple t{id, layout.prop_root / rel / (id + ".prop"),
                 layout.onf_root / rel / (id + ".onf"),
                 layout.parse_root / rel / (id + ".parse")};
    std::error_code ec;
    bool has_onf = fs::is_regular_file(t.onf, ec);
    bool has_parse = fs::is_regular_file(t.parse, ec);
    if (!has_onf || !has_parse) {
      std::string missing = !has_onf && !has_parse ? ".onf and .parse"
                            : !has_onf             ? ".onf"
                                                   : ".parse";
      skipped.push_back({id, "missing " + missing});
      continue;
    }
    out.triples.push_back(std::move(t));
  }
  std::sort(skipped.begin(), skipped.end(),
            [](const SkipEntry& a, const SkipEntry& b) { return a.file_id < b.file_id; });
  out.skipped = std::move(skipped);
  if (out.triples.empty()) {
    throw Error(Errc::EmptyCorpus, "no complete .prop/.onf/.parse triples under " +
                                       layout.prop_root.string());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Record construction.

inline std::string resolve_pointer(const TreePointer& pointer, const ParseTree& tree,
                                   TracePolicy policy) {
  try {
    return clean_subtree_text(select(tree, pointer.terminal, pointer.height), policy);
  } catch (const Error& e) {
    throw e.with_context("pointer " + format_pointer(pointer));
  }
}

// Text of every part of every expression, traces removed, parts that clean
// to nothing dropped, survivors joined by single spaces in source order.
inline std::string resolve_role(std::span<const PointerExpr> exprs, const ParseTree& tree,
                                TracePolicy policy) {
  std::vector<std::string> pieces;
  for (const PointerExpr& expr : exprs) {
    for (const TreePointer& part : expr.parts) {
      std::string text = resolve_pointer(part, tree, policy);
      if (!text.empty()) pieces.push_back(std::move(text));
    }
  }
  return join_tokens(pieces);
}

inline std::string sanitize_span(std::string span) {
  std::replace(span.begin(), span.end(), kMergeSeparator, kSeparatorReplacement);
  return span;
}

inline std::string merge_arguments(std::string_view arg0, std::string_view arg1) {
  std::string out(arg0);
  out += kMergeSeparator;
  out += arg1;
  return out;
}

inline SrlRecord build_record(const Proposition& prop, const ParseTree& tree,
                              const SentencePair& sentence, TracePolicy policy) {
  SrlRecord r;
  r.sentence = strip_traces_text(sentence.plain);
  r.treebanked_sentence = sentence.treebanked;
  r.predicate = sanitize_span(resolve_role(prop.role(RoleLabel::Rel), tree, policy));
  r.arg0 = sanitize_span(resolve_role(prop.role(RoleLabel::Arg0), tree, policy));
  r.arg1 = sanitize_span(resolve_role(prop.role(RoleLabel::Arg1), tree, policy));
  r.merged_arguments = merge_arguments(r.arg0, r.arg1);
  r.provenance = Provenance{prop.file_id, prop.tree_index, prop.predicate_terminal.index,
                            prop.line_number};
  return r;
}

inline std::string prop_context(const Proposition& prop) {
  std::string ctx = prop.file_id;
  if (prop.line_number != 0) ctx += ":" + std::to_string(prop.line_number);
  ctx += " tree " + std::to_string(prop.tree_index);
  return ctx;
}

inline SrlRecord build_record(const Proposition& prop, std::span<const ParseTree> trees,
                              std::span<const SentencePair> sentences, TracePolicy policy) {
  if (prop.tree_index >= trees.size() || prop.tree_index >= sentences.size()) {
    throw Error(Errc::AlignmentError,
                prop_context(prop) + ": tree index out of range (" +
                    std::to_string(trees.size()) + " trees, " +
                    std::to_string(sentences.size()) + " sentences)");
  }
  try {
    return build_record(prop, trees[prop.tree_index], sentences[prop.tree_index], policy);
  } catch (const Error& e) {
    throw e.with_context(prop_context(prop));
  }
}

inline std::vector<SrlRecord> build_records(std::span<const Proposition> props,
                                            std::span<const ParseTree> trees,
                                            std::span<const SentencePair> sentences,
                                            TracePolicy policy) {
  if (trees.size() != sentences.size()) {
    throw Error(Errc::AlignmentError, std::to_string(sentences.size()) + " sentences but " +
                                          std::to_string(trees.size()) + " trees");
  }
  std::vector<SrlRecord> out;
  out.reserve(props.size());
  for (const Proposition& p : props) out.push_back(build_record(p, trees, sentences, policy));
  return out;
}

inline bool has_core_argument(const SrlRecord& r) {
  return r.merged_arguments != std::string(1, kMergeSeparator);
}

inline std::vector<SrlRecord> filter_records(std::vector<SrlRecord> records) {
  std::erase_if(records, [](const SrlRecord& r) { return !has_core_argument(r); });
  return records;
}

inline OrlRecord map_to_orl(const SrlRecord& r) {
  return OrlRecord{r.sentence, r.treebanked_sentence, r.arg0,
                   r.predicate, r.arg1,       r.provenance};
}

// ---------------------------------------------------------------------------
// Export.

inline void write_csv(std::ostream& os, std::span<const SrlRecord> records, Schema schema) {
  os << (schema == Schema::Srl ? kSrlHeader : kOrlHeader) << '\n';
  for (const SrlRecord& r : records) {
    if (schema == Schema::Srl) {
      std::vector<std::string> row{r.sentence, r.treebanked_sentence, r.predicate,
                                   r.arg0,     r.arg1,                r.merged_arguments};
      csv::write_row(os, row);
    } else {
      OrlRecord o = map_to_orl(r);
      std::vector<std::string> row{o.sentence, o.treebanked_sentence, o.holder, o.expression,
                                   o.target};
      csv::write_row(os, row);
    }
  }
}

inline void export_csv(std::span<const SrlRecord> records, const fs::path& path,
                       Schema schema) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
  write_csv(out, records, schema);
  out.flush();
  if (!out) throw Error(Errc::IoError, "error while writing " + path.string());
}

inline void write_skip_log(std::ostream& os, std::span<const SkipEntry> entries) {
  for (const SkipEntry& e : entries) os << e.file_id << '\t' << e.reason << '\n';
}

// ---------------------------------------------------------------------------
// Per-file processing.

// Loaded and parsed contents of one triple. Lines that fail to parse and
// trees that fail to parse are kept as errors so callers decide policy.
struct LoadedFile {
  std::string file_id;
  std::vector<Proposition> propositions;  // sorted
  std::vector<SkipEntry> line_errors;     // unparseable .prop lines
  std::vector<SentencePair> sentences;
  std::vector<std::optional<ParseTree>> trees;
  std::vector<std::string> tree_errors;  // parallel to trees; empty when parsed
  std::size_t raw_propositions = 0;      // non-blank .prop lines
};

inline LoadedFile load_file(const FileTriple& triple) {
  LoadedFile f;
  f.file_id = triple.file_id;

  std::string prop_text = read_file(triple.prop);
  std::size_t line_no = 0;
  for (std::string_view line : onf_detail::split_lines(prop_text)) {
    ++line_no;
    if (onf_detail::trim(line).empty()) continue;
    ++f.raw_propositions;
    try {
      Proposition p = parse_prop_line(line);
      p.file_id = triple.file_id;
      p.line_number = line_no;
      f.propositions.push_back(std::move(p));
    } catch (const Error& e) {
      f.line_errors.push_back(
          {triple.file_id, "line " + std::to_string(line_no) + ": " +
                               std::string(errc_name(e.code())) + ": " + e.what()});
    }
  }
  f.propositions = sort_propositions(std::move(f.propositions));

  try {
    f.sentences = parse_onf(read_file(triple.onf));
  } catch (const Error& e) {
    throw e.with_context(triple.onf.string());
  }
  for (const std::string& chunk : parse_trees_file(read_file(triple.parse))) {
    try {
      f.trees.emplace_back(parse_tree(chunk));
      f.tree_errors.emplace_back();
    } catch (const Error& e) {
      f.trees.emplace_back(std::nullopt);
      f.tree_errors.push_back(std::string(errc_name(e.code())) + ": " + e.what());
    }
  }
  return f;
}

struct FileResult {
  std::vector<SrlRecord> records;  // unfiltered, in output order
  std::vector<SkipEntry> issues;
  std::size_t propositions = 0;
  std::size_t propositions_failed = 0;
  bool skipped = false;
};

inline FileResult process_file(const FileTriple& triple, const ExtractOptions& options) {
  FileResult out;
  auto fail = [&](const SkipEntry& entry, Errc code) {
    if (options.strict) throw Error(code, entry.file_id + ": " + entry.reason);
    out.issues.push_back(entry);
  };

  LoadedFile f;
  try {
    f = load_file(triple);
  } catch (const Error& e) {
    if (options.strict) throw e.with_context(triple.file_id);
    out.skipped = true;
    out.issues.push_back({triple.file_id, std::string(errc_name(e.code())) + ": " + e.what()});
    return out;
  }
  out.propositions = f.raw_propositions;
  for (const SkipEntry& e : f.line_errors) {
    ++out.propositions_failed;
    fail(e, Errc::MalformedLine);
  }

  if (f.sentences.size() != f.trees.size()) {
    SkipEntry e{triple.file_id, "AlignmentError: " + std::to_string(f.sentences.size()) +
                                    " sentences but " + std::to_string(f.trees.size()) +
                                    " trees"};
    if (options.strict) throw Error(Errc::AlignmentError, e.file_id + ": " + e.reason);
    out.skipped = true;
    out.propositions_failed = 0;
    out.issues.push_back(std::move(e));
    return out;
  }

  TracePolicy policy{options.trace_mode};
  for (const Proposition& p : f.propositions) {
    std::string where = "line " + std::to_string(p.line_number);
    if (p.tree_index < f.trees.size() && !f.trees[p.tree_index]) {
      ++out.propositions_failed;
      fail({triple.file_id, where + ": tree " + std::to_string(p.tree_index) + " " +
                                f.tree_errors[p.tree_index]},
           Errc::MalformedTree);
      continue;
    }
    try {
      if (p.tree_index >= f.trees.size()) {
        throw Error(Errc::AlignmentError,
                    "tree index " + std::to_string(p.tree_index) + " out of range (" +
                        std::to_string(f.trees.size()) + " trees)");
      }
      out.records.push_back(
          build_record(p, *f.trees[p.tree_index], f.sentences[p.tree_index], policy));
    } catch (const Error& e) {
      ++out.propositions_failed;
      fail({triple.file_id, where + ": " + std::string(errc_name(e.code())) + ": " + e.what()},
           e.code());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Whole-corpus run.

inline ExtractResult run_extraction(const CorpusLayout& layout, const ExtractOptions& options) {
  Discovery discovery = discover_files(layout);
  const std::size_t n = discovery.triples.size();
  std::vector<FileResult> results(n);
  std::vector<std::exception_ptr> errors(n);

  auto work = [&](std::size_t i) {
    try {
      results[i] = process_file(discovery.triples[i], options);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  std::size_t jobs = std::clamp<std::size_t>(options.jobs, 1, std::max<std::size_t>(n, 1));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) work(i);
      });
    }
  }
  // First failure in file order, so strict-mode errors are deterministic.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  ExtractResult out;
  ExtractSummary& s = out.summary;
  s.files_discovered = n + discovery.skipped.size() + discovery.excluded;
  s.files_excluded = discovery.excluded;
  out.skip_log = discovery.skipped;
  s.files_skipped = discovery.skipped.size();

  for (FileResult& r : results) {
    if (r.skipped) {
      ++s.files_skipped;
      s.propositions_in_skipped_files += r.propositions;
    } else {
      ++s.files_processed;
      s.propositions_failed += r.propositions_failed;
    }
    s.propositions += r.propositions;
    out.skip_log.insert(out.skip_log.end(), r.issues.begin(), r.issues.end());
    for (SrlRecord& rec : r.records) {
      if (has_core_argument(rec)) {
        out.records.push_back(std::move(rec));
      } else {
        ++s.rows_filtered;
      }
    }
  }
  s.rows_emitted = out.records.size();
  return out;
}

// ---------------------------------------------------------------------------
// Corpus validation.

struct Violation {
  std::string file_id;
  std::string tree;  // tree index, or "-" for file-level problems
  std::string pointer;
  std::string reason;
};

inline std::vector<Violation> validate_file(const FileTriple& triple) {
  std::vector<Violation> out;
  LoadedFile f;
  try {
    f = load_file(triple);
  } catch (const Error& e) {
    out.push_back({triple.file_id, "-", "-", std::string(errc_name(e.code())) + ": " + e.what()});
    return out;
  }
  for (const SkipEntry& e : f.line_errors) out.push_back({triple.file_id, "-", "-", e.reason});
  if (f.sentences.size() != f.trees.size()) {
    out.push_back({triple.file_id, "-", "-",
                   "AlignmentError: " + std::to_string(f.sentences.size()) +
                       " sentences but " + std::to_string(f.trees.size()) + " trees"});
  }
  for (std::size_t i = 0; i < f.trees.size(); ++i) {
    if (!f.trees[i]) out.push_back({triple.file_id, std::to_string(i), "-", f.tree_errors[i]});
  }
  for (const Proposition& p : f.propositions) {
    std::string where = "line " + std::to_string(p.line_number) + ": ";
    if (p.tree_index >= f.trees.size()) {
      out.push_back({triple.file_id, std::to_string(p.tree_index), "-",
                     where + "AlignmentError: tree index out of range (" +
                         std::to_string(f.trees.size()) + " trees)"});
      continue;
    }
    if (!f.trees[p.tree_index]) continue;
    const ParseTree& tree = *f.trees[p.tree_index];
    if (p.predicate_terminal.index >= terminal_count(tree)) {
      out.push_back({triple.file_id, std::to_string(p.tree_index),
                     std::to_string(p.predicate_terminal.index),
                     where + "TerminalOutOfRange: predicate terminal out of range"});
    }
    for (const auto& [label, exprs] : p.roles) {
      for (const PointerExpr& expr : exprs) {
        for (const TreePointer& ptr : expr.parts) {
          try {
            select(tree, ptr.terminal, ptr.height);
          } catch (const Error& e) {
            out.push_back({triple.file_id, std::to_string(p.tree_index), format_pointer(ptr),
                           where + std::string(errc_name(e.code())) + ": " + e.what()});
          }
        }
      }
    }
  }
  return out;
}

}  // namespace srlx
