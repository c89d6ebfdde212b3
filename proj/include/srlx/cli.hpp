#pragma once

// Subcommands of the `srlx` tool. Each returns a process exit status and
// writes to the given streams, so tests can drive them without spawning.

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include "srlx/cleaning.hpp"
#include "srlx/error.hpp"
#include "srlx/pipeline.hpp"
#include "srlx/stats.hpp"

namespace srlx::cli {

struct RunConfig {
  CorpusLayout layout;
  std::optional<fs::path> exclude_file;
  fs::path output_path = "dataset.csv";
  std::optional<fs::path> skip_log_path;  // default: skipped.tsv next to output
  Schema schema = Schema::Srl;
  TraceMode trace_mode = TraceMode::TreeGuided;
  bool strict = false;
  std::optional<fs::path> lexicon_path;
  Thresholds thresholds;
  std::size_t top_k = kDefaultTopK;
  std::size_t parallelism = 1;
  fs::path stats_dir = ".";
};

inline void report_error(std::ostream& err, const Error& e) {
  std::string msg = e.what();
  for (char& c : msg) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  err << "error: " << errc_name(e.code()) << ": " << msg << '\n';
}

inline fs::path default_skip_log(const fs::path& output) {
  return output.parent_path() / "skipped.tsv";
}

inline void load_exclusions(RunConfig& config) {
  if (config.exclude_file) {
    auto ids = parse_exclusions(read_file(*config.exclude_file));
    config.layout.exclusions.insert(config.layout.exclusions.end(), ids.begin(), ids.end());
  }
}

inline int cmd_extract(RunConfig config, std::ostream& out, std::ostream& err) {
  try {
    load_exclusions(config);
    ExtractOptions options{config.trace_mode, config.strict, config.parallelism};
    ExtractResult result = run_extraction(config.layout, options);
    export_csv(result.records, config.output_path, config.schema);

    fs::path skip_path = config.skip_log_path.value_or(default_skip_log(config.output_path));
    std::ofstream skip(skip_path, std::ios::binary | std::ios::trunc);
    if (!skip) throw Error(Errc::IoError, "cannot write " + skip_path.string());
    write_skip_log(skip, result.skip_log);

    const ExtractSummary& s = result.summary;
    out << "files discovered:              " << s.files_discovered << '\n'
        << "files excluded:                " << s.files_excluded << '\n'
        << "files skipped:                 " << s.files_skipped << '\n'
        << "files processed:               " << s.files_processed << '\n'
        << "propositions:                  " << s.propositions << '\n'
        << "propositions in skipped files: " << s.propositions_in_skipped_files << '\n'
        << "propositions failed:           " << s.propositions_failed << '\n'
        << "rows filtered (no ARG0/ARG1):  " << s.rows_filtered << '\n'
        << "rows emitted:                  " << s.rows_emitted << '\n'
        << "output:                        " << config.output_path.string() << '\n'
        << "skip log:                      " << skip_path.string() << '\n';
    return 0;
  } catch (const Error& e) {
    report_error(err, e);
    return 1;
  }
}

inline void print_breakdown(std::ostream& out, const DatasetStats& s) {
  using stats_detail::fixed1;
  out << "records: " << s.records << '\n'
      << "both ARG0 & ARG1: " << fixed1(s.breakdown.both_pct) << '\n'
      << "only ARG1: " << fixed1(s.breakdown.only_arg1_pct) << '\n'
      << "only ARG0: " << fixed1(s.breakdown.only_arg0_pct) << '\n'
      << "mean ARG0 words: " << fixed1(s.lengths.mean_arg0)
      << (s.lengths.arg0_undefined ? " (undefined)" : "") << '\n'
      << "mean ARG1 words: " << fixed1(s.lengths.mean_arg1)
      << (s.lengths.arg1_undefined ? " (undefined)" : "") << '\n';
  out << "top predicates:\n";
  for (const auto& [p, n] : s.top_predicates) out << "  " << p << '\t' << n << '\n';
}

inline int cmd_stats(const RunConfig& config, const fs::path& csv_path, std::ostream& out,
                     std::ostream& err) {
  try {
    check_thresholds(config.thresholds);
    SentimentLexicon lexicon;
    if (config.lexicon_path) lexicon = SentimentLexicon::parse(read_file(*config.lexicon_path));
    auto records = records_from_csv(read_file(csv_path));
    DatasetStats s = compute_stats(records, lexicon, config.thresholds, config.top_k);
    if (config.lexicon_path) s.lexicon_path = config.lexicon_path->string();
    emit_report(s, config.stats_dir);
    print_breakdown(out, s);
    return 0;
  } catch (const Error& e) {
    report_error(err, e);
    return 1;
  }
}

inline int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    Discovery d = discover_files(config.layout);
    std::vector<Violation> violations;
    for (const SkipEntry& s : d.skipped) violations.push_back({s.file_id, "-", "-", s.reason});
    for (const FileTriple& t : d.triples) {
      auto v = validate_file(t);
      violations.insert(violations.end(), v.begin(), v.end());
    }
    if (!violations.empty()) {
      out << "file_id\ttree\tpointer\treason\n";
      for (const Violation& v : violations) {
        out << v.file_id << '\t' << v.tree << '\t' << v.pointer << '\t' << v.reason << '\n';
      }
    }
    out << d.triples.size() << " files checked, " << violations.size() << " violations\n";
    return violations.empty() ? 0 : 1;
  } catch (const Error& e) {
    report_error(err, e);
    return 1;
  }
}

inline std::string role_name(RoleLabel l) {
  switch (l) {
    case RoleLabel::Arg0: return "ARG0";
    case RoleLabel::Arg1: return "ARG1";
    case RoleLabel::Rel: return "REL";
  }
  return "?";
}

inline int cmd_inspect(const RunConfig& config, const std::string& file_id,
                       std::size_t tree_index, std::ostream& out, std::ostream& err) {
  try {
    Discovery d = discover_files(config.layout);
    auto it = std::find_if(d.triples.begin(), d.triples.end(),
                           [&](const FileTriple& t) { return t.file_id == file_id; });
    if (it == d.triples.end()) throw Error(Errc::UnknownFile, "no file with id '" + file_id + "'");
    LoadedFile f = load_file(*it);
    if (tree_index >= f.trees.size()) {
      throw Error(Errc::IndexOutOfRange, file_id + " has " + std::to_string(f.trees.size()) +
                                             " trees, asked for tree " +
                                             std::to_string(tree_index));
    }
    out << "file: " << file_id << "  tree: " << tree_index << '\n';
    if (!f.trees[tree_index]) {
      out << "tree does not parse: " << f.tree_errors[tree_index] << '\n';
      return 1;
    }
    const ParseTree& tree = *f.trees[tree_index];
    TracePolicy policy{config.trace_mode};

    out << "\n== tree ==\n" << pretty(tree);
    out << "\n== terminals ==\n";
    auto terms = terminals(tree);
    for (std::size_t i = 0; i < terms.size(); ++i) {
      out << i << '\t' << terms[i]->label() << '\t' << terms[i]->token() << '\n';
    }
    out << "\n== sentence ==\n";
    if (tree_index < f.sentences.size()) {
      out << "plain:      " << f.sentences[tree_index].plain << '\n'
          << "treebanked: " << f.sentences[tree_index].treebanked << '\n';
    } else {
      out << "(no sentence: " << f.sentences.size() << " sentences for " << f.trees.size()
          << " trees)\n";
    }
    out << "\n== propositions ==\n";
    for (const Proposition& p : f.propositions) {
      if (p.tree_index != tree_index) continue;
      out << "line " << p.line_number << ": predicate terminal " << p.predicate_terminal.index
          << '\n';
      for (RoleLabel label : {RoleLabel::Rel, RoleLabel::Arg0, RoleLabel::Arg1}) {
        for (const PointerExpr& expr : p.role(label)) {
          out << "  " << role_name(label) << ' ' << format_pointer_expr(expr) << " -> ";
          try {
            out << '"' << resolve_role(std::span(&expr, 1), tree, policy) << "\"\n";
          } catch (const Error& e) {
            out << errc_name(e.code()) << ": " << e.what() << '\n';
          }
        }
      }
    }
    return 0;
  } catch (const Error& e) {
    report_error(err, e);
    return 1;
  }
}

// ---------------------------------------------------------------------------

// TOML config where top-level keys belong to the invoked subcommand, so a
// flat `prop = "..."` file works; [extract]-style sections also work.
class FlatConfig : public CLI::ConfigTOML {
 public:
  explicit FlatConfig(std::string subcommand) : subcommand_(std::move(subcommand)) {}

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    auto items = CLI::ConfigTOML::from_config(input);
    if (subcommand_.empty()) return items;
    for (CLI::ConfigItem& item : items) {
      if (item.parents.empty()) item.parents = {subcommand_};
    }
    return items;
  }

 private:
  std::string subcommand_;
};

inline void add_layout_options(CLI::App* cmd, RunConfig& config) {
  cmd->add_option("--prop", config.layout.prop_root, "Root of the .prop files")->required();
  cmd->add_option("--onf", config.layout.onf_root, "Root of the .onf files")->required();
  cmd->add_option("--parse", config.layout.parse_root, "Root of the .parse files")->required();
  cmd->add_option("--first-folder", config.layout.first_folder,
                  "First two-digit section folder searched")
      ->capture_default_str();
  cmd->add_option("--last-folder", config.layout.last_folder,
                  "Last two-digit section folder searched")
      ->capture_default_str();
  cmd->add_option("--exclude", config.exclude_file,
                  "File of file ids to skip, one per line, # comments");
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Extract ARG0/REL/ARG1 datasets from PropBank and OntoNotes files"};
  app.name("srlx");
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value file named after the long flags; flags win");

  RunConfig config;
  std::string csv_path;
  std::string inspect_file;
  std::size_t inspect_tree = 0;

  const std::map<std::string, Schema> schemas{{"srl", Schema::Srl}, {"orl", Schema::Orl}};
  const std::map<std::string, TraceMode> modes{{"tree", TraceMode::TreeGuided},
                                               {"pattern", TraceMode::PatternOnly}};

  auto* extract = app.add_subcommand("extract", "Build the dataset CSV");
  add_layout_options(extract, config);
  extract->add_option("--schema", config.schema, "Output columns: srl or orl")
      ->transform(CLI::CheckedTransformer(schemas, CLI::ignore_case).description(""))
      ->type_name("srl|orl");
  extract->add_option("--trace-mode", config.trace_mode, "Trace removal: tree or pattern")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case).description(""))
      ->type_name("tree|pattern");
  extract->add_flag("--strict", config.strict, "Abort on the first bad proposition or file");
  extract->add_option("--out", config.output_path, "Output CSV path")->capture_default_str();
  extract->add_option("--skip-log", config.skip_log_path,
                      "Skip log path (default: skipped.tsv beside the output)");
  extract->add_option("--jobs", config.parallelism, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* stats = app.add_subcommand("stats", "Compute dataset statistics from an exported CSV");
  stats->add_option("--csv", csv_path, "Dataset CSV")->required();
  stats->add_option("--lexicon", config.lexicon_path, "Sentiment lexicon, token<TAB>valence");
  stats->add_option("--t1", config.thresholds.t1, "Neutral/weak boundary")->capture_default_str();
  stats->add_option("--t2", config.thresholds.t2, "Weak/strong boundary")->capture_default_str();
  stats->add_option("--top", config.top_k, "Number of top predicates reported")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  stats->add_option("--out", config.stats_dir, "Directory for stats.json and stats.txt")
      ->capture_default_str();

  auto* validate = app.add_subcommand("validate", "Check corpus alignment and pointer ranges");
  add_layout_options(validate, config);

  auto* inspect = app.add_subcommand("inspect", "Show one tree, its terminals and spans");
  add_layout_options(inspect, config);
  inspect->add_option("--file", inspect_file, "File id, e.g. wsj_0001")->required();
  inspect->add_option("--tree", inspect_tree, "0-based tree index")->required();
  inspect->add_option("--trace-mode", config.trace_mode, "Trace removal: tree or pattern")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case).description(""))
      ->type_name("tree|pattern");

  // --config is a top-level option; accept it after the subcommand too.
  std::vector<std::string> args;
  std::vector<std::string> config_args;
  for (int i = 1; i < argc; ++i) {
    std::string_view a = argv[i];
    if (a == "--config" && i + 1 < argc) {
      config_args = {"--config", argv[++i]};
    } else if (a.starts_with("--config=")) {
      config_args = {std::string(a)};
    } else {
      args.emplace_back(a);
    }
  }
  std::string invoked;
  for (const std::string& a : args) {
    if (a == "extract" || a == "stats" || a == "validate" || a == "inspect") {
      invoked = a;
      break;
    }
  }
  app.config_formatter(std::make_shared<FlatConfig>(invoked));
  args.insert(args.begin(), config_args.begin(), config_args.end());
  std::reverse(args.begin(), args.end());  // CLI11 consumes a reversed vector

  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  if (*extract) return cmd_extract(config, out, err);
  if (*stats) return cmd_stats(config, csv_path, out, err);
  if (*validate) return cmd_validate(config, out, err);
  return cmd_inspect(config, inspect_file, inspect_tree, out, err);
}

}  // namespace srlx::cli
