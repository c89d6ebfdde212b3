#pragma once

// Readers for OntoNotes .onf sentence sections and .parse tree files.
//
// An .onf file is a sequence of blank-line-separated blocks. Sentence text
// lives in blocks of the form
//
//     Plain sentence:
//     ---------------
//         John wants to eat .
//
//     Treebanked sentence:
//     --------------------
//         John wants *PRO*-1 to eat .
//
// i.e. a header line, a line of hyphens, then the (possibly wrapped) text.
// Blocks under any other header (Tree, Leaves, Coreference chains, ...) and
// bare hyphen rules are skipped.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "srlx/error.hpp"
#include "srlx/treebank.hpp"

namespace srlx {

struct SentencePair {
  std::string plain;
  std::string treebanked;
  friend bool operator==(const SentencePair&, const SentencePair&) = default;
};

struct FileSentences {
  std::string file_id;
  std::vector<SentencePair> sentences;
};

// Minimum run of '-' that marks a section rule.
inline constexpr std::size_t kHyphenRuleLength = 10;

namespace onf_detail {

inline std::string_view trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && treebank_detail::is_space(s[b])) ++b;
  while (e > b && treebank_detail::is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  for (auto& l : lines) {
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
  }
  return lines;
}

// Blocks of consecutive non-blank lines.
inline std::vector<std::vector<std::string_view>> split_blocks(std::string_view text) {
  std::vector<std::vector<std::string_view>> blocks;
  std::vector<std::string_view> current;
  for (std::string_view line : split_lines(text)) {
    if (trim(line).empty()) {
      if (!current.empty()) blocks.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(line);
    }
  }
  if (!current.empty()) blocks.push_back(std::move(current));
  return blocks;
}

inline bool is_hyphen_rule(std::string_view line) {
  line = trim(line);
  if (line.size() < kHyphenRuleLength) return false;
  for (char c : line) {
    if (c != '-') return false;
  }
  return true;
}

inline std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

inline std::string join_words(std::span<const std::string_view> lines) {
  std::string out;
  for (std::string_view line : lines) {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && treebank_detail::is_space(line[i])) ++i;
      std::size_t start = i;
      while (i < line.size() && !treebank_detail::is_space(line[i])) ++i;
      if (i > start) {
        if (!out.empty()) out += ' ';
        out += line.substr(start, i - start);
      }
    }
  }
  return out;
}

}  // namespace onf_detail

inline std::vector<SentencePair> parse_onf(std::string_view text) {
  using namespace onf_detail;
  std::vector<SentencePair> out;
  std::string pending_plain;
  bool have_plain = false;

  // A section is a header line, a hyphen rule, then text up to the next
  // section header or the end of the block.
  struct Section {
    std::string header;
    std::string body;
  };
  std::vector<Section> sections;
  for (const auto& block : split_blocks(text)) {
    std::vector<std::size_t> rules;
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (is_hyphen_rule(block[i])) rules.push_back(i);
    }
    for (std::size_t k = 0; k < rules.size(); ++k) {
      std::size_t r = rules[k];
      if (r == 0 || is_hyphen_rule(block[r - 1])) continue;
      std::size_t end = block.size();
      if (k + 1 < rules.size()) end = rules[k + 1] - 1;
      if (end < r + 1) end = r + 1;
      auto body_lines = std::span<const std::string_view>(block).subspan(r + 1, end - (r + 1));
      sections.push_back({std::string(trim(block[r - 1])), join_words(body_lines)});
    }
  }

  for (Section& section : sections) {
    std::string header = lower(section.header);
    bool is_plain = header.starts_with("plain sentence");
    bool is_treebanked = header.starts_with("treebanked sentence");
    if (!is_plain && !is_treebanked) continue;

    std::string body = std::move(section.body);
    if (body.empty()) {
      throw Error(Errc::MalformedOnf,
                  "section '" + section.header + "' has no text");
    }
    if (is_plain) {
      if (have_plain) {
        throw Error(Errc::MalformedOnf, "plain sentence '" + pending_plain +
                                            "' has no treebanked counterpart");
      }
      pending_plain = std::move(body);
      have_plain = true;
    } else {
      if (!have_plain) {
        throw Error(Errc::MalformedOnf,
                    "treebanked sentence '" + body + "' without a preceding plain sentence");
      }
      out.push_back(SentencePair{std::move(pending_plain), std::move(body)});
      pending_plain.clear();
      have_plain = false;
    }
  }
  if (have_plain) {
    throw Error(Errc::MalformedOnf,
                "plain sentence '" + pending_plain + "' has no treebanked counterpart");
  }
  return out;
}

// Blank-line-separated tree strings, trimmed, empty chunks dropped.
inline std::vector<std::string> parse_trees_file(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& block : onf_detail::split_blocks(text)) {
    std::string chunk;
    for (std::string_view line : block) {
      if (!chunk.empty()) chunk += '\n';
      chunk += line;
    }
    std::string_view trimmed = onf_detail::trim(chunk);
    if (!trimmed.empty()) out.emplace_back(trimmed);
  }
  return out;
}

}  // namespace srlx
