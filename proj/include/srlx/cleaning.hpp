#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "srlx/error.hpp"
#include "srlx/treebank.hpp"

namespace srlx {

enum class TraceMode {
  TreeGuided,   // drop tokens whose preterminal POS is -NONE-
  PatternOnly,  // drop tokens matching is_trace_token
};

struct TracePolicy {
  TraceMode mode = TraceMode::PatternOnly;
};

inline constexpr std::string_view kEmptyElementPos = "-NONE-";

namespace cleaning_detail {

inline bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

// Strips an optional "-digits" index suffix; returns the remaining body.
inline std::string_view without_index(std::string_view token) {
  auto dash = token.rfind('-');
  if (dash != std::string_view::npos && is_digits(token.substr(dash + 1))) {
    return token.substr(0, dash);
  }
  return token;
}

}  // namespace cleaning_detail

// Pattern-level trace test: "*", "*X*" (e.g. *T*, *PRO*, *U*, *?*) and "*",
// each optionally followed by "-digits". The literal "0" complementizer is
// never matched here; only TreeGuided mode removes it.
inline bool is_trace_token(std::string_view token) {
  std::string_view body = cleaning_detail::without_index(token);
  if (body.empty() || body.front() != '*') return false;
  if (body.size() == 1) return true;
  if (body.back() != '*') return false;
  for (char c : body.substr(1, body.size() - 2)) {
    if (c == '*' || treebank_detail::is_space(c)) return false;
  }
  return true;
}

inline std::string strip_traces(std::span<const std::string> tokens, TracePolicy policy,
                                const ParseTree* tree = nullptr) {
  std::vector<std::string> kept;
  if (policy.mode == TraceMode::TreeGuided) {
    if (tree == nullptr) {
      throw Error(Errc::TreeMismatch, "tree-guided trace removal needs a tree");
    }
    auto terms = terminals(*tree);
    bool same = terms.size() == tokens.size();
    for (std::size_t i = 0; same && i < terms.size(); ++i) {
      same = terms[i]->token() == tokens[i];
    }
    if (!same) {
      throw Error(Errc::TreeMismatch, "tree leaves differ from the token sequence");
    }
    for (const ParseTree* t : terms) {
      if (t->label() != kEmptyElementPos) kept.push_back(t->token());
    }
  } else {
    for (const std::string& tok : tokens) {
      if (!is_trace_token(tok)) kept.push_back(tok);
    }
  }
  return join_tokens(kept);
}

// Whitespace-tokenizes `text` and strips it by pattern.
inline std::string strip_traces_text(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && treebank_detail::is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !treebank_detail::is_space(text[i])) ++i;
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return strip_traces(tokens, TracePolicy{TraceMode::PatternOnly});
}

// Surface text of a subtree with empty elements removed.
inline std::string clean_subtree_text(const ParseTree& subtree, TracePolicy policy) {
  return strip_traces(leaves(subtree), policy, &subtree);
}

}  // namespace srlx
