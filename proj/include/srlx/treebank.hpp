#pragma once

// Constituency trees in Penn Treebank bracket notation.
//
//   tree := "(" label (tree+ | token) ")"
//
// A node with a token is a preterminal; everything else is an internal node
// with at least one child. Empty-element terminals (POS "-NONE-") are
// ordinary preterminals and count toward terminal indices.

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "srlx/error.hpp"

namespace srlx {

// 0-based ordinal over all preterminals of a tree, traces included.
struct TerminalRef {
  std::size_t index = 0;
  friend auto operator<=>(const TerminalRef&, const TerminalRef&) = default;
};

class ParseTree {
 public:
  static ParseTree preterminal(std::string pos, std::string token) {
    ParseTree t;
    t.label_ = std::move(pos);
    t.token_ = std::move(token);
    return t;
  }

  static ParseTree internal(std::string label, std::vector<ParseTree> children) {
    ParseTree t;
    t.label_ = std::move(label);
    t.children_ = std::move(children);
    return t;
  }

  bool is_preterminal() const noexcept { return children_.empty(); }

  // Constituent label for internal nodes, POS tag for preterminals.
  const std::string& label() const noexcept { return label_; }
  // Empty for internal nodes.
  const std::string& token() const noexcept { return token_; }
  std::span<const ParseTree> children() const noexcept { return children_; }

  friend bool operator==(const ParseTree&, const ParseTree&) = default;

 private:
  ParseTree() = default;

  std::string label_;
  std::string token_;
  std::vector<ParseTree> children_;
};

namespace treebank_detail {

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  ParseTree read_root() {
    skip_space();
    if (pos_ >= text_.size()) throw Error(Errc::EmptyInput, "empty tree text");
    if (text_[pos_] != '(') {
      throw Error(Errc::MalformedTree,
                  "tree must start with '(' at offset " + std::to_string(pos_));
    }
    ParseTree root = read_node(/*is_root=*/true);
    skip_space();
    if (pos_ < text_.size()) {
      if (text_[pos_] == ')') {
        throw Error(Errc::UnbalancedParens,
                    "unmatched ')' at offset " + std::to_string(pos_));
      }
      throw Error(Errc::TrailingGarbage,
                  "unexpected text after tree at offset " + std::to_string(pos_));
    }
    return root;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }

  bool at_end() const { return pos_ >= text_.size(); }

  std::string read_atom() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_]) && text_[pos_] != '(' &&
           text_[pos_] != ')') {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  [[noreturn]] void unbalanced() const {
    throw Error(Errc::UnbalancedParens, "input ended inside an open bracket");
  }

  ParseTree read_node(bool is_root) {
    std::size_t open_at = pos_;
    ++pos_;  // '('
    skip_space();
    if (at_end()) unbalanced();

    std::string label;
    if (text_[pos_] != '(' && text_[pos_] != ')') label = read_atom();
    skip_space();
    if (at_end()) unbalanced();

    if (text_[pos_] == ')') {
      throw Error(Errc::MalformedTree,
                  "node without children at offset " + std::to_string(open_at));
    }

    if (text_[pos_] != '(') {
      std::string token = read_atom();
      skip_space();
      if (at_end()) unbalanced();
      if (text_[pos_] != ')') {
        throw Error(Errc::MalformedTree, "preterminal '" + label +
                                             "' must hold exactly one token (offset " +
                                             std::to_string(open_at) + ")");
      }
      ++pos_;
      if (label.empty()) {
        throw Error(Errc::MalformedTree,
                    "preterminal without POS at offset " + std::to_string(open_at));
      }
      return ParseTree::preterminal(std::move(label), std::move(token));
    }

    std::vector<ParseTree> children;
    while (true) {
      skip_space();
      if (at_end()) unbalanced();
      if (text_[pos_] == ')') break;
      if (text_[pos_] != '(') {
        throw Error(Errc::MalformedTree, "bare token mixed with subtrees at offset " +
                                             std::to_string(pos_));
      }
      children.push_back(read_node(/*is_root=*/false));
    }
    ++pos_;

    if (label.empty()) {
      // The ( (S ...) ) wrapper: exactly one unlabeled root, unwrapped.
      if (is_root && children.size() == 1 && !children.front().label().empty()) {
        return std::move(children.front());
      }
      throw Error(Errc::MalformedTree,
                  "unlabeled node at offset " + std::to_string(open_at));
    }
    return ParseTree::internal(std::move(label), std::move(children));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline void collect_terminals(const ParseTree& t, std::vector<const ParseTree*>& out) {
  if (t.is_preterminal()) {
    out.push_back(&t);
    return;
  }
  for (const ParseTree& c : t.children()) collect_terminals(c, out);
}

// Root-to-preterminal path for terminal `target`; `seen` counts preterminals
// passed so far. Returns true once found.
inline bool path_to_terminal(const ParseTree& t, std::size_t target, std::size_t& seen,
                             std::vector<const ParseTree*>& path) {
  path.push_back(&t);
  if (t.is_preterminal()) {
    if (seen == target) return true;
    ++seen;
  } else {
    for (const ParseTree& c : t.children()) {
      if (path_to_terminal(c, target, seen, path)) return true;
    }
  }
  path.pop_back();
  return false;
}

inline void render_into(const ParseTree& t, std::string& out) {
  out += '(';
  out += t.label();
  if (t.is_preterminal()) {
    out += ' ';
    out += t.token();
  } else {
    for (const ParseTree& c : t.children()) {
      out += ' ';
      render_into(c, out);
    }
  }
  out += ')';
}

inline void pretty_into(const ParseTree& t, std::size_t depth, std::string& out) {
  out.append(depth * 2, ' ');
  if (t.is_preterminal()) {
    out += '(' + t.label() + ' ' + t.token() + ")\n";
    return;
  }
  out += '(' + t.label() + '\n';
  for (const ParseTree& c : t.children()) pretty_into(c, depth + 1, out);
  out.append(depth * 2, ' ');
  out += ")\n";
}

}  // namespace treebank_detail

inline ParseTree parse_tree(std::string_view text) {
  return treebank_detail::Reader(text).read_root();
}

// Preterminal nodes in left-to-right order.
inline std::vector<const ParseTree*> terminals(const ParseTree& tree) {
  std::vector<const ParseTree*> out;
  treebank_detail::collect_terminals(tree, out);
  return out;
}

inline std::vector<std::string> leaves(const ParseTree& tree) {
  std::vector<std::string> out;
  for (const ParseTree* t : terminals(tree)) out.push_back(t->token());
  return out;
}

inline std::size_t terminal_count(const ParseTree& tree) {
  if (tree.is_preterminal()) return 1;
  std::size_t n = 0;
  for (const ParseTree& c : tree.children()) n += terminal_count(c);
  return n;
}

// The node `height` parent links above the terminal-th preterminal. The
// returned reference points into `tree`.
inline const ParseTree& select(const ParseTree& tree, TerminalRef terminal,
                               std::size_t height) {
  std::vector<const ParseTree*> path;
  std::size_t seen = 0;
  if (!treebank_detail::path_to_terminal(tree, terminal.index, seen, path)) {
    throw Error(Errc::TerminalOutOfRange,
                "terminal " + std::to_string(terminal.index) + " out of range (tree has " +
                    std::to_string(seen) + " terminals)");
  }
  if (height >= path.size()) {
    throw Error(Errc::HeightOverflow,
                "height " + std::to_string(height) + " above terminal " +
                    std::to_string(terminal.index) + " passes the root (max " +
                    std::to_string(path.size() - 1) + ")");
  }
  return *path[path.size() - 1 - height];
}

inline std::string join_tokens(std::span<const std::string> tokens) {
  std::string out;
  for (const std::string& tok : tokens) {
    if (!out.empty()) out += ' ';
    out += tok;
  }
  return out;
}

inline std::string subtree_text(const ParseTree& subtree) {
  return join_tokens(leaves(subtree));
}

// Canonical single-line form; parse_tree(render(t)) == t.
inline std::string render(const ParseTree& tree) {
  std::string out;
  treebank_detail::render_into(tree, out);
  return out;
}

// One node per line, two-space indentation.
inline std::string pretty(const ParseTree& tree) {
  std::string out;
  treebank_detail::pretty_into(tree, 0, out);
  return out;
}

}  // namespace srlx
