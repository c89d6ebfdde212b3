#pragma once

// PropBank proposition lines:
//
//   <file> <tree> <predicate-terminal> <metadata...> <pointer-expr>-<LABEL> ...
//
// A pointer is "terminal:height". Pointer expressions join pointers with
// '*' (chain) or ',' / ';' (split). Only ARG0, ARG1 and rel labels are kept.

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "srlx/error.hpp"
#include "srlx/treebank.hpp"

namespace srlx {

struct TreePointer {
  TerminalRef terminal;
  std::size_t height = 0;
  friend auto operator<=>(const TreePointer&, const TreePointer&) = default;
};

enum class Connector { Chain, SplitComma, SplitSemicolon };

struct PointerExpr {
  std::vector<TreePointer> parts;
  // parts.size() - 1 entries; connectors[i] sits between parts[i] and parts[i+1].
  std::vector<Connector> connectors;
  friend bool operator==(const PointerExpr&, const PointerExpr&) = default;
};

enum class RoleLabel { Arg0, Arg1, Rel };

struct Proposition {
  std::string file_id;
  std::size_t tree_index = 0;
  TerminalRef predicate_terminal;
  std::map<RoleLabel, std::vector<PointerExpr>> roles;
  std::string raw_line;
  // 1-based line number in the source file; 0 when parsed standalone.
  std::size_t line_number = 0;

  const std::vector<PointerExpr>& role(RoleLabel label) const {
    static const std::vector<PointerExpr> kNone;
    auto it = roles.find(label);
    return it == roles.end() ? kNone : it->second;
  }
};

namespace propbank_detail {

inline bool parse_index(std::string_view text, std::size_t& out) {
  if (text.empty()) return false;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

inline char connector_char(Connector c) {
  switch (c) {
    case Connector::Chain: return '*';
    case Connector::SplitComma: return ',';
    case Connector::SplitSemicolon: return ';';
  }
  return '*';
}

inline bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    char x = a[i], y = b[i];
    if (x >= 'A' && x <= 'Z') x = static_cast<char>(x - 'A' + 'a');
    if (y >= 'A' && y <= 'Z') y = static_cast<char>(y - 'A' + 'a');
    if (x != y) return false;
  }
  return true;
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && treebank_detail::is_space(line[i])) ++i;
    std::size_t start = i;
    while (i < line.size() && !treebank_detail::is_space(line[i])) ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

}  // namespace propbank_detail

inline TreePointer parse_pointer(std::string_view text) {
  auto colon = text.find(':');
  TreePointer p;
  if (colon == std::string_view::npos ||
      !propbank_detail::parse_index(text.substr(0, colon), p.terminal.index) ||
      !propbank_detail::parse_index(text.substr(colon + 1), p.height)) {
    throw Error(Errc::MalformedPointer,
                "malformed pointer '" + std::string(text) + "' (expected N:H)");
  }
  return p;
}

namespace propbank_detail {

inline void append_pointer(std::string& out, const TreePointer& p) {
  char buf[24];
  out.append(buf, std::to_chars(buf, buf + sizeof buf, p.terminal.index).ptr);
  out += ':';
  out.append(buf, std::to_chars(buf, buf + sizeof buf, p.height).ptr);
}

}  // namespace propbank_detail

inline std::string format_pointer(const TreePointer& p) {
  std::string out;
  propbank_detail::append_pointer(out, p);
  return out;
}

inline PointerExpr parse_pointer_expr(std::string_view text) {
  if (text.empty()) throw Error(Errc::EmptyFragment, "empty pointer expression");
  PointerExpr expr;
  std::size_t splits = 0;
  for (char c : text) splits += c == '*' || c == ',' || c == ';';
  expr.parts.reserve(splits + 1);
  expr.connectors.reserve(splits);
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    bool end = i == text.size();
    if (!end && text[i] != '*' && text[i] != ',' && text[i] != ';') continue;
    std::string_view fragment = text.substr(start, i - start);
    if (fragment.empty()) {
      throw Error(Errc::EmptyFragment,
                  "empty fragment in pointer expression '" + std::string(text) + "'");
    }
    expr.parts.push_back(parse_pointer(fragment));
    if (!end) {
      expr.connectors.push_back(text[i] == '*'   ? Connector::Chain
                                : text[i] == ',' ? Connector::SplitComma
                                                 : Connector::SplitSemicolon);
    }
    start = i + 1;
  }
  return expr;
}

inline std::string format_pointer_expr(const PointerExpr& expr) {
  std::string out;
  for (std::size_t i = 0; i < expr.parts.size(); ++i) {
    if (i > 0) out += propbank_detail::connector_char(expr.connectors[i - 1]);
    propbank_detail::append_pointer(out, expr.parts[i]);
  }
  return out;
}

inline Proposition parse_prop_line(std::string_view line) {
  using propbank_detail::iequals;
  auto fields = propbank_detail::split_ws(line);
  if (fields.size() < 3) {
    throw Error(Errc::MalformedLine, "proposition line has " +
                                         std::to_string(fields.size()) +
                                         " fields, need at least 3");
  }
  Proposition prop;
  prop.raw_line = std::string(line);
  prop.file_id = std::string(fields[0]);
  if (!propbank_detail::parse_index(fields[1], prop.tree_index)) {
    throw Error(Errc::MalformedLine,
                "field 2 (tree index) is not an integer: '" + std::string(fields[1]) + "'");
  }
  if (!propbank_detail::parse_index(fields[2], prop.predicate_terminal.index)) {
    throw Error(Errc::MalformedLine, "field 3 (predicate terminal) is not an integer: '" +
                                         std::string(fields[2]) + "'");
  }
  for (std::size_t f = 3; f < fields.size(); ++f) {
    std::string_view field = fields[f];
    auto dash = field.rfind('-');
    if (dash == std::string_view::npos) continue;
    std::string_view suffix = field.substr(dash + 1);
    RoleLabel label;
    if (iequals(suffix, "ARG0")) {
      label = RoleLabel::Arg0;
    } else if (iequals(suffix, "ARG1")) {
      label = RoleLabel::Arg1;
    } else if (iequals(suffix, "REL")) {
      label = RoleLabel::Rel;
    } else {
      continue;
    }
    try {
      prop.roles[label].push_back(parse_pointer_expr(field.substr(0, dash)));
    } catch (const Error& e) {
      throw e.with_context("field " + std::to_string(f + 1) + " '" + std::string(field) +
                           "'");
    }
  }
  return prop;
}

// Stable sort by (tree index, predicate terminal).
inline std::vector<Proposition> sort_propositions(std::vector<Proposition> props) {
  std::stable_sort(props.begin(), props.end(), [](const Proposition& a, const Proposition& b) {
    if (a.tree_index != b.tree_index) return a.tree_index < b.tree_index;
    return a.predicate_terminal < b.predicate_terminal;
  });
  return props;
}

}  // namespace srlx
