#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace srlx {

// Every failure the toolkit reports carries one of these codes. The CLI
// prints the code name as the first field of its one-line error message.
enum class Errc {
  EmptyInput,
  UnbalancedParens,
  TrailingGarbage,
  MalformedTree,
  TerminalOutOfRange,
  HeightOverflow,
  MalformedPointer,
  EmptyFragment,
  MalformedLine,
  MalformedOnf,
  TreeMismatch,
  MissingRoot,
  EmptyCorpus,
  AlignmentError,
  IoError,
  BadThresholds,
  BadLexicon,
  HeaderMismatch,
  UnknownFile,
  IndexOutOfRange,
};

constexpr std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::UnbalancedParens: return "UnbalancedParens";
    case Errc::TrailingGarbage: return "TrailingGarbage";
    case Errc::MalformedTree: return "MalformedTree";
    case Errc::TerminalOutOfRange: return "TerminalOutOfRange";
    case Errc::HeightOverflow: return "HeightOverflow";
    case Errc::MalformedPointer: return "MalformedPointer";
    case Errc::EmptyFragment: return "EmptyFragment";
    case Errc::MalformedLine: return "MalformedLine";
    case Errc::MalformedOnf: return "MalformedOnf";
    case Errc::TreeMismatch: return "TreeMismatch";
    case Errc::MissingRoot: return "MissingRoot";
    case Errc::EmptyCorpus: return "EmptyCorpus";
    case Errc::AlignmentError: return "AlignmentError";
    case Errc::IoError: return "IoError";
    case Errc::BadThresholds: return "BadThresholds";
    case Errc::BadLexicon: return "BadLexicon";
    case Errc::HeaderMismatch: return "HeaderMismatch";
    case Errc::UnknownFile: return "UnknownFile";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

  // Same error with `context` prepended to the message, e.g. a file id.
  Error with_context(std::string_view context) const {
    return Error(code_, std::string(context) + ": " + what());
  }

 private:
  Errc code_;
};

}  // namespace srlx
