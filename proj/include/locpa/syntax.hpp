#ifndef LOCPA_SYNTAX_HPP
#define LOCPA_SYNTAX_HPP

#include <optional>
#include <string>

#include "locpa/alphabet.hpp"
#include "locpa/spec.hpp"
#include "locpa/term.hpp"

namespace locpa {

struct SourceSpan {
  size_t begin = 0, end = 0;
  int line = 1, col = 1;
};

struct Diagnostic {
  SourceSpan span;
  std::string message;

  // "line:col: message" (callers prepend the file name)
  std::string str() const;
};

template <typename T>
struct Parsed {
  std::optional<T> value;
  std::optional<Diagnostic> error;

  bool ok() const { return value.has_value(); }
};

Parsed<TermPtr> parse_term(const std::string& text);
Parsed<LinearSpec> parse_spec(const std::string& text);
// a sequence of spec blocks in one file
Parsed<std::vector<LinearSpec>> parse_spec_file(const std::string& text);
Parsed<Alphabet> parse_alphabet(const std::string& text);

// Minimal-parentheses rendering; parse_term(print_term(t)) == t up to
// structure for every parser-reachable term.
std::string print_term(const TermPtr& t);
std::string print_located_action(const LocatedAction& la);

}  // namespace locpa

#endif
