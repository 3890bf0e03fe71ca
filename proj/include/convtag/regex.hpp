#pragma once

// Regex atoms: a small regular-expression dialect compiled to a minimal
// partial DFA.
//
// Grammar (EBNF):
//
//   alternation = concat { "|" concat } ;
//   concat      = repeat { repeat } ;
//   repeat      = primary { "*" | "+" | "?" } ;
//   primary     = literal | "." | "(" alternation ")" | "\" any-char ;
//   literal     = any character except ( ) | * + ? . \ ;
//
// Matching is whole-string; patterns anchor themselves with ".*". The dot
// matches any single character except newline. Patterns are code-point
// based (UTF-8 in, UTF-8 out).

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace convtag::corpus {
struct Atom;
struct Segment;
}  // namespace convtag::corpus

namespace convtag::regex {

struct Ast {
  enum class Kind { Literal, Dot, Concat, Alternation, Star, Plus, Optional, Group };

  Kind kind = Kind::Literal;
  char32_t ch = 0;            // Literal only
  std::vector<Ast> children;  // Concat/Alternation: >= 2; unary ops and Group: 1

  friend bool operator==(const Ast&, const Ast&) = default;
};

// Throws ParseError (line 1, column in the message) on unbalanced
// parentheses, dangling operators and empty alternation branches.
Ast parse_regex(std::string_view pattern);

// Pattern text that parses back to an equal AST.
std::string to_pattern(const Ast& ast);
// Structural form for diagnostics, e.g. "Alt(Concat(a,b),c)".
std::string to_debug_string(const Ast& ast);

class Dfa {
 public:
  static constexpr int kNoState = -1;

  std::size_t state_count() const noexcept { return accepting_.size(); }
  // State count with the elided dead state added back when it is reachable.
  std::size_t complete_state_count() const noexcept;
  int start() const noexcept { return start_; }
  bool accepting(int state) const { return accepting_.at(static_cast<std::size_t>(state)) != 0; }
  std::size_t symbol_classes() const noexcept { return symbols_.size() + 1; }

  // Class of a code point: literal index, "other" class, or -1 for newline
  // when newline is not a pattern literal.
  int classify(char32_t cp) const;
  int next(int state, int symbol_class) const;

  bool matches(std::string_view text) const;

 private:
  friend Dfa compile(const Ast& ast);

  std::vector<char32_t> symbols_;        // sorted literal code points
  std::vector<std::vector<int>> next_;   // [state][class]
  std::vector<std::uint8_t> accepting_;
  int start_ = kNoState;
};

// Thompson NFA, subset construction, then minimization; the dead state is
// dropped from the result.
Dfa compile(const Ast& ast);
Dfa compile(std::string_view pattern);

std::size_t dfa_state_count(const Dfa& dfa);
bool matches(const Dfa& dfa, std::string_view text);

struct RegexAtom {
  std::string keyword;
  std::string pattern;
  Dfa dfa;
};

RegexAtom make_atom(std::string keyword, std::string pattern);
// One `keyword<TAB>pattern` per line; '#' starts a comment line.
std::vector<RegexAtom> load_atoms(const std::filesystem::path& path);

// Keywords whose atom accepts the lowercased text.
std::set<std::string> tag_regex(std::span<const RegexAtom> atoms, std::string_view text);
// Schema-level entry point; every atom must be of RegEx kind.
std::set<std::string> tag_regex(std::span<const corpus::Atom> atoms, const corpus::Segment& segment);

}  // namespace convtag::regex
