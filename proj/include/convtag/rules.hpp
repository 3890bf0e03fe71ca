#pragma once

// Boolean compliance rules over call-level tag sets and severity-ranked
// call assessment.
//
//   expr    = term { ("OR" | "∨") term } ;
//   term    = factor { ("AND" | "∧") factor } ;
//   factor  = ("NOT" | "¬") factor | "(" expr ")" | identifier ;

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace convtag::rules {

using TagSet = std::set<std::string>;

struct RuleExpr {
  enum class Kind { Ident, Not, And, Or };

  Kind kind = Kind::Ident;
  std::string name;                // Ident only
  std::vector<RuleExpr> children;  // Not: 1, And/Or: >= 2

  friend bool operator==(const RuleExpr&, const RuleExpr&) = default;
};

// Throws ParseError on syntax errors and Error(Schema) on identifiers not in
// `keywords`.
RuleExpr parse_rule(std::string_view text, const std::set<std::string>& keywords);
// Minimal-parenthesis text form using AND/OR/NOT.
std::string to_string(const RuleExpr& expr);
std::set<std::string> identifiers(const RuleExpr& expr);

bool evaluate_rule(const RuleExpr& expr, const TagSet& tags);

struct SeverityRule {
  std::string name;
  RuleExpr expr;
  int severity = 1;  // 1..3
};

// Ranks severities, most severe first. The default treats 3 as worst.
struct SeverityScale {
  std::vector<int> most_to_least{3, 2, 1};

  // Position in the ranking; throws for severities not listed.
  std::size_t rank(int severity) const;
};

struct Failure {
  std::string rule;
  int severity = 0;

  friend bool operator==(const Failure&, const Failure&) = default;
};

struct CallAssessment {
  std::string call_id;
  TagSet tags;                     // union over segments
  std::vector<Failure> failures;   // most severe first, then by name
  std::optional<int> max_severity;
};

CallAssessment assess_call(std::string call_id, std::span<const TagSet> segment_tags,
                           std::span<const SeverityRule> rules, const SeverityScale& scale = {});

// `name<TAB>severity<TAB>expression` per line; '#' starts a comment line.
std::vector<SeverityRule> parse_rules(std::istream& in, const std::set<std::string>& keywords,
                                      const std::string& source = "<rules>");
std::vector<SeverityRule> load_rules(const std::filesystem::path& path, const std::set<std::string>& keywords);

// `call_id<TAB>max_severity<TAB>rule:severity,...` with "-" for none.
void write_assessment(const CallAssessment& a, std::ostream& out);

}  // namespace convtag::rules
