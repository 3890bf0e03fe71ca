#include "convtag/rules.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "convtag/error.hpp"
#include "text_io.hpp"

namespace convtag::rules {

namespace {

enum class Tok { Ident, And, Or, Not, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;
};

bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

std::vector<Token> tokenize(std::string_view s, const std::string& source) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view sym) { return s.substr(i, sym.size()) == sym; };
  while (i < s.size()) {
    const char c = s[i];
    if (c == ' ' || c == '\t') {
      ++i;
    } else if (c == '(') {
      out.push_back({Tok::LParen, "(", i++});
    } else if (c == ')') {
      out.push_back({Tok::RParen, ")", i++});
    } else if (starts("∧")) {
      out.push_back({Tok::And, "∧", i});
      i += std::string_view("∧").size();
    } else if (starts("∨")) {
      out.push_back({Tok::Or, "∨", i});
      i += std::string_view("∨").size();
    } else if (starts("¬")) {
      out.push_back({Tok::Not, "¬", i});
      i += std::string_view("¬").size();
    } else if (ident_start(c)) {
      const std::size_t start = i;
      while (i < s.size() && ident_char(s[i])) ++i;
      std::string word(s.substr(start, i - start));
      Tok kind = Tok::Ident;
      if (word == "AND") kind = Tok::And;
      else if (word == "OR") kind = Tok::Or;
      else if (word == "NOT") kind = Tok::Not;
      out.push_back({kind, std::move(word), start});
    } else {
      throw ParseError(source, 1, "column " + std::to_string(i + 1) + ": unexpected character '" +
                                      std::string(1, c) + "'");
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, const std::set<std::string>& keywords, std::string source)
      : toks_(std::move(tokens)), keywords_(keywords), source_(std::move(source)) {}

  RuleExpr parse() {
    RuleExpr e = expr();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(source_, 1, "column " + std::to_string(peek().column + 1) + ": " + what);
  }

  RuleExpr binary(Tok op, RuleExpr::Kind kind, RuleExpr (Parser::*sub)()) {
    std::vector<RuleExpr> items;
    items.push_back((this->*sub)());
    while (peek().kind == op) {
      ++pos_;
      items.push_back((this->*sub)());
    }
    if (items.size() == 1) return std::move(items.front());
    return RuleExpr{kind, {}, std::move(items)};
  }

  RuleExpr expr() { return binary(Tok::Or, RuleExpr::Kind::Or, &Parser::term); }
  RuleExpr term() { return binary(Tok::And, RuleExpr::Kind::And, &Parser::factor); }

  RuleExpr factor() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Not: {
        ++pos_;
        std::vector<RuleExpr> child;
        child.push_back(factor());
        return RuleExpr{RuleExpr::Kind::Not, {}, std::move(child)};
      }
      case Tok::LParen: {
        ++pos_;
        RuleExpr inner = expr();
        if (peek().kind != Tok::RParen) fail("expected ')'");
        ++pos_;
        return inner;
      }
      case Tok::Ident: {
        if (!keywords_.count(t.text))
          throw Error(ErrorCode::Schema, source_ + ": unknown keyword '" + t.text + "'");
        ++pos_;
        return RuleExpr{RuleExpr::Kind::Ident, t.text, {}};
      }
      case Tok::End:
        fail("unexpected end of expression");
      default:
        fail("unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  const std::set<std::string>& keywords_;
  std::string source_;
  std::size_t pos_ = 0;
};

int precedence(RuleExpr::Kind k) {
  switch (k) {
    case RuleExpr::Kind::Or: return 1;
    case RuleExpr::Kind::And: return 2;
    case RuleExpr::Kind::Not: return 3;
    case RuleExpr::Kind::Ident: return 4;
  }
  return 0;
}

std::string print(const RuleExpr& e, int parent) {
  std::string out;
  switch (e.kind) {
    case RuleExpr::Kind::Ident:
      return e.name;
    case RuleExpr::Kind::Not:
      out = "NOT " + print(e.children[0], precedence(e.kind));
      break;
    case RuleExpr::Kind::And:
    case RuleExpr::Kind::Or: {
      const char* op = e.kind == RuleExpr::Kind::And ? " AND " : " OR ";
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += op;
        // Nested operators of the same kind keep their grouping.
        out += print(e.children[i], precedence(e.kind) + (e.children[i].kind == e.kind ? 1 : 0));
      }
      break;
    }
  }
  return precedence(e.kind) < parent ? "(" + out + ")" : out;
}

void collect(const RuleExpr& e, std::set<std::string>& out) {
  if (e.kind == RuleExpr::Kind::Ident) out.insert(e.name);
  for (const auto& c : e.children) collect(c, out);
}

}  // namespace

RuleExpr parse_rule(std::string_view text, const std::set<std::string>& keywords) {
  const std::string source = "rule '" + std::string(text) + "'";
  return Parser(tokenize(text, source), keywords, source).parse();
}

std::string to_string(const RuleExpr& expr) { return print(expr, 0); }

std::set<std::string> identifiers(const RuleExpr& expr) {
  std::set<std::string> out;
  collect(expr, out);
  return out;
}

bool evaluate_rule(const RuleExpr& expr, const TagSet& tags) {
  switch (expr.kind) {
    case RuleExpr::Kind::Ident:
      return tags.count(expr.name) > 0;
    case RuleExpr::Kind::Not:
      return !evaluate_rule(expr.children[0], tags);
    case RuleExpr::Kind::And:
      return std::all_of(expr.children.begin(), expr.children.end(),
                         [&](const RuleExpr& c) { return evaluate_rule(c, tags); });
    case RuleExpr::Kind::Or:
      return std::any_of(expr.children.begin(), expr.children.end(),
                         [&](const RuleExpr& c) { return evaluate_rule(c, tags); });
  }
  return false;
}

std::size_t SeverityScale::rank(int severity) const {
  const auto it = std::find(most_to_least.begin(), most_to_least.end(), severity);
  if (it == most_to_least.end())
    throw Error(ErrorCode::InvalidArgument, "severity " + std::to_string(severity) + " is not ranked");
  return static_cast<std::size_t>(it - most_to_least.begin());
}

CallAssessment assess_call(std::string call_id, std::span<const TagSet> segment_tags,
                           std::span<const SeverityRule> rules, const SeverityScale& scale) {
  CallAssessment a;
  a.call_id = std::move(call_id);
  for (const auto& s : segment_tags) a.tags.insert(s.begin(), s.end());
  for (const auto& r : rules)
    if (!evaluate_rule(r.expr, a.tags)) a.failures.push_back({r.name, r.severity});
  std::sort(a.failures.begin(), a.failures.end(), [&](const Failure& x, const Failure& y) {
    const auto rx = scale.rank(x.severity), ry = scale.rank(y.severity);
    return rx != ry ? rx < ry : x.rule < y.rule;
  });
  if (!a.failures.empty()) a.max_severity = a.failures.front().severity;
  return a;
}

std::vector<SeverityRule> parse_rules(std::istream& in, const std::set<std::string>& keywords,
                                      const std::string& source) {
  std::vector<SeverityRule> out;
  std::set<std::string> names;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    detail::strip_cr(line);
    if (detail::trim(line).empty() || line.front() == '#') continue;
    const auto f = detail::split(line, '\t');
    if (f.size() != 3) throw ParseError(source, lineno, "expected name<TAB>severity<TAB>expression");
    SeverityRule r;
    r.name = std::string(detail::trim(f[0]));
    if (r.name.empty()) throw ParseError(source, lineno, "empty rule name");
    if (!names.insert(r.name).second) throw ParseError(source, lineno, "duplicate rule '" + r.name + "'");
    if (!detail::parse_number(f[1], r.severity) || r.severity < 1 || r.severity > 3)
      throw ParseError(source, lineno, "severity must be 1, 2 or 3");
    try {
      r.expr = parse_rule(f[2], keywords);
    } catch (const Error& e) {
      throw ParseError(source, lineno, e.what());
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<SeverityRule> load_rules(const std::filesystem::path& path, const std::set<std::string>& keywords) {
  auto in = detail::open_input(path);
  return parse_rules(in, keywords, path.string());
}

void write_assessment(const CallAssessment& a, std::ostream& out) {
  out << a.call_id << '\t' << (a.max_severity ? std::to_string(*a.max_severity) : "-") << '\t';
  if (a.failures.empty()) out << '-';
  for (std::size_t i = 0; i < a.failures.size(); ++i)
    out << (i ? "," : "") << a.failures[i].rule << ':' << a.failures[i].severity;
  out << '\n';
}

}  // namespace convtag::rules
