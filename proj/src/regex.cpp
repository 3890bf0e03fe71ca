#include "convtag/regex.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "convtag/corpus.hpp"
#include "convtag/error.hpp"
#include "convtag/utf8.hpp"
#include "text_io.hpp"

namespace convtag::regex {

// ---------------------------------------------------------------------------
// Parser

namespace {

bool is_special(char32_t c) {
  switch (c) {
    case U'(': case U')': case U'|': case U'*': case U'+': case U'?': case U'.': case U'\\':
      return true;
    default:
      return false;
  }
}

class Parser {
 public:
  explicit Parser(std::string_view pattern) : text_(utf8::decode(pattern)), source_(pattern) {}

  Ast parse() {
    Ast ast = alternation();
    if (pos_ < text_.size()) {
      if (text_[pos_] == U')') fail("unbalanced parentheses: unexpected ')'");
      fail("unexpected character");
    }
    return ast;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("regex '" + std::string(source_) + "'", 1,
                     "column " + std::to_string(pos_ + 1) + ": " + what);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char32_t peek() const { return text_[pos_]; }

  Ast alternation() {
    std::vector<Ast> branches;
    branches.push_back(concat());
    while (!at_end() && peek() == U'|') {
      ++pos_;
      branches.push_back(concat());
    }
    if (branches.size() == 1) return std::move(branches.front());
    return Ast{Ast::Kind::Alternation, 0, std::move(branches)};
  }

  Ast concat() {
    std::vector<Ast> items;
    while (!at_end() && peek() != U'|' && peek() != U')') items.push_back(repeat());
    if (items.empty()) fail("empty alternation branch");
    if (items.size() == 1) return std::move(items.front());
    return Ast{Ast::Kind::Concat, 0, std::move(items)};
  }

  Ast repeat() {
    Ast node = primary();
    while (!at_end()) {
      Ast::Kind kind;
      switch (peek()) {
        case U'*': kind = Ast::Kind::Star; break;
        case U'+': kind = Ast::Kind::Plus; break;
        case U'?': kind = Ast::Kind::Optional; break;
        default: return node;
      }
      ++pos_;
      std::vector<Ast> child;
      child.push_back(std::move(node));
      node = Ast{kind, 0, std::move(child)};
    }
    return node;
  }

  Ast primary() {
    const char32_t c = peek();
    switch (c) {
      case U'*': case U'+': case U'?':
        fail("dangling operator");
      case U'(': {
        ++pos_;
        Ast inner = alternation();
        if (at_end() || peek() != U')') fail("unbalanced parentheses: missing ')'");
        ++pos_;
        std::vector<Ast> child;
        child.push_back(std::move(inner));
        return Ast{Ast::Kind::Group, 0, std::move(child)};
      }
      case U'.':
        ++pos_;
        return Ast{Ast::Kind::Dot, 0, {}};
      case U'\\':
        ++pos_;
        if (at_end()) fail("dangling escape");
        return Ast{Ast::Kind::Literal, text_[pos_++], {}};
      default:
        ++pos_;
        return Ast{Ast::Kind::Literal, c, {}};
    }
  }

  std::u32string text_;
  std::string_view source_;
  std::size_t pos_ = 0;
};

}  // namespace

Ast parse_regex(std::string_view pattern) { return Parser(pattern).parse(); }

std::string to_pattern(const Ast& ast) {
  auto operand = [](const Ast& child) {
    const bool wrap = child.kind == Ast::Kind::Concat || child.kind == Ast::Kind::Alternation;
    return wrap ? "(" + to_pattern(child) + ")" : to_pattern(child);
  };
  switch (ast.kind) {
    case Ast::Kind::Literal:
      return (is_special(ast.ch) ? "\\" : "") + utf8::encode(ast.ch);
    case Ast::Kind::Dot:
      return ".";
    case Ast::Kind::Concat: {
      std::string out;
      for (const auto& c : ast.children)
        out += c.kind == Ast::Kind::Alternation ? "(" + to_pattern(c) + ")" : to_pattern(c);
      return out;
    }
    case Ast::Kind::Alternation: {
      std::string out;
      for (std::size_t i = 0; i < ast.children.size(); ++i) {
        if (i) out += "|";
        out += to_pattern(ast.children[i]);
      }
      return out;
    }
    case Ast::Kind::Star:
      return operand(ast.children[0]) + "*";
    case Ast::Kind::Plus:
      return operand(ast.children[0]) + "+";
    case Ast::Kind::Optional:
      return operand(ast.children[0]) + "?";
    case Ast::Kind::Group:
      return "(" + to_pattern(ast.children[0]) + ")";
  }
  return {};
}

std::string to_debug_string(const Ast& ast) {
  auto list = [](const char* name, const std::vector<Ast>& children) {
    std::string out = name;
    out += "(";
    for (std::size_t i = 0; i < children.size(); ++i) {
      if (i) out += ",";
      out += to_debug_string(children[i]);
    }
    return out + ")";
  };
  switch (ast.kind) {
    case Ast::Kind::Literal: return utf8::encode(ast.ch);
    case Ast::Kind::Dot: return "Dot";
    case Ast::Kind::Concat: return list("Concat", ast.children);
    case Ast::Kind::Alternation: return list("Alt", ast.children);
    case Ast::Kind::Star: return list("Star", ast.children);
    case Ast::Kind::Plus: return list("Plus", ast.children);
    case Ast::Kind::Optional: return list("Optional", ast.children);
    case Ast::Kind::Group: return list("Group", ast.children);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Thompson NFA

namespace {

constexpr int kNoLabel = -2;
constexpr int kDotLabel = -3;

struct NfaState {
  std::vector<int> epsilon;
  int label = kNoLabel;  // symbol class, kDotLabel, or none
  int target = -1;
};

struct Fragment {
  int start;
  int accept;
};

class NfaBuilder {
 public:
  explicit NfaBuilder(const std::vector<char32_t>& symbols) : symbols_(symbols) {}

  Fragment build(const Ast& ast) {
    switch (ast.kind) {
      case Ast::Kind::Literal: {
        const auto it = std::lower_bound(symbols_.begin(), symbols_.end(), ast.ch);
        return symbol(static_cast<int>(it - symbols_.begin()));
      }
      case Ast::Kind::Dot:
        return symbol(kDotLabel);
      case Ast::Kind::Group:
        return build(ast.children[0]);
      case Ast::Kind::Concat: {
        Fragment whole = build(ast.children[0]);
        for (std::size_t i = 1; i < ast.children.size(); ++i) {
          const Fragment next = build(ast.children[i]);
          states_[static_cast<std::size_t>(whole.accept)].epsilon.push_back(next.start);
          whole.accept = next.accept;
        }
        return whole;
      }
      case Ast::Kind::Alternation: {
        const int s = add(), a = add();
        for (const auto& child : ast.children) {
          const Fragment f = build(child);
          link(s, f.start);
          link(f.accept, a);
        }
        return {s, a};
      }
      case Ast::Kind::Star: {
        const Fragment f = build(ast.children[0]);
        const int s = add(), a = add();
        link(s, f.start);
        link(s, a);
        link(f.accept, f.start);
        link(f.accept, a);
        return {s, a};
      }
      case Ast::Kind::Plus: {
        const Fragment f = build(ast.children[0]);
        const int s = add(), a = add();
        link(s, f.start);
        link(f.accept, f.start);
        link(f.accept, a);
        return {s, a};
      }
      case Ast::Kind::Optional: {
        const Fragment f = build(ast.children[0]);
        const int s = add(), a = add();
        link(s, f.start);
        link(s, a);
        link(f.accept, a);
        return {s, a};
      }
    }
    throw Error(ErrorCode::State, "unknown regex node");
  }

  std::vector<NfaState> take() { return std::move(states_); }

 private:
  int add() {
    states_.emplace_back();
    return static_cast<int>(states_.size()) - 1;
  }
  void link(int from, int to) { states_[static_cast<std::size_t>(from)].epsilon.push_back(to); }
  Fragment symbol(int label) {
    const int s = add(), a = add();
    states_[static_cast<std::size_t>(s)].label = label;
    states_[static_cast<std::size_t>(s)].target = a;
    return {s, a};
  }

  const std::vector<char32_t>& symbols_;
  std::vector<NfaState> states_;
};

void collect_symbols(const Ast& ast, std::vector<char32_t>& out) {
  if (ast.kind == Ast::Kind::Literal) out.push_back(ast.ch);
  for (const auto& c : ast.children) collect_symbols(c, out);
}

using StateSet = std::vector<int>;

StateSet closure(const std::vector<NfaState>& nfa, StateSet seeds) {
  std::vector<std::uint8_t> seen(nfa.size(), 0);
  std::vector<int> stack = seeds;
  for (int s : seeds) seen[static_cast<std::size_t>(s)] = 1;
  while (!stack.empty()) {
    const int s = stack.back();
    stack.pop_back();
    for (int t : nfa[static_cast<std::size_t>(s)].epsilon)
      if (!seen[static_cast<std::size_t>(t)]) {
        seen[static_cast<std::size_t>(t)] = 1;
        stack.push_back(t);
        seeds.push_back(t);
      }
  }
  std::sort(seeds.begin(), seeds.end());
  return seeds;
}

}  // namespace

// ---------------------------------------------------------------------------
// DFA

int Dfa::classify(char32_t cp) const {
  const auto it = std::lower_bound(symbols_.begin(), symbols_.end(), cp);
  if (it != symbols_.end() && *it == cp) return static_cast<int>(it - symbols_.begin());
  if (cp == U'\n') return -1;
  return static_cast<int>(symbols_.size());
}

int Dfa::next(int state, int symbol_class) const {
  if (state < 0 || symbol_class < 0) return kNoState;
  return next_.at(static_cast<std::size_t>(state)).at(static_cast<std::size_t>(symbol_class));
}

std::size_t Dfa::complete_state_count() const noexcept {
  for (const auto& row : next_)
    for (int t : row)
      if (t == kNoState) return state_count() + 1;
  return state_count() + (start_ == kNoState ? 1 : 0);
}

bool Dfa::matches(std::string_view text) const {
  int state = start_;
  for (char32_t cp : utf8::decode(text)) {
    state = next(state, classify(cp));
    if (state == kNoState) return false;
  }
  return state != kNoState && accepting(state);
}

Dfa compile(const Ast& ast) {
  Dfa dfa;
  collect_symbols(ast, dfa.symbols_);
  std::sort(dfa.symbols_.begin(), dfa.symbols_.end());
  dfa.symbols_.erase(std::unique(dfa.symbols_.begin(), dfa.symbols_.end()), dfa.symbols_.end());
  const int classes = static_cast<int>(dfa.symbols_.size()) + 1;
  int newline_class = -1;
  if (const auto it = std::find(dfa.symbols_.begin(), dfa.symbols_.end(), U'\n'); it != dfa.symbols_.end())
    newline_class = static_cast<int>(it - dfa.symbols_.begin());

  NfaBuilder builder(dfa.symbols_);
  const Fragment top = builder.build(ast);
  const auto nfa = builder.take();

  // Subset construction; the empty set is the (implicit) dead state.
  std::map<StateSet, int> ids;
  std::vector<StateSet> sets;
  std::vector<std::vector<int>> trans;
  auto intern = [&](StateSet set) {
    auto [it, inserted] = ids.try_emplace(set, static_cast<int>(sets.size()));
    if (inserted) {
      sets.push_back(std::move(set));
      trans.emplace_back(static_cast<std::size_t>(classes), Dfa::kNoState);
    }
    return it->second;
  };
  intern(closure(nfa, {top.start}));
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (int c = 0; c < classes; ++c) {
      StateSet moved;
      for (int s : sets[i]) {
        const auto& st = nfa[static_cast<std::size_t>(s)];
        if (st.label == c || (st.label == kDotLabel && c != newline_class)) moved.push_back(st.target);
      }
      if (moved.empty()) continue;
      const int target = intern(closure(nfa, std::move(moved)));
      trans[i][static_cast<std::size_t>(c)] = target;
    }
  }
  const std::size_t n = sets.size();
  std::vector<std::uint8_t> accepting(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    accepting[i] = std::binary_search(sets[i].begin(), sets[i].end(), top.accept) ? 1 : 0;

  // Moore partition refinement over the completed automaton (dead = n).
  const std::size_t dead = n;
  auto target_of = [&](std::size_t s, int c) -> std::size_t {
    if (s == dead) return dead;
    const int t = trans[s][static_cast<std::size_t>(c)];
    return t == Dfa::kNoState ? dead : static_cast<std::size_t>(t);
  };
  std::vector<std::size_t> block(n + 1);
  for (std::size_t s = 0; s < n; ++s) block[s] = accepting[s] ? 1 : 0;
  block[dead] = 0;
  std::size_t block_count = 0;
  while (true) {
    std::map<std::vector<std::size_t>, std::size_t> signatures;
    std::vector<std::size_t> refined(n + 1);
    for (std::size_t s = 0; s <= n; ++s) {
      std::vector<std::size_t> sig{block[s]};
      for (int c = 0; c < classes; ++c) sig.push_back(block[target_of(s, c)]);
      refined[s] = signatures.try_emplace(std::move(sig), signatures.size()).first->second;
    }
    const std::size_t count = signatures.size();
    block = std::move(refined);
    if (count == block_count) break;
    block_count = count;
  }

  // Blocks with an empty residual language collapse into the dead block.
  std::vector<std::uint8_t> live(block_count, 0);
  for (std::size_t s = 0; s < n; ++s)
    if (accepting[s]) live[block[s]] = 1;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t s = 0; s < n; ++s) {
      if (live[block[s]]) continue;
      for (int c = 0; c < classes; ++c)
        if (live[block[target_of(s, c)]]) {
          live[block[s]] = 1;
          changed = true;
          break;
        }
    }
  }

  // Renumber live blocks breadth-first from the start state.
  std::vector<std::size_t> representative(block_count, dead);
  for (std::size_t s = 0; s < n; ++s)
    if (representative[block[s]] == dead) representative[block[s]] = s;
  std::vector<int> number(block_count, Dfa::kNoState);
  std::deque<std::size_t> queue;
  if (live[block[0]]) {
    number[block[0]] = 0;
    queue.push_back(block[0]);
    dfa.start_ = 0;
  }
  std::vector<std::size_t> order;
  while (!queue.empty()) {
    const std::size_t b = queue.front();
    queue.pop_front();
    order.push_back(b);
    for (int c = 0; c < classes; ++c) {
      const std::size_t tb = block[target_of(representative[b], c)];
      if (live[tb] && number[tb] == Dfa::kNoState) {
        number[tb] = static_cast<int>(order.size() + queue.size());
        queue.push_back(tb);
      }
    }
  }
  for (std::size_t b : order) {
    const std::size_t rep = representative[b];
    std::vector<int> row(static_cast<std::size_t>(classes), Dfa::kNoState);
    for (int c = 0; c < classes; ++c) {
      const std::size_t tb = block[target_of(rep, c)];
      if (live[tb]) row[static_cast<std::size_t>(c)] = number[tb];
    }
    dfa.next_.push_back(std::move(row));
    dfa.accepting_.push_back(accepting[rep]);
  }
  return dfa;
}

Dfa compile(std::string_view pattern) { return compile(parse_regex(pattern)); }

std::size_t dfa_state_count(const Dfa& dfa) { return dfa.state_count(); }

bool matches(const Dfa& dfa, std::string_view text) { return dfa.matches(text); }

// ---------------------------------------------------------------------------
// Atoms

RegexAtom make_atom(std::string keyword, std::string pattern) {
  Dfa dfa = compile(pattern);
  return {std::move(keyword), std::move(pattern), std::move(dfa)};
}

std::vector<RegexAtom> load_atoms(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  std::vector<RegexAtom> atoms;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    detail::strip_cr(line);
    if (detail::trim(line).empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0)
      throw ParseError(path.string(), lineno, "expected keyword<TAB>pattern");
    try {
      atoms.push_back(make_atom(line.substr(0, tab), line.substr(tab + 1)));
    } catch (const ParseError& e) {
      throw ParseError(path.string(), lineno, e.what());
    }
  }
  return atoms;
}

std::set<std::string> tag_regex(std::span<const RegexAtom> atoms, std::string_view text) {
  const std::string lowered = utf8::to_lower(text);
  std::set<std::string> out;
  for (const auto& atom : atoms)
    if (atom.dfa.matches(lowered)) out.insert(atom.keyword);
  return out;
}

std::set<std::string> tag_regex(std::span<const corpus::Atom> atoms, const corpus::Segment& segment) {
  std::vector<RegexAtom> compiled;
  for (const auto& atom : atoms) {
    if (atom.kind != corpus::AtomKind::RegEx)
      throw Error(ErrorCode::InvalidArgument, "atom '" + atom.id + "' is not a RegEx atom");
    compiled.push_back(make_atom(atom.keyword, atom.pattern));
  }
  return tag_regex(compiled, segment.text);
}

}  // namespace convtag::regex
