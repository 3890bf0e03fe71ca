#include <filesystem>
#include <fstream>
#include <random>

#include "convtag/corpus.hpp"
#include "convtag/error.hpp"
#include "convtag/regex.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace convtag::regex;

TEST_CASE("precedence: concat binds tighter than alternation") {
  CHECK(to_debug_string(parse_regex("ab|c")) == "Alt(Concat(a,b),c)");
}

TEST_CASE("malformed patterns are parse errors") {
  for (const char* bad : {"a(", "a)", "*a", "a||b", "|a", "a|", "()", "a\\"}) {
    INFO(bad);
    CHECK_THROWS_AS(parse_regex(bad), convtag::ParseError);
  }
}

TEST_CASE("self-anchored pattern shape") {
  const auto ast = parse_regex(".*(age).*");
  REQUIRE(ast.kind == Ast::Kind::Concat);
  REQUIRE(ast.children.size() == 3);
  CHECK(ast.children[0].kind == Ast::Kind::Star);
  CHECK(ast.children[0].children[0].kind == Ast::Kind::Dot);
  CHECK(ast.children[1].kind == Ast::Kind::Group);
  CHECK(ast.children[2].kind == Ast::Kind::Star);
}

TEST_CASE("pattern text round-trips through the AST") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 300; ++i) {
    const auto p = oracle::random_regex(rng, "ab\\.", 10);
    const auto ast = parse_regex(p);
    CHECK(parse_regex(to_pattern(ast)) == ast);
  }
}

TEST_CASE("small automata sizes") {
  CHECK(dfa_state_count(compile("a")) == 2);
  CHECK(dfa_state_count(compile("a*")) == 1);
  CHECK(dfa_state_count(compile("a|b")) == 2);
}

TEST_CASE("(ab)|(ac) has three live states and four with the dead state") {
  const auto ast = parse_regex("(ab)|(ac)");
  const auto d = compile(ast);
  CHECK(d.state_count() == 3);
  CHECK(d.complete_state_count() == 4);
  CHECK(oracle::myhill_nerode_states(ast, "abc", 3, false) == 3);
  CHECK(oracle::myhill_nerode_states(ast, "abc", 3, true) == 4);
}

TEST_CASE("whole-string matching") {
  CHECK(matches(compile(".*(age).*"), "what is your age please"));
  CHECK_FALSE(matches(compile("a"), "ab"));
  CHECK(matches(compile("a*"), ""));
  CHECK(matches(compile("(a|b?)"), ""));
  CHECK_FALSE(matches(compile("a+"), ""));
  CHECK_FALSE(matches(compile(".*"), "riga\nnuova"));
  CHECK(matches(compile("\\.\\*"), ".*"));
}

TEST_CASE("dot and literals work on accented code points") {
  CHECK(matches(compile("citt."), "città"));
  CHECK(matches(compile(".*perché.*"), "ma perché no"));
  CHECK_FALSE(matches(compile("citt."), "cittàà"));
}

TEST_CASE("compiled automaton agrees with the backtracking matcher") {
  std::mt19937_64 rng(77);
  const auto inputs = oracle::all_strings("abcd", 5);
  for (int round = 0; round < 60; ++round) {
    const auto p = oracle::random_regex(rng, "abc", 8);
    const auto ast = parse_regex(p);
    const auto dfa = compile(ast);
    std::size_t wrong = 0;
    for (const auto& s : inputs) wrong += dfa.matches(s) != oracle::ast_matches(ast, s);
    INFO(p);
    CHECK(wrong == 0);
  }
}

TEST_CASE("compiled automaton is minimal") {
  std::mt19937_64 rng(78);
  for (int round = 0; round < 60; ++round) {
    const auto p = oracle::random_regex(rng, "abc", 8);
    const auto ast = parse_regex(p);
    const std::string alphabet = p.find('.') == std::string::npos ? "abc" : "abcd";
    INFO(p);
    CHECK(compile(ast).state_count() == oracle::myhill_nerode_states(ast, alphabet, 4, false));
  }
}

TEST_CASE("tagging lowercases text and keeps atoms independent") {
  const std::vector<RegexAtom> atoms = {make_atom("age", ".*(nascita|anno).*"),
                                        make_atom("privacy", ".*(privacy).*"),
                                        make_atom("greeting_final", ".*(arrivederci).*")};
  CHECK(tag_regex(atoms, "Il suo ANNO di nascita") == std::set<std::string>{"age"});
  CHECK(tag_regex(atoms, "anno e privacy") == std::set<std::string>{"age", "privacy"});
  CHECK(tag_regex(atoms, "buongiorno").empty());
}

TEST_CASE("schema atoms tag segments and ML atoms are refused") {
  convtag::corpus::Atom a;
  a.id = "a1";
  a.keyword = "age";
  a.pattern = ".*(nascita).*";
  convtag::corpus::Segment s{"c1", "c1_1", "data di nascita", {}};
  CHECK(tag_regex(std::vector<convtag::corpus::Atom>{a}, s) == std::set<std::string>{"age"});
  a.kind = convtag::corpus::AtomKind::ML;
  CHECK_THROWS(tag_regex(std::vector<convtag::corpus::Atom>{a}, s));
}

TEST_CASE("atom files skip comments") {
  const auto path = std::filesystem::temp_directory_path() / "convtag_atoms.tsv";
  {
    std::ofstream out(path);
    out << "# keyword\tpattern\nage\t.*(nascita).*\nprivacy\t.*(privacy).*\n";
  }
  const auto atoms = load_atoms(path);
  REQUIRE(atoms.size() == 2);
  CHECK(atoms[1].keyword == "privacy");
  CHECK(atoms[0].dfa.matches("nascita"));
  std::filesystem::remove(path);
}
