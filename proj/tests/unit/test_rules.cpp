#include <random>
#include <sstream>

#include "convtag/error.hpp"
#include "convtag/rules.hpp"
#include "doctest.h"

using namespace convtag::rules;

namespace {

const std::set<std::string> kKeywords = {"age",        "call_permission", "greeting_initial", "person_identity",
                                         "question_1", "question_2",      "question_3",       "a",
                                         "b",          "c",               "d"};

std::vector<SeverityRule> table_rules() {
  std::istringstream in(
      "# name\tseverity\texpression\n"
      "identity_check\t1\tage AND person_identity\n"
      "opening_check\t2\tgreeting_initial AND call_permission\n"
      "survey_questions\t3\tquestion_1 ∧ question_2 ∧ question_3\n");
  return parse_rules(in, kKeywords);
}

const TagSet kAll = {"age", "person_identity", "greeting_initial", "call_permission",
                     "question_1", "question_2", "question_3"};

RuleExpr random_expr(std::mt19937_64& rng, int depth, bool allow_not) {
  static const std::vector<std::string> ids = {"a", "b", "c", "d"};
  const int pick = depth <= 0 ? 0 : static_cast<int>(rng() % (allow_not ? 4 : 3));
  RuleExpr e;
  switch (pick) {
    case 0:
      e.name = ids[rng() % ids.size()];
      break;
    case 1:
    case 2:
      e.kind = pick == 1 ? RuleExpr::Kind::And : RuleExpr::Kind::Or;
      e.children = {random_expr(rng, depth - 1, allow_not), random_expr(rng, depth - 1, allow_not)};
      break;
    default:
      e.kind = RuleExpr::Kind::Not;
      e.children = {random_expr(rng, depth - 1, allow_not)};
  }
  return e;
}

TagSet tags_of(unsigned mask) {
  static const std::vector<std::string> ids = {"a", "b", "c", "d"};
  TagSet t;
  for (std::size_t i = 0; i < 4; ++i)
    if (mask >> i & 1) t.insert(ids[i]);
  return t;
}

}  // namespace

TEST_CASE("conjunction from the operational guidelines") {
  const auto e = parse_rule("greeting_initial AND call_permission", kKeywords);
  CHECK(e.kind == RuleExpr::Kind::And);
  CHECK(identifiers(e) == std::set<std::string>{"call_permission", "greeting_initial"});
}

TEST_CASE("NOT binds tighter than AND, AND tighter than OR") {
  const auto e = parse_rule("NOT a OR b AND c", kKeywords);
  REQUIRE(e.kind == RuleExpr::Kind::Or);
  CHECK(e.children[0].kind == RuleExpr::Kind::Not);
  CHECK(e.children[1].kind == RuleExpr::Kind::And);
  CHECK(to_string(e) == "NOT a OR b AND c");
  CHECK(to_string(parse_rule("(a OR b) AND c", kKeywords)) == "(a OR b) AND c");
}

TEST_CASE("unknown identifiers and syntax errors") {
  try {
    parse_rule("privacyy AND age", kKeywords);
    FAIL("expected an error");
  } catch (const convtag::Error& e) {
    CHECK(e.code() == convtag::ErrorCode::Schema);
  }
  CHECK_THROWS_AS(parse_rule("a AND", kKeywords), convtag::ParseError);
  CHECK_THROWS_AS(parse_rule("(a", kKeywords), convtag::ParseError);
  CHECK_THROWS_AS(parse_rule("", kKeywords), convtag::ParseError);
  CHECK_THROWS_AS(parse_rule("a b", kKeywords), convtag::ParseError);
}

TEST_CASE("rule evaluation") {
  const auto q = parse_rule("question_1 AND question_2 AND question_3", kKeywords);
  CHECK(evaluate_rule(q, {"question_1", "question_2", "question_3"}));
  CHECK_FALSE(evaluate_rule(q, {"question_1", "question_3"}));
  CHECK(evaluate_rule(parse_rule("NOT age", kKeywords), {}));
}

TEST_CASE("assessment of complete and incomplete calls") {
  const auto rules = table_rules();
  const std::vector<TagSet> full = {{"age", "person_identity"}, {"greeting_initial", "call_permission"},
                                    {"question_1", "question_2", "question_3"}};
  const auto ok = assess_call("c1", full, rules);
  CHECK(ok.failures.empty());
  CHECK_FALSE(ok.max_severity.has_value());
  CHECK(ok.tags == kAll);

  TagSet no_permission = kAll;
  no_permission.erase("call_permission");
  const auto a = assess_call("c2", std::vector<TagSet>{no_permission}, rules);
  CHECK(a.failures == std::vector<Failure>{{"opening_check", 2}});
  CHECK(a.max_severity == 2);

  TagSet two_missing = kAll;
  two_missing.erase("age");
  two_missing.erase("question_3");
  const auto b = assess_call("c3", std::vector<TagSet>{two_missing}, rules);
  CHECK(b.failures == std::vector<Failure>{{"survey_questions", 3}, {"identity_check", 1}});
  CHECK(b.max_severity == 3);

  std::ostringstream out;
  write_assessment(b, out);
  CHECK(out.str() == "c3\t3\tsurvey_questions:3,identity_check:1\n");
}

TEST_CASE("custom severity ordering changes the maximum") {
  const auto rules = table_rules();
  TagSet two_missing = kAll;
  two_missing.erase("age");
  two_missing.erase("question_3");
  SeverityScale scale;
  scale.most_to_least = {1, 2, 3};
  const auto b = assess_call("c", std::vector<TagSet>{two_missing}, rules, scale);
  CHECK(b.max_severity == 1);
  CHECK(b.failures.front().rule == "identity_check");
  CHECK_THROWS(scale.rank(4));
}

TEST_CASE("segment order does not matter") {
  const auto rules = table_rules();
  std::vector<TagSet> segs = {{"age"}, {"greeting_initial", "question_1"}, {"call_permission"}, {"question_2"}};
  const auto ref = assess_call("c", segs, rules);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    std::shuffle(segs.begin(), segs.end(), rng);
    const auto again = assess_call("c", segs, rules);
    CHECK(again.failures == ref.failures);
    CHECK(again.tags == ref.tags);
  }
}

TEST_CASE("negation-free rules are monotone in the tag set") {
  std::mt19937_64 rng(4);
  for (int round = 0; round < 300; ++round) {
    const auto e = random_expr(rng, 3, false);
    for (unsigned m = 0; m < 16; ++m)
      for (unsigned extra = 0; extra < 16; ++extra)
        if (evaluate_rule(e, tags_of(m))) CHECK(evaluate_rule(e, tags_of(m | extra)));
  }
}

TEST_CASE("printing then parsing keeps the truth table") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 300; ++round) {
    const auto e = random_expr(rng, 4, true);
    const auto back = parse_rule(to_string(e), kKeywords);
    for (unsigned m = 0; m < 16; ++m) CHECK(evaluate_rule(back, tags_of(m)) == evaluate_rule(e, tags_of(m)));
  }
}

TEST_CASE("rules file errors carry line numbers") {
  std::istringstream bad_sev("r1\t2\ta AND b\nr2\t7\ta\n");
  try {
    parse_rules(bad_sev, kKeywords, "rules.tsv");
    FAIL("expected an error");
  } catch (const convtag::ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream short_line("r1\t2\n");
  CHECK_THROWS_AS(parse_rules(short_line, kKeywords), convtag::ParseError);
}
