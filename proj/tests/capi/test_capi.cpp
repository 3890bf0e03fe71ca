// Uses nothing but the C header and the shared library.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "convtag/convtag.h"
#include "doctest.h"

namespace fs = std::filesystem;

namespace {

void collect(const char* text, size_t length, void* user) { static_cast<std::string*>(user)->append(text, length); }

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(convtag_version()).size() > 0);
  CHECK(std::string(convtag_status_name(CONVTAG_OK)) == "ok");
  CHECK(std::string(convtag_status_name(CONVTAG_ERR_PARSE)) == "parse error");
}

TEST_CASE("null arguments are rejected, not crashed on") {
  CHECK(convtag_config_create(nullptr) == CONVTAG_ERR_INVALID_ARGUMENT);
  CHECK(std::string(convtag_last_error()).size() > 0);
  double w = 0;
  CHECK(convtag_wer(nullptr, "a", &w) == CONVTAG_ERR_INVALID_ARGUMENT);
  CHECK(convtag_regex_compile("a", nullptr) == CONVTAG_ERR_INVALID_ARGUMENT);
  convtag_config_destroy(nullptr);
  convtag_regex_destroy(nullptr);
  convtag_ruleset_destroy(nullptr);
}

TEST_CASE("config set and get, with truncation") {
  convtag_config* cfg = nullptr;
  REQUIRE(convtag_config_create(&cfg) == CONVTAG_OK);
  CHECK(std::string(convtag_last_error()).empty());
  char buf[64];
  size_t len = 0;
  REQUIRE(convtag_config_get(cfg, "run.strategy", buf, sizeof buf, &len) == CONVTAG_OK);
  CHECK(std::string(buf) == "hybrid");
  CHECK(len == 6);
  CHECK(convtag_config_set(cfg, "run.strategy", "logit") == CONVTAG_OK);
  char small[3];
  REQUIRE(convtag_config_get(cfg, "run.strategy", small, sizeof small, &len) == CONVTAG_OK);
  CHECK(std::string(small) == "lo");
  CHECK(len == 5);
  CHECK(convtag_config_set(cfg, "run.nonsense", "1") == CONVTAG_ERR_SCHEMA);
  CHECK(convtag_config_get(cfg, "run.nonsense", buf, sizeof buf, nullptr) == CONVTAG_ERR_SCHEMA);
  convtag_config_destroy(cfg);
}

TEST_CASE("loading a missing config file is an I/O error") {
  convtag_config* cfg = nullptr;
  CHECK(convtag_config_load("/nonexistent/convtag.ini", &cfg) == CONVTAG_ERR_IO);
  CHECK(cfg == nullptr);
}

TEST_CASE("word error rate") {
  double w = -1;
  REQUIRE(convtag_wer("a b c", "a x c", &w) == CONVTAG_OK);
  CHECK(w == doctest::Approx(1.0 / 3.0));
  REQUIRE(convtag_wer("a b c", "", &w) == CONVTAG_OK);
  CHECK(w == 1.0);
  CHECK(convtag_wer("", "a", &w) == CONVTAG_ERR_INVALID_ARGUMENT);
}

TEST_CASE("regex handles") {
  convtag_regex* re = nullptr;
  REQUIRE(convtag_regex_compile(".*(age).*", &re) == CONVTAG_OK);
  int hit = 0;
  REQUIRE(convtag_regex_matches(re, "what is your age please", &hit) == CONVTAG_OK);
  CHECK(hit == 1);
  REQUIRE(convtag_regex_matches(re, "nothing here", &hit) == CONVTAG_OK);
  CHECK(hit == 0);
  convtag_regex_destroy(re);

  REQUIRE(convtag_regex_compile("a|b", &re) == CONVTAG_OK);
  size_t n = 0;
  REQUIRE(convtag_regex_state_count(re, &n) == CONVTAG_OK);
  CHECK(n == 2);
  convtag_regex_destroy(re);

  re = nullptr;
  CHECK(convtag_regex_compile("a(", &re) == CONVTAG_ERR_PARSE);
  CHECK(re == nullptr);
  CHECK(std::string(convtag_last_error()).find("1:") != std::string::npos);
}

TEST_CASE("rulesets assess comma-separated tag sets") {
  const std::string path = std::string(CONVTAG_REPO_DATA) + "/synthetic/rules.tsv";
  const char* kws =
      "age,call_permission,duration_info,family_unit,greeting_final,greeting_initial,person_identity,"
      "privacy,profession,question_1,question_2,question_3";
  convtag_ruleset* rules = nullptr;
  REQUIRE(convtag_ruleset_load(path.c_str(), kws, &rules) == CONVTAG_OK);
  int sev = -1;
  REQUIRE(convtag_ruleset_assess(rules,
                                 "age,person_identity,greeting_initial,call_permission,question_1,question_2,question_3",
                                 &sev) == CONVTAG_OK);
  CHECK(sev == 0);
  REQUIRE(convtag_ruleset_assess(rules, "age,person_identity,greeting_initial,question_1,question_2,question_3", &sev) ==
          CONVTAG_OK);
  CHECK(sev == 2);
  REQUIRE(convtag_ruleset_assess(rules, "greeting_initial,call_permission,person_identity,question_1,question_2", &sev) ==
          CONVTAG_OK);
  CHECK(sev == 3);
  convtag_ruleset_destroy(rules);

  rules = nullptr;
  CHECK(convtag_ruleset_load(path.c_str(), "age", &rules) == CONVTAG_ERR_PARSE);
  CHECK(std::string(convtag_last_error()).find("person_identity") != std::string::npos);
  CHECK(rules == nullptr);
}

TEST_CASE("pipeline runs through the C interface") {
  const auto dir = fs::temp_directory_path() / "convtag_capi_run";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream ini(dir / "run.ini");
    ini << "[paths]\ncorpus = corpus.tsv\natoms = atoms.tsv\nrules = rules.tsv\n"
           "[run]\nstrategy = regex\n[synth]\nsessions = 6\nsegments_per_session = 5\n";
  }
  convtag_config* cfg = nullptr;
  REQUIRE(convtag_config_load((dir / "run.ini").c_str(), &cfg) == CONVTAG_OK);
  std::string log;
  for (const char* cmd : {"synth", "prepare", "tag", "evaluate"}) {
    INFO(cmd << ": " << convtag_last_error());
    REQUIRE(convtag_run(cmd, cfg, collect, &log) == CONVTAG_OK);
  }
  CHECK(log.find("regex: tagged") != std::string::npos);
  CHECK(fs::exists(dir / "reports/metrics_regex.tsv"));
  CHECK(convtag_run("fly", cfg, nullptr, nullptr) == CONVTAG_ERR_INVALID_ARGUMENT);
  CHECK(convtag_run("evaluate", nullptr, nullptr, nullptr) == CONVTAG_ERR_INVALID_ARGUMENT);
  convtag_config_destroy(cfg);
  fs::remove_all(dir);
}
