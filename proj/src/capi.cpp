#include "convtag/convtag.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <new>
#include <set>
#include <sstream>
#include <string>

#include "convtag/config.hpp"
#include "convtag/error.hpp"
#include "convtag/evaluate.hpp"
#include "convtag/pipeline.hpp"
#include "convtag/regex.hpp"
#include "convtag/rules.hpp"
#include "text_io.hpp"

struct convtag_config {
  convtag::config::Config cfg;
};

struct convtag_regex {
  convtag::regex::Dfa dfa;
};

struct convtag_ruleset {
  std::vector<convtag::rules::SeverityRule> rules;
};

namespace {

thread_local std::string last_error;

convtag_status map_code(convtag::ErrorCode code) {
  switch (code) {
    case convtag::ErrorCode::InvalidArgument: return CONVTAG_ERR_INVALID_ARGUMENT;
    case convtag::ErrorCode::Io: return CONVTAG_ERR_IO;
    case convtag::ErrorCode::Parse: return CONVTAG_ERR_PARSE;
    case convtag::ErrorCode::Schema: return CONVTAG_ERR_SCHEMA;
    case convtag::ErrorCode::State: return CONVTAG_ERR_STATE;
  }
  return CONVTAG_ERR_INTERNAL;
}

convtag_status fail(convtag_status s, std::string msg) {
  last_error = std::move(msg);
  return s;
}

template <class F>
convtag_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return CONVTAG_OK;
  } catch (const convtag::Error& e) {
    return fail(map_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(CONVTAG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CONVTAG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CONVTAG_ERR_INTERNAL, "unknown failure");
  }
}

void need(const void* p, const char* what) {
  if (!p) throw convtag::Error(convtag::ErrorCode::InvalidArgument, std::string(what) + " is null");
}

std::set<std::string> comma_set(const char* s) {
  std::set<std::string> out;
  for (const auto& part : convtag::detail::split(s, ',')) {
    const auto t = convtag::detail::trim(part);
    if (!t.empty()) out.emplace(t);
  }
  return out;
}

class SinkBuf : public std::stringbuf {
 public:
  SinkBuf(convtag_write_fn fn, void* user) : fn_(fn), user_(user) {}
  int sync() override {
    const auto s = str();
    if (fn_ && !s.empty()) fn_(s.data(), s.size(), user_);
    str({});
    return 0;
  }

 private:
  convtag_write_fn fn_;
  void* user_;
};

}  // namespace

extern "C" {

const char* convtag_version(void) { return "1.0.0"; }

const char* convtag_last_error(void) { return last_error.c_str(); }

const char* convtag_status_name(convtag_status status) {
  switch (status) {
    case CONVTAG_OK: return "ok";
    case CONVTAG_ERR_INVALID_ARGUMENT: return "invalid argument";
    case CONVTAG_ERR_IO: return "i/o error";
    case CONVTAG_ERR_PARSE: return "parse error";
    case CONVTAG_ERR_SCHEMA: return "schema error";
    case CONVTAG_ERR_STATE: return "state error";
    case CONVTAG_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

convtag_status convtag_config_create(convtag_config** out) {
  return guarded([&] {
    need(out, "out");
    *out = new convtag_config{};
  });
}

convtag_status convtag_config_load(const char* path, convtag_config** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new convtag_config{convtag::config::Config::load(path)};
  });
}

convtag_status convtag_config_set(convtag_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    need(cfg, "config");
    need(key, "key");
    need(value, "value");
    cfg->cfg.set(key, value);
  });
}

convtag_status convtag_config_get(const convtag_config* cfg, const char* key, char* buffer, size_t size,
                                  size_t* length) {
  return guarded([&] {
    need(cfg, "config");
    need(key, "key");
    const auto& v = cfg->cfg.get(key);
    if (length) *length = v.size();
    if (buffer && size > 0) {
      const auto n = std::min(v.size(), size - 1);
      std::memcpy(buffer, v.data(), n);
      buffer[n] = '\0';
    }
  });
}

void convtag_config_destroy(convtag_config* cfg) { delete cfg; }

convtag_status convtag_run(const char* subcommand, const convtag_config* cfg, convtag_write_fn sink, void* user) {
  return guarded([&] {
    need(subcommand, "subcommand");
    need(cfg, "config");
    SinkBuf buf(sink, user);
    std::ostream out(&buf);
    try {
      convtag::pipeline::run(subcommand, cfg->cfg, out);
    } catch (...) {
      out.flush();
      throw;
    }
    out.flush();
  });
}

convtag_status convtag_wer(const char* reference, const char* hypothesis, double* out) {
  return guarded([&] {
    need(reference, "reference");
    need(hypothesis, "hypothesis");
    need(out, "out");
    const auto r = convtag::evaluate::split_words(reference);
    const auto h = convtag::evaluate::split_words(hypothesis);
    *out = convtag::evaluate::wer(r, h);
  });
}

convtag_status convtag_regex_compile(const char* pattern, convtag_regex** out) {
  return guarded([&] {
    need(pattern, "pattern");
    need(out, "out");
    *out = new convtag_regex{convtag::regex::compile(std::string_view(pattern))};
  });
}

convtag_status convtag_regex_state_count(const convtag_regex* re, size_t* out) {
  return guarded([&] {
    need(re, "regex");
    need(out, "out");
    *out = re->dfa.state_count();
  });
}

convtag_status convtag_regex_matches(const convtag_regex* re, const char* text, int* out) {
  return guarded([&] {
    need(re, "regex");
    need(text, "text");
    need(out, "out");
    *out = re->dfa.matches(text) ? 1 : 0;
  });
}

void convtag_regex_destroy(convtag_regex* re) { delete re; }

convtag_status convtag_ruleset_load(const char* path, const char* keywords, convtag_ruleset** out) {
  return guarded([&] {
    need(path, "path");
    need(keywords, "keywords");
    need(out, "out");
    *out = new convtag_ruleset{convtag::rules::load_rules(path, comma_set(keywords))};
  });
}

convtag_status convtag_ruleset_assess(const convtag_ruleset* rules, const char* tags, int* max_severity) {
  return guarded([&] {
    need(rules, "ruleset");
    need(tags, "tags");
    need(max_severity, "out");
    const std::vector<convtag::rules::TagSet> segs{comma_set(tags)};
    const auto a = convtag::rules::assess_call("call", segs, rules->rules);
    *max_severity = a.max_severity.value_or(0);
  });
}

void convtag_ruleset_destroy(convtag_ruleset* rules) { delete rules; }

}  // extern "C"
