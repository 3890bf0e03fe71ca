#include "convtag/config.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "convtag/error.hpp"
#include "text_io.hpp"

namespace convtag::config {

namespace {

struct Default {
  const char* key;
  const char* value;
};

// Tree defaults follow the usual J48S settings except min_support, which is
// lowered for text tagging.
constexpr Default kDefaults[] = {
    {"paths.corpus", ""},
    {"paths.stopwords", ""},
    {"paths.atoms", ""},
    {"paths.rules", ""},
    {"paths.models", "models"},
    {"paths.reports", "reports"},
    {"paths.predictions", ""},
    {"paths.tag_input", ""},
    {"paths.audio_in", ""},
    {"paths.audio_out", "segments"},
    {"paths.reference", ""},
    {"paths.hypothesis", ""},
    {"run.seed", "42"},
    {"run.strategy", "hybrid"},
    {"run.hybrid", "regex,logit"},
    {"run.verify_hybrid", "true"},
    {"split.fraction", "0.75"},
    {"text.ngram", "1"},
    {"text.min_freq", "0.01"},
    {"text.stem", "true"},
    {"logit.ridge", "1e-8"},
    {"logit.stale_limit", "5"},
    {"tree.max_gap", "2"},
    {"tree.max_pattern_length", "20"},
    {"tree.max_time", "30"},
    {"tree.min_support", "0.01"},
    {"tree.pattern_weight", "0.5"},
    {"tree.ig_pruning", "true"},
    {"tree.min_leaf", "2"},
    {"tree.confidence", "0.25"},
    {"audio.min_silence_ms", "750"},
    {"audio.silence_thresh", "-34"},
    {"audio.keep_silence_ms", "450"},
    {"audio.min_segment_ms", "3000"},
    {"audio.step_ms", "10"},
    {"wer.filter_stopwords", "false"},
    {"rules.severity_order", "3,2,1"},
    {"synth.sessions", "50"},
    {"synth.segments_per_session", "10"},
    {"synth.noise", "0.2"},
};

}  // namespace

Config::Config() {
  for (const auto& d : kDefaults) values_[d.key] = d.value;
}

const std::vector<std::string>& Config::known_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& d : kDefaults) k.emplace_back(d.key);
    std::sort(k.begin(), k.end());
    return k;
  }();
  return keys;
}

Config Config::load(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  auto dir = path.parent_path();
  if (dir.empty()) dir = ".";
  return parse(in, path.string(), dir);
}

Config Config::parse(std::istream& in, const std::string& source, const std::filesystem::path& base_dir) {
  Config cfg;
  cfg.base_dir_ = base_dir;
  std::string section, line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    detail::strip_cr(line);
    const auto text = detail::trim(line);
    if (text.empty() || text.front() == '#' || text.front() == ';') continue;
    if (text.front() == '[') {
      if (text.back() != ']') throw ParseError(source, lineno, "unterminated section header");
      section = std::string(detail::trim(text.substr(1, text.size() - 2)));
      if (section.empty()) throw ParseError(source, lineno, "empty section name");
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ParseError(source, lineno, "expected key = value");
    const std::string key(detail::trim(text.substr(0, eq)));
    if (key.empty()) throw ParseError(source, lineno, "empty key");
    const std::string full = section.empty() ? key : section + "." + key;
    try {
      cfg.set(full, std::string(detail::trim(text.substr(eq + 1))));
    } catch (const Error& e) {
      throw ParseError(source, lineno, e.what());
    }
  }
  return cfg;
}

void Config::set(const std::string& key, const std::string& value) {
  const auto it = values_.find(key);
  if (it == values_.end()) throw Error(ErrorCode::Schema, "unknown configuration key '" + key + "'");
  it->second = value;
}

const std::string& Config::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw Error(ErrorCode::Schema, "unknown configuration key '" + key + "'");
  return it->second;
}

double Config::get_double(const std::string& key) const {
  double v = 0;
  if (!detail::parse_number(get(key), v))
    throw Error(ErrorCode::InvalidArgument, key + ": '" + get(key) + "' is not a number");
  return v;
}

long long Config::get_int(const std::string& key) const {
  long long v = 0;
  if (!detail::parse_number(get(key), v))
    throw Error(ErrorCode::InvalidArgument, key + ": '" + get(key) + "' is not an integer");
  return v;
}

bool Config::get_bool(const std::string& key) const {
  const auto& v = get(key);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw Error(ErrorCode::InvalidArgument, key + ": '" + v + "' is not a boolean");
}

std::vector<std::string> Config::get_list(const std::string& key) const {
  std::vector<std::string> out;
  for (const auto& part : detail::split(get(key), ',')) {
    const auto t = detail::trim(part);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

std::filesystem::path Config::get_path(const std::string& key) const {
  const std::filesystem::path p = get(key);
  if (p.empty() || p.is_absolute() || base_dir_.empty()) return p;
  return base_dir_ / p;
}

void Config::write(std::ostream& out) const {
  std::string section;
  for (const auto& [key, value] : values_) {
    const auto dot = key.find('.');
    const std::string s = key.substr(0, dot);
    if (s != section) {
      out << (section.empty() ? "" : "\n") << "[" << s << "]\n";
      section = s;
    }
    out << key.substr(dot + 1) << " = " << value << "\n";
  }
}

}  // namespace convtag::config
