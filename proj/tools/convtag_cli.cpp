// Command-line front end. Everything goes through the C interface.

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "convtag/convtag.h"

namespace {

void to_stdout(const char* text, size_t length, void*) { std::fwrite(text, 1, length, stdout); }

int report(convtag_status s) {
  std::fprintf(stderr, "convtag: %s: %s\n", convtag_status_name(s), convtag_last_error());
  return static_cast<int>(s);
}

struct Handle {
  convtag_config* cfg = nullptr;
  ~Handle() { convtag_config_destroy(cfg); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Keyword tagging and compliance checks for call-center transcripts"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(convtag_version()));

  std::string config_path;
  std::optional<long long> seed;
  std::optional<std::string> strategy, stopwords;
  std::optional<double> min_support, pattern_weight, silence_thresh, min_silence, keep_silence;
  std::optional<long long> max_gap;

  app.add_option("--config", config_path, "configuration file")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "random seed");
  app.add_option("--strategy", strategy, "regex, logit, tree or hybrid")
      ->check(CLI::IsMember({"regex", "logit", "tree", "hybrid"}));
  app.add_option("--stopwords", stopwords, "stopword list, one word per line");
  app.add_option("--min-support", min_support, "minimum pattern support (fraction)");
  app.add_option("--max-gap", max_gap, "maximum gap between pattern itemsets");
  app.add_option("--pattern-weight", pattern_weight, "weight of gain against pattern length");
  app.add_option("--silence-thresh", silence_thresh, "silence threshold in dBFS");
  app.add_option("--min-silence-ms", min_silence, "minimum pause length");
  app.add_option("--keep-silence-ms", keep_silence, "silence kept around each segment");

  const std::vector<std::pair<const char*, const char*>> commands = {
      {"synth", "generate the synthetic corpus, regex atoms and rules"},
      {"prepare", "split the corpus by session and build the vocabulary"},
      {"train", "train per-keyword models"},
      {"tag", "tag segments with the selected strategy"},
      {"evaluate", "compare predictions with gold labels"},
      {"assess", "apply compliance rules to tagged calls"},
      {"wer", "word error rate of hypothesis against reference transcripts"},
      {"segment-audio", "split recordings on silences"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  CLI11_PARSE(app, argc, argv);

  Handle h;
  convtag_status s = config_path.empty() ? convtag_config_create(&h.cfg) : convtag_config_load(config_path.c_str(), &h.cfg);
  if (s != CONVTAG_OK) return report(s);

  std::vector<std::pair<const char*, std::string>> overrides;
  if (seed) overrides.emplace_back("run.seed", std::to_string(*seed));
  if (strategy) overrides.emplace_back("run.strategy", *strategy);
  if (stopwords) overrides.emplace_back("paths.stopwords", std::filesystem::absolute(*stopwords).string());
  if (min_support) overrides.emplace_back("tree.min_support", std::to_string(*min_support));
  if (max_gap) overrides.emplace_back("tree.max_gap", std::to_string(*max_gap));
  if (pattern_weight) overrides.emplace_back("tree.pattern_weight", std::to_string(*pattern_weight));
  if (silence_thresh) overrides.emplace_back("audio.silence_thresh", std::to_string(*silence_thresh));
  if (min_silence) overrides.emplace_back("audio.min_silence_ms", std::to_string(*min_silence));
  if (keep_silence) overrides.emplace_back("audio.keep_silence_ms", std::to_string(*keep_silence));
  for (const auto& [key, value] : overrides)
    if ((s = convtag_config_set(h.cfg, key, value.c_str())) != CONVTAG_OK) return report(s);

  const auto name = app.get_subcommands().front()->get_name();
  s = convtag_run(name.c_str(), h.cfg, to_stdout, nullptr);
  std::fflush(stdout);
  return s == CONVTAG_OK ? 0 : report(s);
}
