#pragma once

// End-to-end workflow: split, featurize, train per-keyword taggers, tag,
// evaluate, assess calls, plus the audio and WER side tasks.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "convtag/config.hpp"
#include "convtag/corpus.hpp"
#include "convtag/evaluate.hpp"
#include "convtag/linmodel.hpp"
#include "convtag/regex.hpp"
#include "convtag/seqtree.hpp"
#include "convtag/textprep.hpp"

namespace convtag::pipeline {

struct TextOptions {
  textprep::StopwordSet stopwords = textprep::default_stopwords();
  bool stem = true;
  int ngram = 1;
  double min_freq = 0.01;
};

class Featurizer {
 public:
  Featurizer(TextOptions options, textprep::NgramVocab vocab);
  static Featurizer fit(const corpus::Corpus& train, TextOptions options);

  textprep::TokenSeq tokens(const std::string& text) const;
  textprep::FeatureVector features(const std::string& text) const;
  const textprep::NgramVocab& vocab() const noexcept { return vocab_; }
  const std::vector<std::string>& feature_names() const noexcept { return names_; }

 private:
  TextOptions options_;
  textprep::NgramVocab vocab_;
  std::vector<std::string> names_;
};

// Presence bits per segment and keyword.
struct TagMatrix {
  std::vector<std::string> keywords;
  std::vector<std::string> session_ids;
  std::vector<std::string> segment_ids;
  std::vector<std::vector<std::uint8_t>> bits;  // [segment][keyword]

  evaluate::BoolColumn column(std::size_t keyword) const;
  friend bool operator==(const TagMatrix&, const TagMatrix&) = default;
};

TagMatrix empty_tags(const corpus::Corpus& corpus);

linmodel::FeatureMatrix keyword_matrix(const corpus::Corpus& corpus, const Featurizer& featurizer,
                                       std::size_t keyword);

struct LogitOptions {
  double ridge = 1e-8;
  std::size_t stale_limit = 5;
};

// CFS best-first selection, then logistic regression on the selected columns.
linmodel::LogisticModel train_logit(const linmodel::FeatureMatrix& data, const LogitOptions& options = {});

// One sequential attribute ("text"), classes absent/present.
seqtree::Dataset keyword_dataset(const corpus::Corpus& corpus, const Featurizer& featurizer,
                                 std::size_t keyword);

using LogitModels = std::map<std::string, linmodel::LogisticModel>;
using TreeModels = std::map<std::string, seqtree::DecisionTree>;

LogitModels train_logit_models(const corpus::Corpus& train, const Featurizer& featurizer,
                               const LogitOptions& options = {});
TreeModels train_tree_models(const corpus::Corpus& train, const Featurizer& featurizer,
                             const seqtree::TreeParams& params);

TagMatrix tag_with_logit(const corpus::Corpus& corpus, const Featurizer& featurizer, const LogitModels& models);
TagMatrix tag_with_tree(const corpus::Corpus& corpus, const Featurizer& featurizer, const TreeModels& models);
// Keywords without an atom stay untagged.
TagMatrix tag_with_regex(const corpus::Corpus& corpus, std::span<const regex::RegexAtom> atoms);
TagMatrix combine_or(const TagMatrix& a, const TagMatrix& b);

// `session_id<TAB>segment_id<TAB>keyword<TAB>0|1`, header first.
void write_predictions(const TagMatrix& tags, std::ostream& out);
TagMatrix read_predictions(const std::filesystem::path& path);

// One metric row per keyword; segments are matched by id.
std::vector<evaluate::MetricRow> evaluate_tags(const TagMatrix& predicted, const corpus::Corpus& gold);

// Runs a subcommand: synth, prepare, train, tag, evaluate, assess, wer,
// segment-audio. Human-readable summaries go to `out`. Throws convtag::Error.
void run(const std::string& subcommand, const config::Config& cfg, std::ostream& out);

}  // namespace convtag::pipeline
