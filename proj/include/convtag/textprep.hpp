#pragma once

// Text normalization and ngram presence features.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace convtag::textprep {

using TokenSeq = std::vector<std::string>;
using StopwordSet = std::unordered_set<std::string>;
using Ngram = std::vector<std::string>;
using FeatureVector = std::vector<std::uint8_t>;

const std::vector<std::string>& bundled_stopword_list();
StopwordSet default_stopwords();
// One word per line, UTF-8. Words are lowercased on load.
StopwordSet load_stopwords(const std::filesystem::path& path);

// Lowercase, split on every non-alphabetic character, drop stopwords, then
// optionally stem. Token order is preserved.
TokenSeq normalize(std::string_view text, const StopwordSet& stopwords, bool use_stemmer);

// Snowball Italian stemmer. Input is a lowercase word.
std::string stem_italian(std::string_view word);

struct NgramVocab {
  int n = 1;
  double min_freq = 0.0;
  std::size_t documents = 0;
  std::vector<Ngram> entries;           // sorted
  std::vector<std::size_t> doc_freq;    // parallel to entries

  std::size_t size() const noexcept { return entries.size(); }
  bool empty() const noexcept { return entries.empty(); }
};

// Space-joined ngram, used as the feature name.
std::string ngram_name(const Ngram& gram);

// Every contiguous n-gram whose document frequency (share of sequences
// containing it at least once) is at least `min_freq`.
NgramVocab extract_ngram_vocab(std::span<const TokenSeq> docs, int n, double min_freq);

// Presence bits aligned with `vocab.entries`.
FeatureVector featurize(const TokenSeq& tokens, const NgramVocab& vocab);

std::vector<std::string> feature_names(const NgramVocab& vocab);

// `n<TAB>min_freq<TAB>documents` header, then `ngram<TAB>doc_freq` lines.
void save_vocab(const NgramVocab& vocab, const std::filesystem::path& path);
NgramVocab load_vocab(const std::filesystem::path& path);

}  // namespace convtag::textprep
