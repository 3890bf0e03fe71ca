#pragma once

// Deterministic generator for an Italian-like outbound-survey corpus with
// planted keyword phrases, plus matching regex atoms and compliance rules.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "convtag/corpus.hpp"

namespace convtag::synth {

struct SynthOptions {
  std::size_t sessions = 50;
  std::size_t segments_per_session = 10;
  double noise = 0.2;           // share of inserted noise tokens, below 0.5
  double keyword_rate = 0.85;   // chance a call contains a given keyword
  std::uint64_t seed = 42;
};

// The twelve survey keywords, alphabetical.
const std::vector<std::string>& keywords();

// Phrase template planted for a keyword (one variant).
const std::vector<std::string>& templates(const std::string& keyword);
// Words used for filler and noise; no stem is shared with any template.
const std::vector<std::string>& filler_words();

corpus::Corpus generate_corpus(const SynthOptions& options = {});

// (keyword, pattern) pairs in the atom file layout.
std::vector<std::pair<std::string, std::string>> regex_atoms();

// Three compliance rules: identity check, opening check, survey questions.
std::string rules_text();

}  // namespace convtag::synth
