#include <filesystem>
#include <fstream>
#include <random>

#include "convtag/textprep.hpp"
#include "doctest.h"

using namespace convtag::textprep;

TEST_CASE("digits and punctuation are dropped") {
  const StopwordSet none;
  CHECK(normalize("Trenta 30 secondi!", none, false) == TokenSeq{"trenta", "secondi"});
  CHECK(normalize("", none, false).empty());
}

TEST_CASE("configured stopwords are removed before stemming") {
  const StopwordSet sw = {"il", "è", "sul"};
  CHECK(normalize("il gatto è sul tavolo", sw, false) == TokenSeq{"gatto", "tavolo"});
}

TEST_CASE("accented capitals are lowercased") {
  CHECK(normalize("ÈCCO Città", {}, false) == TokenSeq{"ècco", "città"});
}

TEST_CASE("normalize is idempotent without the stemmer") {
  std::mt19937_64 rng(3);
  const std::vector<std::string> pool = {"Il", "gatto", "è", "SUL", "tavolo", "42", "perché?", "città,", "--", "ok"};
  const auto sw = default_stopwords();
  for (int i = 0; i < 200; ++i) {
    std::string text;
    for (int w = 0; w < 8; ++w) text += pool[rng() % pool.size()] + " ";
    const auto once = normalize(text, sw, false);
    std::string joined;
    for (const auto& t : once) joined += t + " ";
    CHECK(normalize(joined, sw, false) == once);
  }
}

TEST_CASE("stemmer matches the reference vocabulary") {
  std::ifstream in(std::string(CONVTAG_TEST_DATA) + "/italian_stems.tsv");
  REQUIRE(in.good());
  std::string line;
  std::size_t n = 0, bad = 0;
  while (std::getline(in, line)) {
    const auto tab = line.find('\t');
    if (tab == std::string::npos) continue;
    const auto word = line.substr(0, tab), stem = line.substr(tab + 1);
    ++n;
    if (stem_italian(word) != stem) {
      ++bad;
      INFO(word << " -> " << stem_italian(word) << ", expected " << stem);
      CHECK(false);
    }
  }
  CHECK(n > 100);
  CHECK(bad == 0);
}

TEST_CASE("stemmer examples") {
  CHECK(stem_italian("abbandonata") == "abbandon");
  CHECK(stem_italian("pensionato") == "pension");
  CHECK(stem_italian("x") == "x");
}

TEST_CASE("document frequency threshold is inclusive") {
  const std::vector<TokenSeq> docs = {{"gatto", "nero"}, {"gatto"}, {"cane"}, {"topo"}};
  auto has = [](const NgramVocab& v, const Ngram& g) {
    return std::find(v.entries.begin(), v.entries.end(), g) != v.entries.end();
  };
  CHECK(has(extract_ngram_vocab(docs, 1, 0.5), {"gatto"}));
  CHECK_FALSE(has(extract_ngram_vocab(docs, 1, 0.51), {"gatto"}));
}

TEST_CASE("a bigram seen once in ten documents passes a 1% threshold") {
  std::vector<TokenSeq> docs(10, TokenSeq{"salve"});
  docs[3] = {"buon", "giorno", "signora"};
  const auto v = extract_ngram_vocab(docs, 2, 0.01);
  CHECK(std::find(v.entries.begin(), v.entries.end(), Ngram{"buon", "giorno"}) != v.entries.end());
  CHECK(v.documents == 10);
}

TEST_CASE("raising min_freq never adds entries") {
  std::mt19937_64 rng(5);
  const std::vector<std::string> words = {"a", "b", "c", "d", "e"};
  std::vector<TokenSeq> docs(30);
  for (auto& d : docs)
    for (int i = 0; i < 4; ++i) d.push_back(words[rng() % words.size()]);
  for (int n = 1; n <= 3; ++n) {
    std::size_t prev = SIZE_MAX;
    for (double f = 0.05; f <= 1.0; f += 0.05) {
      const auto v = extract_ngram_vocab(docs, n, f);
      CHECK(v.size() <= prev);
      prev = v.size();
    }
  }
}

TEST_CASE("featurize uses contiguous windows") {
  NgramVocab v;
  v.n = 2;
  v.entries = {{"b", "c"}};
  v.doc_freq = {1};
  CHECK(featurize({"a", "b", "c"}, v) == FeatureVector{1});
  CHECK(featurize({}, v) == FeatureVector{0});
  NgramVocab w;
  w.n = 2;
  w.entries = {{"a", "b"}};
  w.doc_freq = {1};
  CHECK(featurize({"a", "c", "b"}, w) == FeatureVector{0});
}

TEST_CASE("featurize agrees with a brute-force window scan") {
  std::mt19937_64 rng(9);
  const std::vector<std::string> words = {"x", "y", "z"};
  for (int round = 0; round < 300; ++round) {
    const int n = 1 + static_cast<int>(rng() % 3);
    std::vector<TokenSeq> docs(6);
    for (auto& d : docs) {
      d.resize(rng() % 6);
      for (auto& t : d) t = words[rng() % 3];
    }
    const auto vocab = extract_ngram_vocab(docs, n, 1e-9);
    TokenSeq tokens(rng() % 11);
    for (auto& t : tokens) t = words[rng() % 3];
    const auto bits = featurize(tokens, vocab);
    REQUIRE(bits.size() == vocab.size());
    for (std::size_t j = 0; j < vocab.size(); ++j) {
      bool found = false;
      for (std::size_t i = 0; i + vocab.entries[j].size() <= tokens.size(); ++i)
        found = found || std::equal(vocab.entries[j].begin(), vocab.entries[j].end(), tokens.begin() + static_cast<long>(i));
      CHECK(bits[j] == (found ? 1 : 0));
    }
  }
}

TEST_CASE("vocabulary round-trips through a file") {
  const std::vector<TokenSeq> docs = {{"buon", "giorno"}, {"buon", "anno"}};
  const auto v = extract_ngram_vocab(docs, 2, 1e-9);
  const auto path = std::filesystem::temp_directory_path() / "convtag_vocab.tsv";
  save_vocab(v, path);
  const auto back = load_vocab(path);
  CHECK(back.entries == v.entries);
  CHECK(back.doc_freq == v.doc_freq);
  CHECK(back.n == 2);
  CHECK(feature_names(back) == feature_names(v));
  std::filesystem::remove(path);
}

TEST_CASE("bundled stopword file matches the built-in list") {
  const auto file = load_stopwords(std::string(CONVTAG_REPO_DATA) + "/stopwords_it.txt");
  CHECK(file == default_stopwords());
}

TEST_CASE("min_freq outside (0, 1] is rejected") {
  const std::vector<TokenSeq> docs = {{"a"}};
  CHECK_THROWS(extract_ngram_vocab(docs, 1, 0.0));
  CHECK_THROWS(extract_ngram_vocab(docs, 1, 1.5));
  CHECK_THROWS(extract_ngram_vocab(docs, 0, 0.5));
}
