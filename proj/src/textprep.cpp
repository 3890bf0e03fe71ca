#include "convtag/textprep.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "convtag/error.hpp"
#include "convtag/utf8.hpp"
#include "text_io.hpp"

namespace convtag::textprep {

StopwordSet default_stopwords() {
  const auto& words = bundled_stopword_list();
  return StopwordSet(words.begin(), words.end());
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  StopwordSet out;
  std::string line;
  while (std::getline(in, line)) {
    const auto word = detail::trim(line);
    if (!word.empty()) out.insert(utf8::to_lower(word));
  }
  return out;
}

TokenSeq normalize(std::string_view text, const StopwordSet& stopwords, bool use_stemmer) {
  TokenSeq out;
  std::u32string current;
  auto flush = [&] {
    if (current.empty()) return;
    std::string word = utf8::encode(current);
    current.clear();
    if (stopwords.count(word)) return;
    out.push_back(use_stemmer ? stem_italian(word) : std::move(word));
    if (out.back().empty()) out.pop_back();
  };
  for (char32_t cp : utf8::decode(text)) {
    if (utf8::is_alpha(cp))
      current.push_back(utf8::to_lower(cp));
    else
      flush();
  }
  flush();
  return out;
}

std::string ngram_name(const Ngram& gram) {
  std::string out;
  for (std::size_t i = 0; i < gram.size(); ++i) {
    if (i) out.push_back(' ');
    out += gram[i];
  }
  return out;
}

NgramVocab extract_ngram_vocab(std::span<const TokenSeq> docs, int n, double min_freq) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "ngram order must be at least 1");
  if (!(min_freq > 0.0 && min_freq <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "min_freq must lie in (0, 1]");
  if (docs.empty()) throw Error(ErrorCode::InvalidArgument, "no training sequences");

  const auto order = static_cast<std::size_t>(n);
  std::map<Ngram, std::size_t> counts;
  for (const auto& doc : docs) {
    std::set<Ngram> present;
    for (std::size_t i = 0; i + order <= doc.size(); ++i)
      present.emplace(doc.begin() + static_cast<std::ptrdiff_t>(i),
                      doc.begin() + static_cast<std::ptrdiff_t>(i + order));
    for (auto& g : present) ++counts[g];
  }

  NgramVocab vocab;
  vocab.n = n;
  vocab.min_freq = min_freq;
  vocab.documents = docs.size();
  // Tolerance absorbs rounding at exact boundaries (2 of 4 at 0.5).
  const double needed = min_freq * static_cast<double>(docs.size());
  for (auto& [gram, count] : counts) {
    if (static_cast<double>(count) + 1e-9 >= needed) {
      vocab.entries.push_back(gram);
      vocab.doc_freq.push_back(count);
    }
  }
  return vocab;
}

FeatureVector featurize(const TokenSeq& tokens, const NgramVocab& vocab) {
  FeatureVector bits(vocab.size(), 0);
  const auto order = static_cast<std::size_t>(vocab.n);
  for (std::size_t i = 0; i + order <= tokens.size(); ++i) {
    const Ngram gram(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                     tokens.begin() + static_cast<std::ptrdiff_t>(i + order));
    const auto it = std::lower_bound(vocab.entries.begin(), vocab.entries.end(), gram);
    if (it != vocab.entries.end() && *it == gram) bits[static_cast<std::size_t>(it - vocab.entries.begin())] = 1;
  }
  return bits;
}

std::vector<std::string> feature_names(const NgramVocab& vocab) {
  std::vector<std::string> out;
  out.reserve(vocab.size());
  for (const auto& g : vocab.entries) out.push_back(ngram_name(g));
  return out;
}

void save_vocab(const NgramVocab& vocab, const std::filesystem::path& path) {
  auto out = detail::open_output(path);
  out << vocab.n << '\t' << detail::format_double(vocab.min_freq) << '\t' << vocab.documents
      << '\n';
  for (std::size_t i = 0; i < vocab.size(); ++i)
    out << ngram_name(vocab.entries[i]) << '\t' << vocab.doc_freq[i] << '\n';
}

NgramVocab load_vocab(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  const std::string source = path.string();
  std::string line;
  if (!std::getline(in, line)) throw ParseError(source, 1, "missing vocabulary header");
  detail::strip_cr(line);
  const auto head = detail::split(line, '\t');
  NgramVocab vocab;
  if (head.size() != 3 || !detail::parse_number(head[0], vocab.n) ||
      !detail::parse_number(head[1], vocab.min_freq) ||
      !detail::parse_number(head[2], vocab.documents))
    throw ParseError(source, 1, "vocabulary header must be n, min_freq, documents");
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    detail::strip_cr(line);
    if (line.empty()) continue;
    const auto fields = detail::split(line, '\t');
    std::size_t df = 0;
    if (fields.size() != 2 || !detail::parse_number(fields[1], df))
      throw ParseError(source, lineno, "expected ngram<TAB>doc_freq");
    auto gram = detail::split(fields[0], ' ');
    if (gram.size() != static_cast<std::size_t>(vocab.n))
      throw ParseError(source, lineno, "ngram has the wrong order");
    vocab.entries.push_back(std::move(gram));
    vocab.doc_freq.push_back(df);
  }
  if (!std::is_sorted(vocab.entries.begin(), vocab.entries.end()))
    throw ParseError(source, 1, "vocabulary entries are not sorted");
  return vocab;
}

}  // namespace convtag::textprep
