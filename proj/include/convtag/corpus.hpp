#pragma once

// Annotated transcript corpus, the tagging schema (keywords, atoms, modules,
// services) and the session-grouped train/test split.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace convtag::corpus {

struct Keyword {
  std::string name;
};

enum class AtomKind { RegEx, ML };
enum class Transcriber { Internal, External };
enum class Direction { Inbound, Outbound };

// A single detection strategy bound to exactly one keyword. Which payload
// fields are meaningful depends on `kind`.
struct Atom {
  std::string id;
  AtomKind kind = AtomKind::RegEx;
  std::string keyword;
  Transcriber transcriber = Transcriber::Internal;
  std::string service;

  std::string pattern;  // RegEx

  std::string model;                    // ML: model reference (file)
  std::vector<std::string> parameters;  // ML: e.g. coefficients
  std::vector<std::string> predictors;  // ML: attributes to extract
};

struct TagModule {
  std::string id;
  std::vector<std::string> atoms;  // ordered atom ids
  std::string service;
};

struct Service {
  std::string id;
  Direction direction = Direction::Outbound;
  std::vector<std::string> modules;
};

struct Schema {
  std::vector<Keyword> keywords;
  std::vector<Atom> atoms;
  std::vector<TagModule> modules;
  std::vector<Service> services;
};

struct Violation {
  std::string entity;  // offending entity id
  std::string rule;    // short rule name, e.g. "module-homogeneity"
  std::string message;
};

using ValidationReport = std::vector<Violation>;

// Lists every violated schema invariant; empty iff the schema is valid.
ValidationReport validate_schema(const Schema& schema);

// Schema persistence: one file per entity kind (keywords.tsv, atoms.tsv,
// modules.tsv, services.tsv), each line `id<TAB>field=value<TAB>...`.
Schema load_schema(const std::filesystem::path& dir);
void save_schema(const Schema& schema, const std::filesystem::path& dir);

struct Segment {
  std::string session_id;
  std::string segment_id;
  std::string text;
  std::vector<std::uint8_t> labels;  // aligned with Corpus::keywords()

  friend bool operator==(const Segment&, const Segment&) = default;
};

// Immutable after construction; the constructor enforces the invariants
// (unique segment ids, one label per keyword, non-empty session ids).
class Corpus {
 public:
  Corpus() = default;
  Corpus(std::vector<std::string> keywords, std::vector<Segment> segments);

  const std::vector<std::string>& keywords() const noexcept { return keywords_; }
  const std::vector<Segment>& segments() const noexcept { return segments_; }
  std::size_t size() const noexcept { return segments_.size(); }
  bool empty() const noexcept { return segments_.empty(); }

  std::optional<std::size_t> keyword_index(std::string_view name) const;
  bool label(std::size_t segment, std::string_view keyword) const;
  std::vector<std::uint8_t> label_column(std::size_t keyword) const;

  // Session ids in order of first appearance.
  std::vector<std::string> sessions() const;

  friend bool operator==(const Corpus&, const Corpus&) = default;

 private:
  std::vector<std::string> keywords_;
  std::vector<Segment> segments_;
};

Corpus parse_corpus(std::istream& in, const std::string& source = "<corpus>");
Corpus load_corpus(const std::filesystem::path& path);
void write_corpus(const Corpus& corpus, std::ostream& out);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

struct TrainTestSplit {
  Corpus train;
  Corpus test;
};

// Grouped stratified split: whole sessions go to one side. Sessions are
// shuffled with the seed, then each is greedily placed on the side that
// keeps the train share of segments and of every keyword's positives
// closest to `train_fraction`.
TrainTestSplit split_train_test(const Corpus& corpus, double train_fraction,
                                std::uint64_t seed);

}  // namespace convtag::corpus
