#pragma once

// Confusion matrices, per-keyword metrics, the hybrid OR combiner and word
// error rate.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

namespace convtag::evaluate {

using BoolColumn = std::vector<std::uint8_t>;

struct ConfusionMatrix {
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;

  std::size_t total() const noexcept { return tp + fp + fn + tn; }
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

// Throws on length mismatch or empty input.
ConfusionMatrix confusion(std::span<const std::uint8_t> predictions, std::span<const std::uint8_t> truth);

// Undefined (zero denominator) values are empty.
struct MetricRow {
  std::string keyword;
  std::optional<double> accuracy, precision, recall, tnr;
};

MetricRow metrics(const ConfusionMatrix& cm, std::string keyword = {});

// Column-wise mean over defined values; a column with no defined value stays
// undefined. `excluded` counts skipped cells per metric (acc, prec, rec, tnr).
struct AverageRow {
  MetricRow row;
  std::size_t excluded[4] = {0, 0, 0, 0};
};
AverageRow average(std::span<const MetricRow> rows);

BoolColumn hybrid_or(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

// Unit-cost edit distance between token sequences.
std::size_t edit_distance(std::span<const std::string> reference, std::span<const std::string> hypothesis);

struct WerCounts {
  std::size_t edits = 0;
  std::size_t reference_words = 0;
};

// Filter words are removed from both sides first. Throws if the filtered
// reference is empty.
WerCounts wer_counts(std::span<const std::string> reference, std::span<const std::string> hypothesis,
                     const std::unordered_set<std::string>* filter = nullptr);
double wer(std::span<const std::string> reference, std::span<const std::string> hypothesis,
           const std::unordered_set<std::string>* filter = nullptr);

// Whitespace tokenization, as used for transcripts.
std::vector<std::string> split_words(const std::string& text);

// "-" for undefined, otherwise fixed with 4 decimals.
std::string format_metric(const std::optional<double>& v);

// Aligned table with a trailing average row; '*' marks averages that
// skipped undefined cells.
void write_table(std::span<const MetricRow> rows, std::ostream& out);
// keyword<TAB>accuracy<TAB>precision<TAB>recall<TAB>tnr, header first,
// average row last.
void write_tsv(std::span<const MetricRow> rows, std::ostream& out);

}  // namespace convtag::evaluate
