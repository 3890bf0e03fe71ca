#pragma once

// Gap-constrained sequential patterns and the generator-pattern miner that
// feeds sequential attributes of the decision tree.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace convtag::seqtree {

using Itemset = std::vector<std::string>;  // sorted, unique, non-empty
using Sequence = std::vector<Itemset>;

struct SequentialPattern {
  std::vector<Itemset> elements;

  std::size_t length() const noexcept;  // total items
  bool empty() const noexcept { return elements.empty(); }

  friend bool operator==(const SequentialPattern&, const SequentialPattern&) = default;
  friend auto operator<=>(const SequentialPattern&, const SequentialPattern&) = default;
};

// "(A,B)>D": '>' separates elements, ',' separates items, single items
// stand alone.
std::string to_string(const SequentialPattern& pattern);
SequentialPattern parse_pattern(std::string_view text);

// Every token becomes a singleton itemset.
Sequence to_sequence(std::span<const std::string> tokens);

// Sorts and dedups items; throws on empty itemsets or patterns.
SequentialPattern make_pattern(std::vector<Itemset> elements);

// True iff some embedding p1 < p2 < ... maps element i into itemset p_i with
// p_{i+1} - p_i <= max_gap.
bool contains(const Sequence& sequence, const SequentialPattern& pattern, int max_gap);
double pattern_support(const SequentialPattern& pattern, std::span<const Sequence> sequences,
                       int max_gap);
// No proper non-empty sub-pattern (item deletions) has the same support.
bool is_generator(const SequentialPattern& pattern, std::span<const Sequence> sequences,
                  int max_gap);

double entropy(std::span<const double> counts);
// InfoGain / log2(#non-empty branches). Labels and branches are small
// non-negative ids. Throws when fewer than two branches are non-empty.
double normalized_gain(std::span<const int> labels, std::span<const int> branches);

struct MinerParams {
  int max_gap = 2;
  std::size_t max_pattern_length = 20;
  double max_time = 30.0;  // seconds per call
  double min_support = 0.5;
  double pattern_weight = 0.5;
  bool use_ig_pruning = true;
};

// W*(1 - ng/max_ng) + (1-W)*len/max_len
double pattern_score(double ng, std::size_t length, double max_ng, std::size_t max_length,
                     double weight);

struct MinedPattern {
  SequentialPattern pattern;
  double normalized_gain = 0.0;
  double support = 0.0;
  double score = 0.0;
};

struct MiningStats {
  std::size_t visited = 0;
  std::size_t frequent = 0;
  std::size_t generators = 0;
  std::size_t pruned = 0;
  bool timed_out = false;
};

// Enumerates frequent generators by prefix extension and returns the one
// with the lowest score (ties: smaller pattern). None when nothing frequent
// has positive gain.
std::optional<MinedPattern> mine_best_pattern(std::span<const Sequence> sequences,
                                              std::span<const int> labels,
                                              const MinerParams& params,
                                              MiningStats* stats = nullptr);

}  // namespace convtag::seqtree
