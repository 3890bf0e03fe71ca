#include "convtag/seqmine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <unordered_map>

#include "convtag/error.hpp"
#include "text_io.hpp"

namespace convtag::seqtree {

std::size_t SequentialPattern::length() const noexcept {
  std::size_t n = 0;
  for (const auto& e : elements) n += e.size();
  return n;
}

std::string to_string(const SequentialPattern& pattern) {
  std::string out;
  for (std::size_t i = 0; i < pattern.elements.size(); ++i) {
    if (i) out += '>';
    const auto& el = pattern.elements[i];
    if (el.size() == 1) {
      out += el.front();
      continue;
    }
    out += '(';
    for (std::size_t j = 0; j < el.size(); ++j) {
      if (j) out += ',';
      out += el[j];
    }
    out += ')';
  }
  return out;
}

SequentialPattern make_pattern(std::vector<Itemset> elements) {
  if (elements.empty()) throw Error(ErrorCode::InvalidArgument, "empty pattern");
  for (auto& el : elements) {
    if (el.empty()) throw Error(ErrorCode::InvalidArgument, "empty itemset in pattern");
    std::sort(el.begin(), el.end());
    el.erase(std::unique(el.begin(), el.end()), el.end());
  }
  return SequentialPattern{std::move(elements)};
}

SequentialPattern parse_pattern(std::string_view text) {
  std::vector<Itemset> elements;
  for (const auto& part : detail::split(text, '>')) {
    std::string_view el = detail::trim(part);
    if (el.size() >= 2 && el.front() == '(' && el.back() == ')') el = el.substr(1, el.size() - 2);
    Itemset items;
    for (const auto& item : detail::split(el, ',')) {
      const auto t = detail::trim(item);
      if (t.empty() || t.find_first_of("()<>, ") != std::string_view::npos)
        throw ParseError("pattern '" + std::string(text) + "'", 1, "malformed item");
      items.emplace_back(t);
    }
    elements.push_back(std::move(items));
  }
  return make_pattern(std::move(elements));
}

Sequence to_sequence(std::span<const std::string> tokens) {
  Sequence seq;
  seq.reserve(tokens.size());
  for (const auto& t : tokens) seq.push_back({t});
  return seq;
}

bool contains(const Sequence& sequence, const SequentialPattern& pattern, int max_gap) {
  if (max_gap < 1) throw Error(ErrorCode::InvalidArgument, "max_gap must be at least 1");
  if (pattern.empty()) return true;
  const std::size_t n = sequence.size();
  auto covers = [&](std::size_t pos, const Itemset& el) {
    return std::includes(sequence[pos].begin(), sequence[pos].end(), el.begin(), el.end());
  };
  std::vector<std::uint8_t> ends(n, 0), next(n, 0);
  bool any = false;
  for (std::size_t q = 0; q < n; ++q) any |= (ends[q] = covers(q, pattern.elements[0]));
  const auto gap = static_cast<std::size_t>(max_gap);
  for (std::size_t i = 1; i < pattern.elements.size() && any; ++i) {
    std::fill(next.begin(), next.end(), 0);
    any = false;
    std::size_t last_end = n;  // most recent feasible end within reach
    for (std::size_t q = 0; q < n; ++q) {
      if (last_end != n && q - last_end <= gap && q > last_end && covers(q, pattern.elements[i])) {
        next[q] = 1;
        any = true;
      }
      if (ends[q]) last_end = q;
    }
    std::swap(ends, next);
  }
  return any;
}

double pattern_support(const SequentialPattern& pattern, std::span<const Sequence> sequences,
                       int max_gap) {
  if (sequences.empty()) throw Error(ErrorCode::InvalidArgument, "no sequences");
  std::size_t hits = 0;
  for (const auto& s : sequences) hits += contains(s, pattern, max_gap) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(sequences.size());
}

namespace {

using IdItemset = std::vector<int>;
using IdPattern = std::vector<IdItemset>;
using IdSequence = std::vector<IdItemset>;

std::size_t id_length(const IdPattern& p) {
  std::size_t n = 0;
  for (const auto& e : p) n += e.size();
  return n;
}

bool contains_ids(const IdSequence& seq, const IdPattern& pattern, std::size_t gap) {
  const std::size_t n = seq.size();
  auto covers = [&](std::size_t pos, const IdItemset& el) {
    return std::includes(seq[pos].begin(), seq[pos].end(), el.begin(), el.end());
  };
  std::vector<std::uint8_t> ends(n, 0), next(n, 0);
  bool any = false;
  for (std::size_t q = 0; q < n; ++q) any |= (ends[q] = covers(q, pattern[0]));
  for (std::size_t i = 1; i < pattern.size() && any; ++i) {
    std::fill(next.begin(), next.end(), 0);
    any = false;
    std::size_t last_end = n;
    for (std::size_t q = 0; q < n; ++q) {
      if (last_end != n && q > last_end && q - last_end <= gap && covers(q, pattern[i])) {
        next[q] = 1;
        any = true;
      }
      if (ends[q]) last_end = q;
    }
    std::swap(ends, next);
  }
  return any;
}

std::string encode_key(const IdPattern& p) {
  std::string key;
  for (const auto& el : p) {
    for (int id : el) {
      key += std::to_string(id);
      key += ',';
    }
    key += '>';
  }
  return key;
}

// Supports of sub-patterns, memoized across one mining call.
class SupportOracle {
 public:
  SupportOracle(const std::vector<IdSequence>& seqs, std::size_t gap) : seqs_(seqs), gap_(gap) {}

  std::size_t count(const IdPattern& p) {
    auto key = encode_key(p);
    if (const auto it = cache_.find(key); it != cache_.end()) return it->second;
    std::size_t hits = 0;
    for (const auto& s : seqs_) hits += contains_ids(s, p, gap_) ? 1 : 0;
    cache_.emplace(std::move(key), hits);
    return hits;
  }

  // Proper non-empty deletion sub-patterns, most items first so that the
  // usual witnesses (single deletions) are tried early.
  bool is_generator(const IdPattern& p, std::size_t support) {
    const std::size_t len = id_length(p);
    if (len <= 1) return true;
    std::vector<std::pair<std::size_t, int>> flat;  // (element, item)
    for (std::size_t e = 0; e < p.size(); ++e)
      for (int item : p[e]) flat.emplace_back(e, item);
    const std::uint64_t limit = std::uint64_t{1} << len;
    for (std::size_t keep = len - 1; keep >= 1; --keep) {
      // Gosper's hack: every mask with `keep` bits set, ascending.
      for (std::uint64_t mask = (std::uint64_t{1} << keep) - 1; mask < limit;) {
        IdPattern sub;
        std::size_t current = flat.size();
        for (std::size_t i = 0; i < len; ++i) {
          if (!(mask >> i & 1)) continue;
          if (flat[i].first != current) {
            sub.emplace_back();
            current = flat[i].first;
          }
          sub.back().push_back(flat[i].second);
        }
        if (count(sub) == support) return false;
        const std::uint64_t low = mask & (~mask + 1);
        const std::uint64_t ripple = mask + low;
        mask = ripple | (((mask ^ ripple) >> 2) / low);
      }
    }
    return true;
  }

 private:
  const std::vector<IdSequence>& seqs_;
  std::size_t gap_;
  std::unordered_map<std::string, std::size_t> cache_;
};

struct Interned {
  std::vector<std::string> items;  // id -> item, sorted
  std::vector<IdSequence> seqs;
};

Interned intern(std::span<const Sequence> sequences) {
  Interned out;
  for (const auto& s : sequences)
    for (const auto& el : s) out.items.insert(out.items.end(), el.begin(), el.end());
  std::sort(out.items.begin(), out.items.end());
  out.items.erase(std::unique(out.items.begin(), out.items.end()), out.items.end());
  auto id_of = [&](const std::string& item) {
    return static_cast<int>(std::lower_bound(out.items.begin(), out.items.end(), item) -
                            out.items.begin());
  };
  for (const auto& s : sequences) {
    IdSequence seq;
    for (const auto& el : s) {
      IdItemset ids;
      for (const auto& item : el) ids.push_back(id_of(item));
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      seq.push_back(std::move(ids));
    }
    out.seqs.push_back(std::move(seq));
  }
  return out;
}

// Returns nullopt if some item of the pattern is unknown to the corpus.
std::optional<IdPattern> to_ids(const SequentialPattern& p, const std::vector<std::string>& items) {
  IdPattern out;
  for (const auto& el : p.elements) {
    IdItemset ids;
    for (const auto& item : el) {
      const auto it = std::lower_bound(items.begin(), items.end(), item);
      if (it == items.end() || *it != item) return std::nullopt;
      ids.push_back(static_cast<int>(it - items.begin()));
    }
    std::sort(ids.begin(), ids.end());
    out.push_back(std::move(ids));
  }
  return out;
}

SequentialPattern from_ids(const IdPattern& p, const std::vector<std::string>& items) {
  SequentialPattern out;
  for (const auto& el : p) {
    Itemset names;
    for (int id : el) names.push_back(items[static_cast<std::size_t>(id)]);
    out.elements.push_back(std::move(names));
  }
  return out;
}

double information_gain(std::span<const double> total, std::span<const double> inside) {
  double n = 0, n_in = 0;
  std::vector<double> outside(total.size());
  for (std::size_t c = 0; c < total.size(); ++c) {
    n += total[c];
    n_in += inside[c];
    outside[c] = total[c] - inside[c];
  }
  if (n <= 0) return 0.0;
  const double n_out = n - n_in;
  return entropy(total) - (n_in / n) * entropy(inside) - (n_out / n) * entropy(outside);
}

}  // namespace

bool is_generator(const SequentialPattern& pattern, std::span<const Sequence> sequences,
                  int max_gap) {
  if (max_gap < 1) throw Error(ErrorCode::InvalidArgument, "max_gap must be at least 1");
  if (pattern.length() > 62) throw Error(ErrorCode::InvalidArgument, "pattern too long");
  const Interned data = intern(sequences);
  const auto ids = to_ids(pattern, data.items);
  if (!ids) return true;  // support 0; every sub-pattern containing the unknown item also has 0
  SupportOracle oracle(data.seqs, static_cast<std::size_t>(max_gap));
  return oracle.is_generator(*ids, oracle.count(*ids));
}

double entropy(std::span<const double> counts) {
  double n = 0;
  for (double c : counts) n += c;
  if (n <= 0) return 0.0;
  double h = 0;
  for (double c : counts)
    if (c > 0) h -= (c / n) * std::log2(c / n);
  return h;
}

double normalized_gain(std::span<const int> labels, std::span<const int> branches) {
  if (labels.size() != branches.size())
    throw Error(ErrorCode::InvalidArgument, "labels and branches differ in length");
  int classes = 0, arms = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || branches[i] < 0)
      throw Error(ErrorCode::InvalidArgument, "negative label or branch id");
    classes = std::max(classes, labels[i] + 1);
    arms = std::max(arms, branches[i] + 1);
  }
  std::vector<std::vector<double>> table(static_cast<std::size_t>(arms),
                                         std::vector<double>(static_cast<std::size_t>(classes)));
  std::vector<double> total(static_cast<std::size_t>(classes));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    table[static_cast<std::size_t>(branches[i])][static_cast<std::size_t>(labels[i])] += 1;
    total[static_cast<std::size_t>(labels[i])] += 1;
  }
  const double n = static_cast<double>(labels.size());
  double gain = entropy(total);
  int used = 0;
  for (const auto& row : table) {
    double m = 0;
    for (double c : row) m += c;
    if (m == 0) continue;
    ++used;
    gain -= (m / n) * entropy(row);
  }
  if (used < 2) throw Error(ErrorCode::InvalidArgument, "split needs at least two non-empty branches");
  return std::max(0.0, gain) / std::log2(static_cast<double>(used));
}

double pattern_score(double ng, std::size_t length, double max_ng, std::size_t max_length,
                     double weight) {
  const double rng = max_ng > 0 ? ng / max_ng : 0.0;
  const double rlen = max_length > 0 ? static_cast<double>(length) / static_cast<double>(max_length) : 0.0;
  return weight * (1.0 - rng) + (1.0 - weight) * rlen;
}

namespace {

struct PoolEntry {
  IdPattern pattern;
  double ng;
  std::size_t length;
  std::size_t count;
};

class Miner {
 public:
  Miner(const Interned& data, std::span<const int> labels, const MinerParams& params,
        MiningStats& stats)
      : data_(data),
        params_(params),
        stats_(stats),
        gap_(static_cast<std::size_t>(params.max_gap)),
        oracle_(data.seqs, gap_),
        deadline_(std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(params.max_time))) {
    int classes = 0;
    for (int l : labels) classes = std::max(classes, l + 1);
    labels_.assign(labels.begin(), labels.end());
    total_.assign(static_cast<std::size_t>(classes), 0.0);
    for (int l : labels) total_[static_cast<std::size_t>(l)] += 1;
    for (const auto& s : data.seqs)
      for (const auto& el : s)
        if (el.size() > 1) itemset_extensions_ = true;
    const double n = static_cast<double>(data.seqs.size());
    // count/n >= min_support, with slack for values like 0.01 * 400.
    min_count_ = static_cast<std::size_t>(std::max(1.0, std::ceil(params.min_support * n - 1e-9)));
  }

  void run() {
    // Single-item roots.
    std::vector<Projection> roots(data_.items.size());
    for (std::size_t s = 0; s < data_.seqs.size(); ++s) {
      const auto& seq = data_.seqs[s];
      for (std::size_t q = 0; q < seq.size(); ++q)
        for (int item : seq[q]) add_end(roots[static_cast<std::size_t>(item)], s, q);
    }
    for (std::size_t item = 0; item < roots.size() && !stopped_; ++item) {
      IdPattern p{{static_cast<int>(item)}};
      visit(p, roots[item]);
    }
  }

  const std::vector<PoolEntry>& pool() const { return pool_; }

 private:
  struct Projection {
    std::vector<std::size_t> seq;
    std::vector<std::vector<std::size_t>> ends;  // ascending positions
  };

  static void add_end(Projection& proj, std::size_t s, std::size_t q) {
    if (proj.seq.empty() || proj.seq.back() != s) {
      proj.seq.push_back(s);
      proj.ends.emplace_back();
    }
    if (proj.ends.back().empty() || proj.ends.back().back() != q) proj.ends.back().push_back(q);
  }

  bool out_of_time() {
    if (!stopped_ && std::chrono::steady_clock::now() >= deadline_) {
      stopped_ = true;
      stats_.timed_out = true;
    }
    return stopped_;
  }

  void visit(IdPattern& p, const Projection& proj) {
    if (out_of_time()) return;
    ++stats_.visited;
    const std::size_t count = proj.seq.size();
    if (count < min_count_) return;
    ++stats_.frequent;

    std::vector<double> inside(total_.size(), 0.0);
    for (std::size_t s : proj.seq) inside[static_cast<std::size_t>(labels_[s])] += 1;
    const std::size_t len = id_length(p);
    const double ng = std::max(0.0, information_gain(total_, inside));

    if (oracle_.is_generator(p, count)) {
      ++stats_.generators;
      pool_.push_back({p, ng, len, count});
      max_len_ = std::max(max_len_, len);
      if (best_ng_upto_.size() <= len) best_ng_upto_.resize(len + 1, -1.0);
      for (std::size_t l = len; l < best_ng_upto_.size(); ++l)
        best_ng_upto_[l] = std::max(best_ng_upto_[l], ng);
    }

    if (len >= params_.max_pattern_length) return;
    if (params_.use_ig_pruning && can_prune(proj, inside, len)) {
      ++stats_.pruned;
      return;
    }
    extend(p, proj);
  }

  double best_ng_upto(std::size_t len) const {
    if (best_ng_upto_.empty()) return -1.0;
    return best_ng_upto_[std::min(len, best_ng_upto_.size() - 1)];
  }

  // A subtree may be skipped only when some pool pattern beats every
  // descendant for every final (max_ng, max_len), and no descendant could
  // raise max_ng or max_len.
  bool can_prune(const Projection& proj, std::span<const double> inside, std::size_t len) const {
    // Descendants cover a subset of p's instances; gain is convex in the
    // covered class counts, so the box corners bound it.
    const std::size_t k = total_.size();
    double bound = 0.0;
    std::vector<double> corner(k);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      for (std::size_t c = 0; c < k; ++c) corner[c] = (mask >> c & 1) ? inside[c] : 0.0;
      bound = std::max(bound, information_gain(total_, corner));
    }
    const double w = params_.pattern_weight;

    bool dominated;
    if (w >= 1.0) {
      dominated = best_ng_upto(max_len_) > bound;
    } else {
      dominated = best_ng_upto(len) >= bound || (w > 0 && best_ng_upto(len + 1) > bound);
      if (dominated) {
        std::size_t tail = 0;
        for (std::size_t i = 0; i < proj.seq.size(); ++i) {
          const auto& seq = data_.seqs[proj.seq[i]];
          std::size_t items = 0;
          for (std::size_t q = proj.ends[i].front(); q < seq.size(); ++q) items += seq[q].size();
          tail = std::max(tail, items);
        }
        const std::size_t longest = std::min(params_.max_pattern_length, len + tail);
        dominated = longest <= max_len_;
      }
    }
    return dominated;
  }

  void extend(IdPattern& p, const Projection& proj) {
    const std::size_t n_items = data_.items.size();
    std::vector<Projection> next(n_items);
    std::vector<int> touched;
    auto touch = [&](int item) {
      if (next[static_cast<std::size_t>(item)].seq.empty()) touched.push_back(item);
    };

    if (itemset_extensions_) {
      const int last = p.back().back();
      for (std::size_t i = 0; i < proj.seq.size(); ++i) {
        const auto& seq = data_.seqs[proj.seq[i]];
        for (std::size_t e : proj.ends[i])
          for (int item : seq[e])
            if (item > last) {
              touch(item);
              add_end(next[static_cast<std::size_t>(item)], proj.seq[i], e);
            }
      }
      std::sort(touched.begin(), touched.end());
      for (int item : touched) {
        if (stopped_) break;
        p.back().push_back(item);
        visit(p, next[static_cast<std::size_t>(item)]);
        p.back().pop_back();
      }
      for (int item : touched) next[static_cast<std::size_t>(item)] = {};
      touched.clear();
    }

    for (std::size_t i = 0; i < proj.seq.size(); ++i) {
      const auto& seq = data_.seqs[proj.seq[i]];
      std::size_t from = 0;
      for (std::size_t e : proj.ends[i]) {
        const std::size_t lo = std::max(from, e + 1);
        const std::size_t hi = std::min(seq.size(), e + gap_ + 1);
        for (std::size_t q = lo; q < hi; ++q)
          for (int item : seq[q]) {
            touch(item);
            add_end(next[static_cast<std::size_t>(item)], proj.seq[i], q);
          }
        from = std::max(from, hi);
      }
    }
    std::sort(touched.begin(), touched.end());
    for (int item : touched) {
      if (stopped_) break;
      p.push_back({item});
      visit(p, next[static_cast<std::size_t>(item)]);
      p.pop_back();
    }
  }

  const Interned& data_;
  const MinerParams& params_;
  MiningStats& stats_;
  std::size_t gap_;
  SupportOracle oracle_;
  std::chrono::steady_clock::time_point deadline_;
  std::vector<int> labels_;
  std::vector<double> total_;
  bool itemset_extensions_ = false;
  std::size_t min_count_ = 1;
  bool stopped_ = false;

  std::vector<PoolEntry> pool_;
  std::size_t max_len_ = 0;
  std::vector<double> best_ng_upto_;  // [len] -> max NG over pool entries of length <= len
};

}  // namespace

std::optional<MinedPattern> mine_best_pattern(std::span<const Sequence> sequences,
                                              std::span<const int> labels,
                                              const MinerParams& params, MiningStats* stats) {
  if (sequences.size() != labels.size())
    throw Error(ErrorCode::InvalidArgument, "sequences and labels differ in length");
  if (params.max_gap < 1) throw Error(ErrorCode::InvalidArgument, "max_gap must be at least 1");
  if (params.pattern_weight < 0 || params.pattern_weight > 1)
    throw Error(ErrorCode::InvalidArgument, "pattern weight must lie in [0,1]");
  if (params.max_pattern_length < 1 || params.max_pattern_length > 62)
    throw Error(ErrorCode::InvalidArgument, "max pattern length must lie in [1,62]");
  for (int l : labels)
    if (l < 0) throw Error(ErrorCode::InvalidArgument, "negative class label");
  if (sequences.empty()) return std::nullopt;

  MiningStats local;
  const Interned data = intern(sequences);
  Miner miner(data, labels, params, stats ? *stats : local);
  miner.run();

  const auto& pool = miner.pool();
  double max_ng = 0;
  std::size_t max_len = 0;
  for (const auto& e : pool) {
    max_ng = std::max(max_ng, e.ng);
    max_len = std::max(max_len, e.length);
  }
  if (max_ng <= 0) return std::nullopt;

  const PoolEntry* best = nullptr;
  double best_score = 0;
  for (const auto& e : pool) {
    const double s = pattern_score(e.ng, e.length, max_ng, max_len, params.pattern_weight);
    if (!best || s < best_score - 1e-12 ||
        (std::abs(s - best_score) <= 1e-12 && e.pattern < best->pattern)) {
      best = &e;
      best_score = s;
    }
  }
  return MinedPattern{from_ids(best->pattern, data.items), best->ng,
                      static_cast<double>(best->count) / static_cast<double>(sequences.size()),
                      best_score};
}

}  // namespace convtag::seqtree
