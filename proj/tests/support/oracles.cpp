#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>

#include "convtag/error.hpp"

namespace oracle {

using convtag::regex::Ast;

// ---------------------------------------------------------------------------
// regex

namespace {

using Cont = std::function<bool(std::size_t)>;

bool m(const Ast& a, const std::string& s, std::size_t i, const Cont& k) {
  switch (a.kind) {
    case Ast::Kind::Literal:
      return i < s.size() && static_cast<char32_t>(static_cast<unsigned char>(s[i])) == a.ch && k(i + 1);
    case Ast::Kind::Dot:
      return i < s.size() && s[i] != '\n' && k(i + 1);
    case Ast::Kind::Group:
      return m(a.children[0], s, i, k);
    case Ast::Kind::Alternation:
      for (const auto& c : a.children)
        if (m(c, s, i, k)) return true;
      return false;
    case Ast::Kind::Concat: {
      std::function<bool(std::size_t, std::size_t)> step = [&](std::size_t idx, std::size_t pos) -> bool {
        if (idx == a.children.size()) return k(pos);
        return m(a.children[idx], s, pos, [&](std::size_t p) { return step(idx + 1, p); });
      };
      return step(0, i);
    }
    case Ast::Kind::Optional:
      return m(a.children[0], s, i, k) || k(i);
    case Ast::Kind::Star: {
      // Each extra iteration must consume input.
      std::function<bool(std::size_t)> loop = [&](std::size_t pos) -> bool {
        if (k(pos)) return true;
        return m(a.children[0], s, pos, [&](std::size_t p) { return p > pos && loop(p); });
      };
      return loop(i);
    }
    case Ast::Kind::Plus: {
      std::function<bool(std::size_t)> loop = [&](std::size_t pos) -> bool {
        if (k(pos)) return true;
        return m(a.children[0], s, pos, [&](std::size_t p) { return p > pos && loop(p); });
      };
      return m(a.children[0], s, i, [&](std::size_t p) { return loop(p); });
    }
  }
  return false;
}

}  // namespace

bool ast_matches(const Ast& ast, const std::string& text) {
  return m(ast, text, 0, [&](std::size_t p) { return p == text.size(); });
}

std::vector<std::string> all_strings(const std::string& alphabet, std::size_t max_len) {
  std::vector<std::string> out{""};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (char c : alphabet) out.push_back(out[i] + c);
    begin = end;
  }
  return out;
}

namespace {

std::map<std::vector<bool>, std::string> residual_classes(const Ast& ast, const std::string& alphabet,
                                                          std::size_t suffix_len) {
  const auto suffixes = all_strings(alphabet, suffix_len);
  auto signature = [&](const std::string& prefix) {
    std::vector<bool> sig;
    sig.reserve(suffixes.size());
    for (const auto& s : suffixes) sig.push_back(ast_matches(ast, prefix + s));
    return sig;
  };
  std::map<std::vector<bool>, std::string> classes;
  std::vector<std::string> frontier{""};
  classes.emplace(signature(""), "");
  while (!frontier.empty()) {
    std::vector<std::string> next;
    for (const auto& rep : frontier)
      for (char c : alphabet) {
        const auto w = rep + c;
        if (classes.emplace(signature(w), w).second) next.push_back(w);
      }
    frontier = std::move(next);
  }
  return classes;
}

}  // namespace

std::size_t myhill_nerode_states(const Ast& ast, const std::string& alphabet, std::size_t min_suffix_len,
                                 bool count_dead) {
  // Two distinct states of an n-state automaton are told apart by some word
  // shorter than n, so the suffix bound is raised until it reaches the
  // class count.
  // Every live state also has an accepting continuation no longer than the
  // number of literal and dot positions.
  std::function<std::size_t(const Ast&)> positions = [&](const Ast& a) -> std::size_t {
    if (a.kind == Ast::Kind::Literal || a.kind == Ast::Kind::Dot) return 1;
    std::size_t n = 0;
    for (const auto& c : a.children) n += positions(c);
    return n;
  };
  std::size_t k = std::max(min_suffix_len, positions(ast));
  auto classes = residual_classes(ast, alphabet, k);
  while (k < classes.size()) {
    k = classes.size();
    classes = residual_classes(ast, alphabet, k);
  }
  std::size_t n = classes.size();
  const std::size_t width = all_strings(alphabet, k).size();
  if (!count_dead && classes.count(std::vector<bool>(width, false))) --n;
  return n;
}

std::string random_regex(std::mt19937_64& rng, const std::string& letters, std::size_t max_len) {
  const std::string symbols = letters + letters + ".|*+?()";
  std::uniform_int_distribution<std::size_t> len_dist(1, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, symbols.size() - 1);
  for (;;) {
    std::string p;
    const auto n = len_dist(rng);
    for (std::size_t i = 0; i < n; ++i) p += symbols[pick(rng)];
    try {
      (void)convtag::regex::parse_regex(p);
      return p;
    } catch (const convtag::Error&) {
    }
  }
}

// ---------------------------------------------------------------------------
// sequences

namespace {

bool subset_of(const std::vector<std::string>& small, const std::vector<std::string>& big) {
  for (const auto& x : small)
    if (std::find(big.begin(), big.end(), x) == big.end()) return false;
  return true;
}

bool embed(const Sequence& seq, const SequentialPattern& p, std::size_t elem, std::size_t prev, int gap) {
  if (elem == p.elements.size()) return true;
  for (std::size_t pos = 0; pos < seq.size(); ++pos) {
    if (elem > 0 && (pos <= prev || pos - prev > static_cast<std::size_t>(gap))) continue;
    if (subset_of(p.elements[elem], seq[pos]) && embed(seq, p, elem + 1, pos, gap)) return true;
  }
  return false;
}

std::size_t item_count(const SequentialPattern& p) {
  std::size_t n = 0;
  for (const auto& e : p.elements) n += e.size();
  return n;
}

}  // namespace

bool contains(const Sequence& seq, const SequentialPattern& p, int max_gap) {
  return !p.elements.empty() && embed(seq, p, 0, 0, max_gap);
}

std::size_t support_count(const SequentialPattern& p, const std::vector<Sequence>& seqs, int max_gap) {
  std::size_t n = 0;
  for (const auto& s : seqs) n += oracle::contains(s, p, max_gap) ? 1 : 0;
  return n;
}

bool is_generator(const SequentialPattern& p, const std::vector<Sequence>& seqs, int max_gap) {
  // Flatten items, try every non-empty proper subset of them.
  std::vector<std::pair<std::size_t, std::string>> items;
  for (std::size_t e = 0; e < p.elements.size(); ++e)
    for (const auto& it : p.elements[e]) items.emplace_back(e, it);
  const std::size_t n = items.size();
  const auto sup = support_count(p, seqs, max_gap);
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
    SequentialPattern sub;
    std::size_t cur = static_cast<std::size_t>(-1);
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) continue;
      if (items[i].first != cur) {
        sub.elements.emplace_back();
        cur = items[i].first;
      }
      sub.elements.back().push_back(items[i].second);
    }
    if (support_count(sub, seqs, max_gap) == sup) return false;
  }
  return true;
}

std::vector<SequentialPattern> occurring_patterns(const std::vector<Sequence>& seqs, int max_gap,
                                                  std::size_t max_len) {
  std::set<SequentialPattern> found;
  for (const auto& seq : seqs) {
    // Walk chains of positions respecting the gap, choosing a non-empty
    // subset of each itemset.
    std::function<void(std::size_t, SequentialPattern&)> grow = [&](std::size_t last, SequentialPattern& cur) {
      for (std::size_t pos = last + 1; pos < seq.size() && pos - last <= static_cast<std::size_t>(max_gap); ++pos) {
        const auto& is = seq[pos];
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << is.size()); ++mask) {
          std::vector<std::string> items;
          for (std::size_t i = 0; i < is.size(); ++i)
            if (mask >> i & 1) items.push_back(is[i]);
          if (item_count(cur) + items.size() > max_len) continue;
          cur.elements.push_back(items);
          found.insert(cur);
          grow(pos, cur);
          cur.elements.pop_back();
        }
      }
    };
    for (std::size_t start = 0; start < seq.size(); ++start) {
      const auto& is = seq[start];
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << is.size()); ++mask) {
        SequentialPattern cur;
        cur.elements.emplace_back();
        for (std::size_t i = 0; i < is.size(); ++i)
          if (mask >> i & 1) cur.elements.back().push_back(is[i]);
        if (item_count(cur) > max_len) continue;
        found.insert(cur);
        grow(start, cur);
      }
    }
  }
  return {found.begin(), found.end()};
}

double entropy_of_counts(const std::vector<double>& counts) {
  double total = 0;
  for (double c : counts) total += c;
  if (total <= 0) return 0;
  double h = 0;
  for (double c : counts)
    if (c > 0) h -= c / total * std::log2(c / total);
  return h;
}

double normalized_gain(const std::vector<int>& labels, const std::vector<int>& branch) {
  std::map<int, std::map<int, double>> table;
  std::map<int, double> overall;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    table[branch[i]][labels[i]] += 1;
    overall[labels[i]] += 1;
  }
  if (table.size() < 2) return 0;
  auto h = [](const std::map<int, double>& c) {
    std::vector<double> v;
    for (const auto& [_, x] : c) v.push_back(x);
    return entropy_of_counts(v);
  };
  double cond = 0;
  for (const auto& [_, c] : table) {
    double n = 0;
    for (const auto& [__, x] : c) n += x;
    cond += n / static_cast<double>(labels.size()) * h(c);
  }
  return (h(overall) - cond) / std::log2(static_cast<double>(table.size()));
}

std::optional<BestPattern> exhaustive_best_pattern(const std::vector<Sequence>& seqs, const std::vector<int>& labels,
                                                   const convtag::seqtree::MinerParams& params) {
  const double n = static_cast<double>(seqs.size());
  struct Entry {
    SequentialPattern p;
    double ng;
    std::size_t len;
  };
  std::vector<Entry> pool;
  for (const auto& p : occurring_patterns(seqs, params.max_gap, params.max_pattern_length)) {
    const auto sup = support_count(p, seqs, params.max_gap);
    if (static_cast<double>(sup) / n < params.min_support - 1e-12) continue;
    if (!is_generator(p, seqs, params.max_gap)) continue;
    std::vector<int> branch;
    for (const auto& s : seqs) branch.push_back(oracle::contains(s, p, params.max_gap) ? 1 : 0);
    pool.push_back({p, normalized_gain(labels, branch), item_count(p)});
  }
  double max_ng = 0;
  std::size_t max_len = 0;
  for (const auto& e : pool) {
    max_ng = std::max(max_ng, e.ng);
    max_len = std::max(max_len, e.len);
  }
  if (max_ng <= 0) return std::nullopt;
  const double w = params.pattern_weight;
  std::optional<BestPattern> best;
  for (const auto& e : pool) {
    const double score = w * (1 - e.ng / max_ng) + (1 - w) * static_cast<double>(e.len) / static_cast<double>(max_len);
    if (!best || score < best->score - 1e-12 || (std::abs(score - best->score) <= 1e-12 && e.p < best->pattern))
      best = BestPattern{e.p, score, e.ng};
  }
  return best;
}

// ---------------------------------------------------------------------------
// CFS

double su(const std::vector<std::uint8_t>& x, const std::vector<std::uint8_t>& y) {
  double cx[2] = {0, 0}, cy[2] = {0, 0}, cxy[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < x.size(); ++i) {
    cx[x[i]] += 1;
    cy[y[i]] += 1;
    cxy[2 * x[i] + y[i]] += 1;
  }
  const double hx = entropy_of_counts({cx[0], cx[1]});
  const double hy = entropy_of_counts({cy[0], cy[1]});
  const double hxy = entropy_of_counts({cxy[0], cxy[1], cxy[2], cxy[3]});
  if (hx + hy <= 0) return 1;  // both constant
  if (hx <= 0 || hy <= 0) return 0;
  return 2 * (hx + hy - hxy) / (hx + hy);
}

double merit(const std::vector<std::vector<std::uint8_t>>& columns, const std::vector<std::uint8_t>& labels,
             const std::vector<std::size_t>& subset) {
  const double k = static_cast<double>(subset.size());
  if (subset.empty()) return 0;
  double rcf = 0, rff = 0;
  for (auto f : subset) rcf += su(columns[f], labels);
  for (std::size_t i = 0; i < subset.size(); ++i)
    for (std::size_t j = i + 1; j < subset.size(); ++j) rff += su(columns[subset[i]], columns[subset[j]]);
  const double denom = std::sqrt(k + 2 * rff);
  return denom > 0 ? rcf / denom : 0;
}

double exhaustive_best_merit(const std::vector<std::vector<std::uint8_t>>& columns,
                             const std::vector<std::uint8_t>& labels) {
  double best = 0;
  const std::size_t n = columns.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) subset.push_back(i);
    best = std::max(best, merit(columns, labels, subset));
  }
  return best;
}

// ---------------------------------------------------------------------------
// WER

std::size_t recursive_edit_distance(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  // Top-down over the recurrence, memoized so that length-6 inputs stay cheap.
  std::vector<std::vector<int>> memo(a.size() + 1, std::vector<int>(b.size() + 1, -1));
  std::function<std::size_t(std::size_t, std::size_t)> d = [&](std::size_t i, std::size_t j) -> std::size_t {
    if (i == a.size()) return b.size() - j;
    if (j == b.size()) return a.size() - i;
    if (memo[i][j] >= 0) return static_cast<std::size_t>(memo[i][j]);
    const std::size_t sub = d(i + 1, j + 1) + (a[i] == b[j] ? 0 : 1);
    const auto r = std::min({sub, d(i + 1, j) + 1, d(i, j + 1) + 1});
    memo[i][j] = static_cast<int>(r);
    return r;
  };
  return d(0, 0);
}

// ---------------------------------------------------------------------------

std::vector<Sequence> random_sequences(std::mt19937_64& rng, std::size_t max_count, std::size_t max_len,
                                       const std::vector<std::string>& alphabet, std::size_t max_itemset) {
  std::uniform_int_distribution<std::size_t> count(2, max_count), len(1, max_len), size(1, max_itemset),
      letter(0, alphabet.size() - 1);
  std::vector<Sequence> out(count(rng));
  for (auto& s : out) {
    s.resize(len(rng));
    for (auto& is : s) {
      std::set<std::string> items;
      const auto k = size(rng);
      while (items.size() < k) items.insert(alphabet[letter(rng)]);
      is.assign(items.begin(), items.end());
    }
  }
  return out;
}

}  // namespace oracle
