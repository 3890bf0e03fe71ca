#include "convtag/evaluate.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "convtag/error.hpp"

namespace convtag::evaluate {

ConfusionMatrix confusion(std::span<const std::uint8_t> predictions, std::span<const std::uint8_t> truth) {
  if (predictions.size() != truth.size())
    throw Error(ErrorCode::InvalidArgument, "predictions and truth differ in length");
  if (truth.empty()) throw Error(ErrorCode::InvalidArgument, "nothing to evaluate");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool p = predictions[i] != 0, t = truth[i] != 0;
    if (p && t) ++cm.tp;
    else if (p) ++cm.fp;
    else if (t) ++cm.fn;
    else ++cm.tn;
  }
  return cm;
}

namespace {

std::optional<double> ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

MetricRow metrics(const ConfusionMatrix& cm, std::string keyword) {
  MetricRow row;
  row.keyword = std::move(keyword);
  row.accuracy = ratio(cm.tp + cm.tn, cm.total());
  row.precision = ratio(cm.tp, cm.tp + cm.fp);
  row.recall = ratio(cm.tp, cm.tp + cm.fn);
  row.tnr = ratio(cm.tn, cm.tn + cm.fp);
  return row;
}

AverageRow average(std::span<const MetricRow> rows) {
  AverageRow avg;
  avg.row.keyword = "average";
  std::optional<double> MetricRow::*fields[4] = {&MetricRow::accuracy, &MetricRow::precision,
                                                 &MetricRow::recall, &MetricRow::tnr};
  for (int f = 0; f < 4; ++f) {
    double sum = 0;
    std::size_t n = 0;
    for (const auto& r : rows) {
      if (const auto& v = r.*fields[f]) {
        sum += *v;
        ++n;
      } else {
        ++avg.excluded[f];
      }
    }
    if (n > 0) avg.row.*fields[f] = sum / static_cast<double>(n);
  }
  return avg;
}

BoolColumn hybrid_or(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidArgument, "hybrid inputs differ in length");
  BoolColumn out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] || b[i]) ? 1 : 0;
  return out;
}

std::size_t edit_distance(std::span<const std::string> reference, std::span<const std::string> hypothesis) {
  std::vector<std::size_t> prev(hypothesis.size() + 1), cur(hypothesis.size() + 1);
  for (std::size_t j = 0; j <= hypothesis.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= reference.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= hypothesis.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (reference[i - 1] == hypothesis[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[hypothesis.size()];
}

WerCounts wer_counts(std::span<const std::string> reference, std::span<const std::string> hypothesis,
                     const std::unordered_set<std::string>* filter) {
  auto keep = [&](std::span<const std::string> words) {
    std::vector<std::string> out;
    for (const auto& w : words)
      if (!filter || !filter->count(w)) out.push_back(w);
    return out;
  };
  const auto ref = keep(reference);
  const auto hyp = keep(hypothesis);
  if (ref.empty()) throw Error(ErrorCode::InvalidArgument, "reference is empty after filtering");
  return {edit_distance(ref, hyp), ref.size()};
}

double wer(std::span<const std::string> reference, std::span<const std::string> hypothesis,
           const std::unordered_set<std::string>* filter) {
  const auto c = wer_counts(reference, hypothesis, filter);
  return static_cast<double>(c.edits) / static_cast<double>(c.reference_words);
}

std::vector<std::string> split_words(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string format_metric(const std::optional<double>& v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", *v);
  return buf;
}

namespace {

std::string avg_cell(const AverageRow& avg, int field, const std::optional<double>& v) {
  return format_metric(v) + (avg.excluded[field] > 0 && v ? "*" : "");
}

}  // namespace

void write_table(std::span<const MetricRow> rows, std::ostream& out) {
  const AverageRow avg = average(rows);
  std::size_t width = std::string("keyword").size();
  for (const auto& r : rows) width = std::max(width, r.keyword.size());
  width = std::max(width, avg.row.keyword.size());
  auto line = [&](const std::string& k, const std::string& a, const std::string& p, const std::string& r,
                  const std::string& t) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-*s  %10s  %10s  %10s  %10s\n", static_cast<int>(width), k.c_str(),
                  a.c_str(), p.c_str(), r.c_str(), t.c_str());
    out << buf;
  };
  line("keyword", "accuracy", "precision", "recall", "tnr");
  for (const auto& r : rows)
    line(r.keyword, format_metric(r.accuracy), format_metric(r.precision), format_metric(r.recall),
         format_metric(r.tnr));
  line(avg.row.keyword, avg_cell(avg, 0, avg.row.accuracy), avg_cell(avg, 1, avg.row.precision),
       avg_cell(avg, 2, avg.row.recall), avg_cell(avg, 3, avg.row.tnr));
  if (avg.excluded[0] + avg.excluded[1] + avg.excluded[2] + avg.excluded[3] > 0)
    out << "* average over defined values only\n";
}

void write_tsv(std::span<const MetricRow> rows, std::ostream& out) {
  const AverageRow avg = average(rows);
  out << "keyword\taccuracy\tprecision\trecall\ttnr\n";
  auto emit = [&](const MetricRow& r) {
    out << r.keyword << '\t' << format_metric(r.accuracy) << '\t' << format_metric(r.precision) << '\t'
        << format_metric(r.recall) << '\t' << format_metric(r.tnr) << '\n';
  };
  for (const auto& r : rows) emit(r);
  emit(avg.row);
}

}  // namespace convtag::evaluate
