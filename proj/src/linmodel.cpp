#include "convtag/linmodel.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <unordered_map>

#include "convtag/error.hpp"
#include "text_io.hpp"

namespace convtag::linmodel {

BitColumn FeatureMatrix::column(std::size_t feature) const {
  BitColumn col;
  col.reserve(rows.size());
  for (const auto& r : rows) col.push_back(r[feature]);
  return col;
}

void FeatureMatrix::validate() const {
  if (labels.size() != rows.size())
    throw Error(ErrorCode::InvalidArgument, "feature matrix has " + std::to_string(rows.size()) +
                                                " rows but " + std::to_string(labels.size()) +
                                                " labels");
  for (const auto& r : rows)
    if (r.size() != feature_names.size())
      throw Error(ErrorCode::InvalidArgument, "feature matrix row width mismatch");
}

// ---------------------------------------------------------------------------
// Symmetrical uncertainty

namespace {

double entropy_bits(std::span<const double> counts, double total) {
  double h = 0.0;
  for (double c : counts)
    if (c > 0.0) {
      const double p = c / total;
      h -= p * std::log2(p);
    }
  return h;
}

}  // namespace

double symmetrical_uncertainty(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y) {
  if (x.size() != y.size())
    throw Error(ErrorCode::InvalidArgument, "symmetrical uncertainty: length mismatch");
  if (x.empty()) throw Error(ErrorCode::InvalidArgument, "symmetrical uncertainty: empty columns");

  double joint[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < x.size(); ++i) joint[(x[i] ? 2 : 0) + (y[i] ? 1 : 0)] += 1.0;
  const double n = static_cast<double>(x.size());
  const double px[2] = {joint[0] + joint[1], joint[2] + joint[3]};
  const double py[2] = {joint[0] + joint[2], joint[1] + joint[3]};
  const double hx = entropy_bits(px, n);
  const double hy = entropy_bits(py, n);
  const double hxy = entropy_bits(joint, n);
  if (hx + hy == 0.0) return 1.0;
  return std::clamp(2.0 * (hx + hy - hxy) / (hx + hy), 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// CFS

namespace {

// Lazily filled SU tables over one matrix.
class CorrelationCache {
 public:
  explicit CorrelationCache(const FeatureMatrix& data) : data_(data) {
    data.validate();
    const std::size_t f = data.num_features();
    columns_.reserve(f);
    for (std::size_t j = 0; j < f; ++j) columns_.push_back(data.column(j));
    class_.assign(f, kUnset);
    pair_.assign(f * f, kUnset);
  }

  double with_class(std::size_t j) {
    if (std::isnan(class_[j])) class_[j] = symmetrical_uncertainty(columns_[j], data_.labels);
    return class_[j];
  }

  double between(std::size_t a, std::size_t b) {
    const std::size_t f = columns_.size();
    double& slot = pair_[std::min(a, b) * f + std::max(a, b)];
    if (std::isnan(slot)) slot = symmetrical_uncertainty(columns_[a], columns_[b]);
    return slot;
  }

 private:
  static constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();
  const FeatureMatrix& data_;
  std::vector<BitColumn> columns_;
  std::vector<double> class_;
  std::vector<double> pair_;
};

double merit_from_sums(std::size_t k, double sum_cf, double sum_ff) {
  if (k == 0) return 0.0;
  const double kd = static_cast<double>(k);
  const double mean_cf = sum_cf / kd;
  const double pairs = kd * (kd - 1.0) / 2.0;
  const double mean_ff = pairs > 0 ? sum_ff / pairs : 0.0;
  return kd * mean_cf / std::sqrt(kd + kd * (kd - 1.0) * mean_ff);
}

}  // namespace

double cfs_merit(std::span<const std::size_t> subset, const FeatureMatrix& data) {
  if (subset.empty()) throw Error(ErrorCode::InvalidArgument, "CFS merit of an empty subset");
  data.validate();
  for (auto j : subset)
    if (j >= data.num_features()) throw Error(ErrorCode::InvalidArgument, "feature index out of range");
  double sum_cf = 0.0, sum_ff = 0.0;
  for (std::size_t a = 0; a < subset.size(); ++a) {
    const auto col_a = data.column(subset[a]);
    sum_cf += symmetrical_uncertainty(col_a, data.labels);
    for (std::size_t b = a + 1; b < subset.size(); ++b)
      sum_ff += symmetrical_uncertainty(col_a, data.column(subset[b]));
  }
  return merit_from_sums(subset.size(), sum_cf, sum_ff);
}

double cfs_merit(const std::vector<std::string>& subset, const FeatureMatrix& data) {
  std::vector<std::size_t> idx;
  for (const auto& name : subset) {
    const auto it = std::find(data.feature_names.begin(), data.feature_names.end(), name);
    if (it == data.feature_names.end())
      throw Error(ErrorCode::InvalidArgument, "unknown feature '" + name + "'");
    idx.push_back(static_cast<std::size_t>(it - data.feature_names.begin()));
  }
  return cfs_merit(idx, data);
}

namespace {

struct SearchNode {
  std::vector<std::size_t> ranks;  // positions in name order, ascending
  double sum_cf = 0.0;
  double sum_ff = 0.0;
  double merit = 0.0;
};

// Higher merit first; equal merits prefer the lexicographically smaller set.
bool comes_before(const SearchNode& a, const SearchNode& b) {
  if (a.merit != b.merit) return a.merit > b.merit;
  return a.ranks < b.ranks;
}

}  // namespace

Selection best_first_search(const FeatureMatrix& data, const BestFirstOptions& options) {
  CorrelationCache cache(data);
  const std::size_t f = data.num_features();

  // rank r -> feature index, ordered by feature name
  std::vector<std::size_t> by_name(f);
  std::iota(by_name.begin(), by_name.end(), 0);
  std::stable_sort(by_name.begin(), by_name.end(), [&](std::size_t a, std::size_t b) {
    return data.feature_names[a] < data.feature_names[b];
  });

  std::vector<SearchNode> open{SearchNode{}};
  std::set<std::vector<std::size_t>> visited{{}};
  SearchNode best;
  std::size_t stale = 0;

  while (!open.empty() && stale < options.stale_limit) {
    const auto head = std::min_element(open.begin(), open.end(), comes_before);
    SearchNode node = std::move(*head);
    open.erase(head);

    bool improved = false;
    std::vector<std::uint8_t> member(f, 0);
    for (auto r : node.ranks) member[r] = 1;
    for (std::size_t r = 0; r < f; ++r) {
      if (member[r]) continue;
      SearchNode child;
      child.ranks = node.ranks;
      child.ranks.insert(std::upper_bound(child.ranks.begin(), child.ranks.end(), r), r);
      if (!visited.insert(child.ranks).second) continue;
      const std::size_t feat = by_name[r];
      child.sum_cf = node.sum_cf + cache.with_class(feat);
      child.sum_ff = node.sum_ff;
      for (auto other : node.ranks) child.sum_ff += cache.between(feat, by_name[other]);
      child.merit = merit_from_sums(child.ranks.size(), child.sum_cf, child.sum_ff);
      if (child.merit > best.merit) {
        best = child;
        improved = true;
      }
      open.push_back(std::move(child));
    }
    stale = improved ? 0 : stale + 1;
  }

  Selection out;
  out.merit = best.merit;
  for (auto r : best.ranks) out.features.push_back(by_name[r]);
  std::sort(out.features.begin(), out.features.end());
  return out;
}

std::vector<std::string> best_first_select(const FeatureMatrix& data,
                                           const BestFirstOptions& options) {
  const auto sel = best_first_search(data, options);
  std::vector<std::string> names;
  for (auto j : sel.features) names.push_back(data.feature_names[j]);
  std::sort(names.begin(), names.end());
  return names;
}

FeatureMatrix project(const FeatureMatrix& data, std::span<const std::size_t> features) {
  FeatureMatrix out;
  out.labels = data.labels;
  for (auto j : features) out.feature_names.push_back(data.feature_names.at(j));
  out.rows.reserve(data.rows.size());
  for (const auto& r : data.rows) {
    std::vector<std::uint8_t> row;
    row.reserve(features.size());
    for (auto j : features) row.push_back(r.at(j));
    out.rows.push_back(std::move(row));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Logistic regression

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

namespace {

// log(1 + exp(z)) without overflow
double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double linear_term(std::span<const std::uint8_t> row, std::span<const double> params) {
  double z = params[0];
  for (std::size_t j = 0; j < row.size(); ++j)
    if (row[j]) z += params[j + 1];
  return z;
}

void check_params(const FeatureMatrix& data, std::span<const double> params) {
  if (params.size() != data.num_features() + 1)
    throw Error(ErrorCode::InvalidArgument, "parameter vector must hold intercept plus one weight per feature");
}

}  // namespace

double logistic_objective(const FeatureMatrix& data, double ridge, std::span<const double> params) {
  check_params(data, params);
  double value = 0.0;
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    const double z = linear_term(data.rows[i], params);
    value += softplus(z) - (data.labels[i] ? z : 0.0);
  }
  for (std::size_t j = 1; j < params.size(); ++j) value += ridge * params[j] * params[j];
  return value;
}

std::vector<double> logistic_gradient(const FeatureMatrix& data, double ridge,
                                      std::span<const double> params) {
  check_params(data, params);
  std::vector<double> grad(params.size(), 0.0);
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    const auto& row = data.rows[i];
    const double residual = sigmoid(linear_term(row, params)) - (data.labels[i] ? 1.0 : 0.0);
    grad[0] += residual;
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j]) grad[j + 1] += residual;
  }
  for (std::size_t j = 1; j < params.size(); ++j) grad[j] += 2.0 * ridge * params[j];
  return grad;
}

LogisticModel train_logistic(const FeatureMatrix& data, const LogisticOptions& options) {
  data.validate();
  if (data.rows.empty()) throw Error(ErrorCode::InvalidArgument, "cannot train on zero rows");
  if (options.ridge < 0) throw Error(ErrorCode::InvalidArgument, "ridge must be non-negative");

  LogisticModel model;
  model.features = data.feature_names;
  model.weights.assign(data.num_features(), 0.0);
  model.ridge = options.ridge;

  const auto positives = std::count(data.labels.begin(), data.labels.end(), 1);
  if (positives == 0 || positives == static_cast<std::ptrdiff_t>(data.labels.size())) {
    model.intercept = positives == 0 ? -options.intercept_clamp : options.intercept_clamp;
    return model;
  }

  const std::size_t n = data.num_rows();
  const std::size_t d = data.num_features() + 1;
  Eigen::MatrixXd x(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    x(static_cast<Eigen::Index>(i), 0) = 1.0;
    for (std::size_t j = 0; j + 1 < d; ++j)
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j + 1)) = data.rows[i][j];
  }
  Eigen::VectorXd y(n);
  for (std::size_t i = 0; i < n; ++i) y(static_cast<Eigen::Index>(i)) = data.labels[i];
  Eigen::VectorXd penalty = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(d), 2.0 * options.ridge);
  penalty(0) = 0.0;

  auto objective = [&](const Eigen::VectorXd& beta) {
    const Eigen::VectorXd z = x * beta;
    double v = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) v += softplus(z(i)) - y(i) * z(i);
    return v + 0.5 * beta.dot(penalty.cwiseProduct(beta));
  };

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
  double current = objective(beta);
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const Eigen::VectorXd z = x * beta;
    Eigen::VectorXd p(z.size()), w(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      p(i) = sigmoid(z(i));
      w(i) = p(i) * (1.0 - p(i));
    }
    const Eigen::VectorXd grad = x.transpose() * (p - y) + penalty.cwiseProduct(beta);
    if (grad.lpNorm<Eigen::Infinity>() < options.gradient_tolerance) break;

    Eigen::MatrixXd hessian = x.transpose() * w.asDiagonal() * x;
    hessian.diagonal() += penalty;
    // A tiny floor keeps the factorization defined on rank-deficient designs.
    hessian.diagonal().array() += 1e-12;
    Eigen::VectorXd step = hessian.ldlt().solve(grad);
    if (!step.allFinite()) step = grad;

    double scale = 1.0;
    bool accepted = false;
    for (int k = 0; k < 60; ++k) {
      const Eigen::VectorXd candidate = beta - scale * step;
      const double value = objective(candidate);
      // Full steps within rounding of the current value are taken so Newton
      // can finish converging once decreases fall below double resolution.
      const bool within_rounding =
          k == 0 && value - current <= 1e-12 * std::max(1.0, std::abs(current));
      if (value < current || within_rounding) {
        beta = candidate;
        current = value;
        accepted = true;
        break;
      }
      scale *= 0.5;
    }
    if (!accepted) break;  // no further decrease representable
  }

  model.intercept = beta(0);
  for (std::size_t j = 1; j < d; ++j) model.weights[j - 1] = beta(static_cast<Eigen::Index>(j));
  return model;
}

LogisticModel train_logistic(const FeatureMatrix& data, double ridge) {
  LogisticOptions options;
  options.ridge = ridge;
  return train_logistic(data, options);
}

Prediction predict(const LogisticModel& model, const std::map<std::string, bool>& x) {
  double z = model.intercept;
  for (std::size_t j = 0; j < model.features.size(); ++j) {
    const auto it = x.find(model.features[j]);
    if (it == x.end())
      throw Error(ErrorCode::InvalidArgument, "missing feature '" + model.features[j] + "'");
    if (it->second) z += model.weights[j];
  }
  const double p = sigmoid(z);
  return {p, p >= 0.5};
}

BoundModel::BoundModel(const LogisticModel& model, std::span<const std::string> columns)
    : weights_(model.weights), intercept_(model.intercept) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t j = 0; j < columns.size(); ++j) index.emplace(columns[j], j);
  for (const auto& f : model.features) {
    const auto it = index.find(f);
    if (it == index.end()) throw Error(ErrorCode::InvalidArgument, "missing feature '" + f + "'");
    columns_.push_back(it->second);
  }
}

Prediction BoundModel::predict(std::span<const std::uint8_t> bits) const {
  double z = intercept_;
  for (std::size_t j = 0; j < columns_.size(); ++j)
    if (bits[columns_[j]]) z += weights_[j];
  const double p = sigmoid(z);
  return {p, p >= 0.5};
}

void save_model(const LogisticModel& model, const std::filesystem::path& path) {
  auto out = detail::open_output(path);
  out << "__intercept__\t" << detail::format_double(model.intercept) << '\n';
  out << "__ridge__\t" << detail::format_double(model.ridge) << '\n';
  for (std::size_t j = 0; j < model.features.size(); ++j)
    out << model.features[j] << '\t' << detail::format_double(model.weights[j]) << '\n';
}

LogisticModel load_model(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  const auto source = path.string();
  LogisticModel model;
  bool have_intercept = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    detail::strip_cr(line);
    if (line.empty()) continue;
    const auto tab = line.rfind('\t');
    double value = 0.0;
    if (tab == std::string::npos || !detail::parse_number(std::string_view(line).substr(tab + 1), value))
      throw ParseError(source, lineno, "expected feature<TAB>weight");
    const auto name = line.substr(0, tab);
    if (name == "__intercept__") {
      model.intercept = value;
      have_intercept = true;
    } else if (name == "__ridge__") {
      model.ridge = value;
    } else {
      model.features.push_back(name);
      model.weights.push_back(value);
    }
  }
  if (!have_intercept) throw ParseError(source, lineno, "model has no __intercept__ line");
  return model;
}

}  // namespace convtag::linmodel
