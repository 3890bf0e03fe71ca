#pragma once

// Correlation-based feature subset selection (best-first search) and
// ridge-penalized binary logistic regression.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace convtag::linmodel {

using BitColumn = std::vector<std::uint8_t>;

struct FeatureMatrix {
  std::vector<std::string> feature_names;
  std::vector<std::vector<std::uint8_t>> rows;
  std::vector<std::uint8_t> labels;

  std::size_t num_rows() const noexcept { return rows.size(); }
  std::size_t num_features() const noexcept { return feature_names.size(); }
  BitColumn column(std::size_t feature) const;
  // Throws unless every row has one bit per feature and labels match rows.
  void validate() const;
};

// 2*MI / (H(X)+H(Y)) in bits. Both constant -> 1; exactly one constant -> 0.
double symmetrical_uncertainty(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y);

// k*mean(SU(f, class)) / sqrt(k + k(k-1)*mean(SU(f, g))) over the subset.
double cfs_merit(std::span<const std::size_t> subset, const FeatureMatrix& data);
double cfs_merit(const std::vector<std::string>& subset, const FeatureMatrix& data);

struct BestFirstOptions {
  std::size_t stale_limit = 5;
};

struct Selection {
  std::vector<std::size_t> features;  // ascending feature index
  double merit = 0.0;
};

// Forward best-first search from the empty set. Stops after `stale_limit`
// consecutive expansions that fail to improve the best merit. Ties break
// on feature name.
Selection best_first_search(const FeatureMatrix& data, const BestFirstOptions& options = {});
std::vector<std::string> best_first_select(const FeatureMatrix& data,
                                           const BestFirstOptions& options = {});

// Keeps only the given columns, in the given order.
FeatureMatrix project(const FeatureMatrix& data, std::span<const std::size_t> features);

struct LogisticModel {
  std::vector<std::string> features;
  std::vector<double> weights;  // parallel to features
  double intercept = 0.0;
  double ridge = 0.0;
};

struct LogisticOptions {
  double ridge = 1e-8;
  double gradient_tolerance = 1e-8;
  int max_iterations = 500;
  // One-class data: |intercept| is clamped to this logit.
  double intercept_clamp = 15.0;
};

// Penalized negative log-likelihood and its gradient. `params` is
// [intercept, w_0, ..., w_{d-1}]; the intercept is not penalized.
double logistic_objective(const FeatureMatrix& data, double ridge, std::span<const double> params);
std::vector<double> logistic_gradient(const FeatureMatrix& data, double ridge,
                                      std::span<const double> params);

// Damped Newton iterations from zero until the gradient max-norm falls below
// the tolerance.
LogisticModel train_logistic(const FeatureMatrix& data, const LogisticOptions& options);
LogisticModel train_logistic(const FeatureMatrix& data, double ridge);

struct Prediction {
  double probability = 0.0;
  bool present = false;
};

double sigmoid(double z);

// `x` maps feature name to presence; every model feature must be present.
Prediction predict(const LogisticModel& model, const std::map<std::string, bool>& x);

// Model whose features were resolved against a fixed column layout.
class BoundModel {
 public:
  BoundModel(const LogisticModel& model, std::span<const std::string> columns);
  Prediction predict(std::span<const std::uint8_t> bits) const;

 private:
  std::vector<std::size_t> columns_;
  std::vector<double> weights_;
  double intercept_;
};

// `feature<TAB>weight` lines plus `__intercept__` and `__ridge__` lines.
void save_model(const LogisticModel& model, const std::filesystem::path& path);
LogisticModel load_model(const std::filesystem::path& path);

}  // namespace convtag::linmodel
