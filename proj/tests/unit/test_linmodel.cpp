#include <cmath>
#include <filesystem>
#include <random>

#include "convtag/error.hpp"
#include "convtag/linmodel.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace convtag::linmodel;

namespace {

FeatureMatrix matrix(const std::vector<std::vector<std::uint8_t>>& columns, const std::vector<std::uint8_t>& labels) {
  FeatureMatrix m;
  for (std::size_t j = 0; j < columns.size(); ++j) m.feature_names.push_back("f" + std::to_string(j));
  m.rows.assign(labels.size(), std::vector<std::uint8_t>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (std::size_t i = 0; i < labels.size(); ++i) m.rows[i][j] = columns[j][i];
  m.labels = labels;
  return m;
}

std::vector<std::vector<std::uint8_t>> columns_of(const FeatureMatrix& m) {
  std::vector<std::vector<std::uint8_t>> out;
  for (std::size_t j = 0; j < m.num_features(); ++j) out.push_back(m.column(j));
  return out;
}

FeatureMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t features) {
  std::vector<std::uint8_t> labels(rows);
  for (auto& y : labels) y = rng() % 2;
  std::vector<std::vector<std::uint8_t>> cols(features, std::vector<std::uint8_t>(rows));
  std::uniform_real_distribution<double> u(0, 1);
  for (auto& c : cols) {
    const double agree = u(rng);
    for (std::size_t i = 0; i < rows; ++i) c[i] = u(rng) < agree ? labels[i] : static_cast<std::uint8_t>(rng() % 2);
  }
  return matrix(cols, labels);
}

}  // namespace

TEST_CASE("symmetrical uncertainty: identical, independent and the 4-row example") {
  const std::vector<std::uint8_t> x = {1, 1, 0, 0}, y = {1, 0, 1, 0}, z = {1, 0, 0, 0};
  CHECK(symmetrical_uncertainty(x, x) == doctest::Approx(1.0));
  CHECK(symmetrical_uncertainty(x, y) == doctest::Approx(0.0));
  // H(x)=1, H(z)=0.8113, H(x,z)=1.5
  const double hz = -(0.25 * std::log2(0.25) + 0.75 * std::log2(0.75));
  CHECK(symmetrical_uncertainty(x, z) == doctest::Approx(2 * (1 + hz - 1.5) / (1 + hz)));
  CHECK(symmetrical_uncertainty(x, z) == doctest::Approx(0.3437).epsilon(1e-4));
}

TEST_CASE("symmetrical uncertainty constant conventions and errors") {
  const std::vector<std::uint8_t> c = {1, 1, 1}, d = {0, 0, 0}, v = {1, 0, 1};
  CHECK(symmetrical_uncertainty(c, d) == 1.0);
  CHECK(symmetrical_uncertainty(c, v) == 0.0);
  CHECK_THROWS(symmetrical_uncertainty(std::vector<std::uint8_t>{1, 0}, v));
}

TEST_CASE("symmetrical uncertainty is symmetric, bounded and matches the oracle") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = 1 + rng() % 20;
    std::vector<std::uint8_t> a(n), b(n);
    for (std::size_t k = 0; k < n; ++k) a[k] = rng() % 2, b[k] = rng() % 2;
    const double s = symmetrical_uncertainty(a, b);
    CHECK(s == doctest::Approx(symmetrical_uncertainty(b, a)).epsilon(1e-12));
    CHECK(s >= -1e-12);
    CHECK(s <= 1 + 1e-12);
    CHECK(s == doctest::Approx(oracle::su(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("merit of one feature is its class correlation") {
  std::mt19937_64 rng(4);
  const auto m = random_matrix(rng, 30, 3);
  const std::vector<std::size_t> one = {1};
  CHECK(cfs_merit(one, m) == doctest::Approx(symmetrical_uncertainty(m.column(1), m.labels)));
}

TEST_CASE("two copies of a half-informative feature keep merit one half") {
  // f0 = f1, SU(f0, y) must be 0.5 for the plug-in value; check the formula directly.
  std::mt19937_64 rng(8);
  const auto m = random_matrix(rng, 40, 1);
  auto twin = matrix({m.column(0), m.column(0)}, m.labels);
  const std::vector<std::size_t> both = {0, 1};
  const double r = symmetrical_uncertainty(m.column(0), m.labels);
  CHECK(cfs_merit(both, twin) == doctest::Approx(2 * r / std::sqrt(2 + 2 * 1.0)));
}

TEST_CASE("merit agrees with an independent evaluator on a 4-feature toy") {
  const auto m = matrix({{1, 1, 0, 0, 1, 0}, {1, 0, 0, 0, 1, 1}, {0, 1, 1, 0, 0, 1}, {1, 1, 1, 0, 0, 0}},
                        {1, 1, 0, 0, 1, 0});
  const auto cols = columns_of(m);
  for (unsigned mask = 1; mask < 16; ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t j = 0; j < 4; ++j)
      if (mask >> j & 1) s.push_back(j);
    CHECK(cfs_merit(s, m) == doctest::Approx(oracle::merit(cols, m.labels, s)).epsilon(1e-12));
  }
  CHECK_THROWS(cfs_merit(std::vector<std::size_t>{}, m));
  CHECK(cfs_merit(std::vector<std::string>{"f0", "f2"}, m) ==
        doctest::Approx(cfs_merit(std::vector<std::size_t>{0, 2}, m)));
}

TEST_CASE("a perfect predictor among noise is selected") {
  std::mt19937_64 rng(21);
  const std::size_t n = 60;
  std::vector<std::uint8_t> y(n);
  for (auto& v : y) v = rng() % 2;
  std::vector<std::vector<std::uint8_t>> cols(6, std::vector<std::uint8_t>(n));
  for (auto& c : cols)
    for (auto& v : c) v = rng() % 2;
  cols[3] = y;
  const auto m = matrix(cols, y);
  const auto sel = best_first_search(m);
  CHECK(sel.features == std::vector<std::size_t>{3});
  CHECK(sel.merit == doctest::Approx(oracle::exhaustive_best_merit(cols, y)));
  CHECK(best_first_select(m) == std::vector<std::string>{"f3"});
}

TEST_CASE("single feature is chosen only when its merit is positive") {
  const auto informative = matrix({{1, 0, 1, 0}}, {1, 0, 0, 0});
  CHECK(best_first_search(informative).features == std::vector<std::size_t>{0});
  const auto useless = matrix({{1, 1, 0, 0}}, {1, 0, 1, 0});
  CHECK(best_first_search(useless).features.empty());
}

TEST_CASE("best-first merit equals the exhaustive maximum") {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 40; ++round) {
    const auto m = random_matrix(rng, 10 + rng() % 40, 1 + rng() % 10);
    const auto sel = best_first_search(m);
    CHECK(sel.features.size() <= m.num_features());
    CHECK(sel.merit == doctest::Approx(oracle::exhaustive_best_merit(columns_of(m), m.labels)).epsilon(1e-12));
  }
}

TEST_CASE("separable one-dimensional data gets a positive weight") {
  const auto m = matrix({{1, 1, 0, 0, 1, 0}}, {1, 1, 0, 0, 1, 0});
  const auto model = train_logistic(m, 1e-8);
  REQUIRE(model.weights.size() == 1);
  CHECK(model.weights[0] > 0);
  CHECK(predict(model, {{"f0", true}}).present);
  CHECK_FALSE(predict(model, {{"f0", false}}).present);
}

TEST_CASE("huge ridge leaves only the prevalence logit") {
  const auto m = matrix({{1, 0, 1, 0, 1, 1, 0, 0}}, {1, 1, 1, 0, 0, 0, 0, 0});
  const auto model = train_logistic(m, 1e9);
  CHECK(std::abs(model.weights[0]) < 1e-6);
  CHECK(model.intercept == doctest::Approx(std::log(3.0 / 5.0)).epsilon(1e-6));
}

TEST_CASE("one-class labels give zero weights and a clamped intercept") {
  const auto pos = train_logistic(matrix({{1, 0, 1}}, {1, 1, 1}), 1e-8);
  CHECK(pos.weights == std::vector<double>{0.0});
  CHECK(pos.intercept == 15.0);
  const auto neg = train_logistic(matrix({{1, 0, 1}}, {0, 0, 0}), 1e-8);
  CHECK(neg.intercept == -15.0);
}

TEST_CASE("gradient matches central differences") {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g(0, 1);
  for (int round = 0; round < 10; ++round) {
    const auto m = random_matrix(rng, 8 + rng() % 20, 1 + rng() % 5);
    const double ridge = std::abs(g(rng));
    std::vector<double> p(m.num_features() + 1);
    for (auto& v : p) v = g(rng);
    const auto grad = logistic_gradient(m, ridge, p);
    for (std::size_t k = 0; k < p.size(); ++k) {
      auto hi = p, lo = p;
      hi[k] += 1e-5;
      lo[k] -= 1e-5;
      const double fd = (logistic_objective(m, ridge, hi) - logistic_objective(m, ridge, lo)) / 2e-5;
      CHECK(std::abs(fd - grad[k]) <= 1e-6 * std::max(1.0, std::abs(grad[k])));
    }
  }
}

TEST_CASE("trained model is a stationary point") {
  std::mt19937_64 rng(31);
  const auto m = random_matrix(rng, 50, 4);
  const auto model = train_logistic(m, 0.1);
  std::vector<double> p = {model.intercept};
  p.insert(p.end(), model.weights.begin(), model.weights.end());
  for (double v : logistic_gradient(m, 0.1, p)) CHECK(std::abs(v) < 1e-8);
}

TEST_CASE("prediction threshold and sigmoid arithmetic") {
  LogisticModel zero;
  zero.features = {"a"};
  zero.weights = {0};
  const auto p0 = predict(zero, {{"a", true}});
  CHECK(p0.probability == 0.5);
  CHECK(p0.present);

  LogisticModel m;
  m.features = {"a"};
  m.weights = {3};
  m.intercept = -2;
  CHECK(predict(m, {{"a", false}}).probability == doctest::Approx(0.1192).epsilon(1e-4));
  CHECK_FALSE(predict(m, {{"a", false}}).present);
  m.intercept = -1;
  CHECK(predict(m, {{"a", true}}).probability == doctest::Approx(0.8808).epsilon(1e-4));
  CHECK_THROWS(predict(m, {{"b", true}}));
}

TEST_CASE("bound model agrees with map prediction and files round-trip") {
  LogisticModel m;
  m.features = {"x", "y"};
  m.weights = {1.25, -0.5};
  m.intercept = 0.125;
  m.ridge = 1e-8;
  const std::vector<std::string> cols = {"y", "z", "x"};
  const BoundModel b(m, cols);
  const std::vector<std::uint8_t> bits = {1, 0, 1};
  CHECK(b.predict(bits).probability == doctest::Approx(predict(m, {{"x", true}, {"y", true}}).probability));
  const auto path = std::filesystem::temp_directory_path() / "convtag_model.txt";
  save_model(m, path);
  const auto back = load_model(path);
  CHECK(back.features == m.features);
  CHECK(back.weights == m.weights);
  CHECK(back.intercept == m.intercept);
  std::filesystem::remove(path);
}
