#include <stdexcept>

#include "doctest.h"
#include "qgrnn/classify.hpp"
#include "qgrnn/data.hpp"
#include "support/generators.hpp"

using namespace qgrnn;

namespace {

const std::filesystem::path kData = QGRNN_DATA_DIR;

struct Toy {
  RealMatrix x;
  std::vector<int> y;
};

Toy clusters() {
  Toy t{RealMatrix(12, 1), {}};
  for (std::size_t i = 0; i < 12; ++i) {
    const bool hi = i >= 6;
    t.x(i, 0) = (hi ? 10.0 : 0.0) + 0.1 * static_cast<double>(i % 6);
    t.y.push_back(hi ? 1 : 0);
  }
  return t;
}

}  // namespace

TEST_CASE("kind names") {
  for (auto k : kAllClassifierKinds) CHECK(classifier_kind_from_string(to_string(k)) == k);
  CHECK(classifier_kind_from_string("knn") == ClassifierKind::KNearestNeighbors);
  CHECK_THROWS_AS(classifier_kind_from_string("svm"), std::invalid_argument);
}

TEST_CASE("separable clusters") {
  const auto t = clusters();
  for (auto k : kAllClassifierKinds) {
    CAPTURE(to_string(k));
    const auto m = fit(k, t.x, t.y);
    CHECK(accuracy(t.y, predict(m, t.x)) == 1.0);
    CHECK(m.predict_row(t.x.row(7)) == 1);
    CHECK_THROWS_AS(predict(m, RealMatrix(1, 2)), std::invalid_argument);
  }
}

TEST_CASE("fit errors") {
  RealMatrix x(3, 1);
  const std::vector<int> one{0, 0, 0};
  CHECK_THROWS_AS(fit(ClassifierKind::GaussianNaiveBayes, x, one), std::invalid_argument);
  const std::vector<int> short_labels{0, 1};
  CHECK_THROWS_AS(fit(ClassifierKind::LogisticRegression, x, short_labels), std::invalid_argument);
}

TEST_CASE("k = 1 returns the stored label") {
  gen::Gen g(70);
  const auto x = g.real_matrix(20, 3);
  std::vector<int> y;
  for (int i = 0; i < 20; ++i) y.push_back(i % 3);
  FitOptions o;
  o.knn_k = 1;
  const auto m = fit(ClassifierKind::KNearestNeighbors, x, y, o);
  for (std::size_t i = 0; i < 20; ++i) CHECK(m.predict_row(x.row(i)) == y[i]);
}

TEST_CASE("gaussian nb tie goes to the lower label") {
  // Two classes symmetric about 0 with equal priors and variances.
  RealMatrix x(4, 1);
  x(0, 0) = -2; x(1, 0) = -1; x(2, 0) = 1; x(3, 0) = 2;
  const std::vector<int> y{0, 0, 1, 1};
  const auto m = fit(ClassifierKind::GaussianNaiveBayes, x, y);
  const std::vector<double> mid{0.0};
  CHECK(m.predict_row(mid) == 0);
}

TEST_CASE("logistic regression loss is non-increasing") {
  const auto iris = load_iris_csv(kData / "iris.csv");
  const auto m = fit(ClassifierKind::LogisticRegression, minmax_scale(iris.features).scaled, iris.labels);
  const auto& p = std::get<LogRegParams>(m.params());
  REQUIRE(p.loss_history.size() == 501);
  for (std::size_t i = 1; i < p.loss_history.size(); ++i) CHECK(p.loss_history[i] <= p.loss_history[i - 1] + 1e-9);
}

TEST_CASE("iris accuracy and agreement") {
  const auto iris = load_iris_csv(kData / "iris.csv");
  const auto x = minmax_scale(iris.features).scaled;
  const auto gnb = fit(ClassifierKind::GaussianNaiveBayes, x, iris.labels);
  CHECK(accuracy(iris.labels, predict(gnb, x)) >= 0.94);

  CHECK(agreement_eval(gnb, x, x) == 1.0);
  // Replace one row by a far-away class centroid.
  const std::vector<std::size_t> rows{0, 1, 2, 3};
  const auto orig = select_rows(x, rows);
  auto moved = orig;
  const auto& params = std::get<GaussianNbParams>(gnb.params());
  for (std::size_t c = 0; c < x.cols(); ++c) moved(0, c) = params.means(2, c);
  CHECK(agreement_eval(gnb, orig, moved) == doctest::Approx(0.75));
  CHECK_THROWS_AS(agreement_eval(gnb, orig, select_rows(x, std::vector<std::size_t>{0})), std::invalid_argument);
}

TEST_CASE("stratified split") {
  std::vector<int> labels;
  for (int i = 0; i < 50; ++i) labels.push_back(i % 2);
  const auto s = stratified_split(labels, 0.2, 3);
  CHECK(s.test.size() == 10);
  CHECK(s.train.size() == 40);
  int ones = 0;
  for (auto i : s.test) ones += labels[i];
  CHECK(ones == 5);
  CHECK(std::is_sorted(s.test.begin(), s.test.end()));
  const auto again = stratified_split(labels, 0.2, 3);
  CHECK(again.test == s.test);
  CHECK_THROWS_AS(stratified_split(labels, 1.5, 3), std::invalid_argument);
}

TEST_CASE("model json round trip") {
  const auto t = clusters();
  for (auto k : kAllClassifierKinds) {
    const auto m = fit(k, t.x, t.y);
    const auto back = classifier_from_json(nlohmann::json::parse(to_json(m).dump()));
    CHECK(back.kind() == k);
    CHECK(predict(back, t.x) == predict(m, t.x));
  }
  CHECK_THROWS(classifier_from_json(nlohmann::json{{"kind", "nope"}}));
}
