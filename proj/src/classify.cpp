#include "qgrnn/classify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace qgrnn {
namespace {

std::vector<int> distinct_sorted(std::span<const int> labels) {
  std::set<int> s(labels.begin(), labels.end());
  return {s.begin(), s.end()};
}

// Index of the largest score; the earliest wins ties.
std::size_t argmax_first(std::span<const double> scores) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < scores.size(); ++k)
    if (scores[k] > scores[best]) best = k;
  return best;
}

GaussianNbParams fit_gnb(const RealMatrix& x, std::span<const int> y, const std::vector<int>& classes,
                         double floor) {
  const std::size_t d = x.cols();
  GaussianNbParams p;
  p.classes = classes;
  p.means = RealMatrix(classes.size(), d);
  p.variances = RealMatrix(classes.size(), d);
  std::vector<double> counts(classes.size(), 0.0);
  std::map<int, std::size_t> slot;
  for (std::size_t c = 0; c < classes.size(); ++c) slot[classes[c]] = c;
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const std::size_t c = slot[y[r]];
    counts[c] += 1.0;
    for (std::size_t f = 0; f < d; ++f) p.means(c, f) += x(r, f);
  }
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (std::size_t f = 0; f < d; ++f) p.means(c, f) /= counts[c];
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const std::size_t c = slot[y[r]];
    for (std::size_t f = 0; f < d; ++f) {
      const double dev = x(r, f) - p.means(c, f);
      p.variances(c, f) += dev * dev;
    }
  }
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (std::size_t f = 0; f < d; ++f) p.variances(c, f) = std::max(p.variances(c, f) / counts[c], floor);
    p.log_priors.push_back(std::log(counts[c] / static_cast<double>(x.rows())));
  }
  return p;
}

int predict_gnb(const GaussianNbParams& p, std::span<const double> row) {
  std::vector<double> scores(p.classes.size());
  for (std::size_t c = 0; c < p.classes.size(); ++c) {
    double s = p.log_priors[c];
    for (std::size_t f = 0; f < row.size(); ++f) {
      const double var = p.variances(c, f);
      const double dev = row[f] - p.means(c, f);
      s -= 0.5 * std::log(2.0 * std::numbers::pi * var) + dev * dev / (2.0 * var);
    }
    scores[c] = s;
  }
  return p.classes[argmax_first(scores)];
}

void logreg_logits(const LogRegParams& p, std::span<const double> row, std::vector<double>& out) {
  const std::size_t d = row.size();
  out.assign(p.classes.size(), 0.0);
  for (std::size_t c = 0; c < p.classes.size(); ++c) {
    double z = p.bias[c];
    for (std::size_t f = 0; f < d; ++f) z += p.weights(c, f) * (row[f] - p.feature_mean[f]) / p.feature_scale[f];
    out[c] = z;
  }
}

LogRegParams fit_logreg(const RealMatrix& x, std::span<const int> y, const std::vector<int>& classes,
                        double lr, int iterations) {
  const std::size_t n = x.rows(), d = x.cols(), k = classes.size();
  LogRegParams p;
  p.classes = classes;
  p.feature_mean.assign(d, 0.0);
  p.feature_scale.assign(d, 0.0);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t f = 0; f < d; ++f) p.feature_mean[f] += x(r, f);
  for (auto& m : p.feature_mean) m /= static_cast<double>(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t f = 0; f < d; ++f) p.feature_scale[f] += std::pow(x(r, f) - p.feature_mean[f], 2);
  for (auto& s : p.feature_scale) {
    s = std::sqrt(s / static_cast<double>(n));
    if (s <= 0.0) s = 1.0;
  }
  RealMatrix z(n, d);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t f = 0; f < d; ++f) z(r, f) = (x(r, f) - p.feature_mean[f]) / p.feature_scale[f];

  std::map<int, std::size_t> slot;
  for (std::size_t c = 0; c < k; ++c) slot[classes[c]] = c;
  p.weights = RealMatrix(k, d);
  p.bias.assign(k, 0.0);

  RealMatrix grad_w(k, d);
  std::vector<double> grad_b(k), logits(k), prob(k);
  for (int it = 0; it <= iterations; ++it) {
    std::fill(grad_w.data().begin(), grad_w.data().end(), 0.0);
    std::fill(grad_b.begin(), grad_b.end(), 0.0);
    double loss = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < k; ++c) {
        double s = p.bias[c];
        for (std::size_t f = 0; f < d; ++f) s += p.weights(c, f) * z(r, f);
        logits[c] = s;
      }
      const double mx = *std::max_element(logits.begin(), logits.end());
      double total = 0.0;
      for (std::size_t c = 0; c < k; ++c) total += (prob[c] = std::exp(logits[c] - mx));
      const std::size_t truth = slot[y[r]];
      loss -= logits[truth] - mx - std::log(total);
      for (std::size_t c = 0; c < k; ++c) {
        const double err = prob[c] / total - (c == truth ? 1.0 : 0.0);
        grad_b[c] += err;
        for (std::size_t f = 0; f < d; ++f) grad_w(c, f) += err * z(r, f);
      }
    }
    p.loss_history.push_back(loss / static_cast<double>(n));
    if (it == iterations) break;
    const double step = lr / static_cast<double>(n);
    for (std::size_t c = 0; c < k; ++c) {
      p.bias[c] -= step * grad_b[c];
      for (std::size_t f = 0; f < d; ++f) p.weights(c, f) -= step * grad_w(c, f);
    }
  }
  return p;
}

int predict_knn(const KnnParams& p, std::span<const double> row) {
  const std::size_t n = p.train_features.rows();
  std::vector<std::pair<double, std::size_t>> dist(n);
  for (std::size_t r = 0; r < n; ++r) {
    double s = 0.0;
    const auto tr = p.train_features.row(r);
    for (std::size_t f = 0; f < row.size(); ++f) s += (row[f] - tr[f]) * (row[f] - tr[f]);
    dist[r] = {s, r};
  }
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(p.k), n);
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
  std::map<int, int> votes;  // ordered by label, so ties go to the lower label
  for (std::size_t i = 0; i < k; ++i) ++votes[p.train_labels[dist[i].second]];
  int best_label = votes.begin()->first, best_votes = 0;
  for (const auto& [label, v] : votes) {
    if (v > best_votes) {
      best_votes = v;
      best_label = label;
    }
  }
  return best_label;
}

}  // namespace

std::string_view to_string(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::GaussianNaiveBayes: return "gaussian-naive-bayes";
    case ClassifierKind::LogisticRegression: return "logistic-regression";
    case ClassifierKind::KNearestNeighbors: return "k-nearest-neighbors";
  }
  return "unknown";
}

ClassifierKind classifier_kind_from_string(std::string_view name) {
  for (auto kind : kAllClassifierKinds)
    if (to_string(kind) == name) return kind;
  if (name == "gnb") return ClassifierKind::GaussianNaiveBayes;
  if (name == "logreg") return ClassifierKind::LogisticRegression;
  if (name == "knn") return ClassifierKind::KNearestNeighbors;
  throw std::invalid_argument("unknown classifier kind '" + std::string(name) + "'");
}

ClassifierModel::ClassifierModel(ClassifierKind kind, std::size_t feature_count, Params params)
    : kind_(kind), feature_count_(feature_count), params_(std::move(params)) {}

int ClassifierModel::predict_row(std::span<const double> row) const {
  if (row.size() != feature_count_) {
    throw std::invalid_argument("predict: expected " + std::to_string(feature_count_) + " features, got " +
                                std::to_string(row.size()));
  }
  return std::visit(
      [&](const auto& p) -> int {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, GaussianNbParams>) {
          return predict_gnb(p, row);
        } else if constexpr (std::is_same_v<T, LogRegParams>) {
          std::vector<double> logits;
          logreg_logits(p, row, logits);
          return p.classes[argmax_first(logits)];
        } else {
          return predict_knn(p, row);
        }
      },
      params_);
}

ClassifierModel fit(ClassifierKind kind, const RealMatrix& features, std::span<const int> labels,
                    const FitOptions& options) {
  if (features.rows() != labels.size()) throw std::invalid_argument("fit: feature rows != label count");
  const auto classes = distinct_sorted(labels);
  if (classes.size() < 2) throw std::invalid_argument("fit: need at least two classes");
  if (features.rows() < classes.size()) throw std::invalid_argument("fit: fewer samples than classes");
  switch (kind) {
    case ClassifierKind::GaussianNaiveBayes:
      return {kind, features.cols(), fit_gnb(features, labels, classes, options.variance_floor)};
    case ClassifierKind::LogisticRegression:
      return {kind, features.cols(),
              fit_logreg(features, labels, classes, options.logreg_learning_rate, options.logreg_iterations)};
    case ClassifierKind::KNearestNeighbors:
      if (options.knn_k < 1) throw std::invalid_argument("fit: k must be >= 1");
      return {kind, features.cols(), KnnParams{features, {labels.begin(), labels.end()}, options.knn_k}};
  }
  throw std::invalid_argument("fit: unknown classifier kind");
}

std::vector<int> predict(const ClassifierModel& model, const RealMatrix& features) {
  if (features.cols() != model.feature_count()) throw std::invalid_argument("predict: feature dimension mismatch");
  std::vector<int> out(features.rows());
  for (std::size_t r = 0; r < features.rows(); ++r) out[r] = model.predict_row(features.row(r));
  return out;
}

double accuracy(std::span<const int> truth, std::span<const int> predicted) {
  if (truth.size() != predicted.size()) throw std::invalid_argument("accuracy: length mismatch");
  if (truth.empty()) throw std::invalid_argument("accuracy: empty input");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hits += truth[i] == predicted[i];
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

double agreement_eval(const ClassifierModel& model, const RealMatrix& original, const RealMatrix& reconstructed) {
  if (original.rows() != reconstructed.rows() || original.cols() != reconstructed.cols()) {
    throw std::invalid_argument("agreement_eval: shape mismatch");
  }
  if (original.rows() == 0) throw std::invalid_argument("agreement_eval: no samples");
  return accuracy(predict(model, original), predict(model, reconstructed));
}

SplitIndices stratified_split(std::span<const int> labels, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction >= 0.0 && test_fraction <= 1.0)) throw std::invalid_argument("stratified_split: bad fraction");
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
  std::mt19937_64 rng(seed);
  SplitIndices out;
  for (auto& [label, idx] : by_class) {
    std::shuffle(idx.begin(), idx.end(), rng);
    const auto n_test = static_cast<std::size_t>(std::lround(test_fraction * static_cast<double>(idx.size())));
    out.test.insert(out.test.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_test));
    out.train.insert(out.train.end(), idx.begin() + static_cast<std::ptrdiff_t>(n_test), idx.end());
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

namespace {

nlohmann::json matrix_json(const RealMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(std::vector<double>(m.row(r).begin(), m.row(r).end()));
  return rows;
}

RealMatrix matrix_from_json(const nlohmann::json& j) {
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j.at(0).size() : 0;
  RealMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (j.at(r).size() != cols) throw std::invalid_argument("classifier json: ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = j.at(r).at(c).get<double>();
  }
  return m;
}

}  // namespace

nlohmann::json to_json(const ClassifierModel& model) {
  nlohmann::json j;
  j["kind"] = std::string(to_string(model.kind()));
  j["feature_count"] = model.feature_count();
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, GaussianNbParams>) {
          j["classes"] = p.classes;
          j["log_priors"] = p.log_priors;
          j["means"] = matrix_json(p.means);
          j["variances"] = matrix_json(p.variances);
        } else if constexpr (std::is_same_v<T, LogRegParams>) {
          j["classes"] = p.classes;
          j["feature_mean"] = p.feature_mean;
          j["feature_scale"] = p.feature_scale;
          j["weights"] = matrix_json(p.weights);
          j["bias"] = p.bias;
        } else {
          j["k"] = p.k;
          j["train_features"] = matrix_json(p.train_features);
          j["train_labels"] = p.train_labels;
        }
      },
      model.params());
  return j;
}

ClassifierModel classifier_from_json(const nlohmann::json& j) {
  const auto kind = classifier_kind_from_string(j.at("kind").get<std::string>());
  const auto fc = j.at("feature_count").get<std::size_t>();
  switch (kind) {
    case ClassifierKind::GaussianNaiveBayes: {
      GaussianNbParams p;
      j.at("classes").get_to(p.classes);
      j.at("log_priors").get_to(p.log_priors);
      p.means = matrix_from_json(j.at("means"));
      p.variances = matrix_from_json(j.at("variances"));
      return {kind, fc, std::move(p)};
    }
    case ClassifierKind::LogisticRegression: {
      LogRegParams p;
      j.at("classes").get_to(p.classes);
      j.at("feature_mean").get_to(p.feature_mean);
      j.at("feature_scale").get_to(p.feature_scale);
      p.weights = matrix_from_json(j.at("weights"));
      j.at("bias").get_to(p.bias);
      return {kind, fc, std::move(p)};
    }
    case ClassifierKind::KNearestNeighbors: {
      KnnParams p;
      j.at("k").get_to(p.k);
      p.train_features = matrix_from_json(j.at("train_features"));
      j.at("train_labels").get_to(p.train_labels);
      return {kind, fc, std::move(p)};
    }
  }
  throw std::invalid_argument("classifier json: unknown kind");
}

}  // namespace qgrnn
