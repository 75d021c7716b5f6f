#pragma once

// Classical classifiers used to check that reconstructed features keep
// their class: Gaussian naive Bayes, multinomial logistic regression and
// k-nearest neighbours.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "qgrnn/data.hpp"

namespace qgrnn {

enum class ClassifierKind { GaussianNaiveBayes, LogisticRegression, KNearestNeighbors };

std::string_view to_string(ClassifierKind kind);
ClassifierKind classifier_kind_from_string(std::string_view name);
inline constexpr ClassifierKind kAllClassifierKinds[] = {
    ClassifierKind::GaussianNaiveBayes, ClassifierKind::LogisticRegression, ClassifierKind::KNearestNeighbors};

struct GaussianNbParams {
  std::vector<int> classes;              // sorted label values
  std::vector<double> log_priors;        // per class
  RealMatrix means;                      // classes x features
  RealMatrix variances;                  // floored at 1e-9
};

// Features are standardized with the stored mean/scale before the linear map.
struct LogRegParams {
  std::vector<int> classes;
  std::vector<double> feature_mean;
  std::vector<double> feature_scale;
  RealMatrix weights;                    // classes x features
  std::vector<double> bias;
  std::vector<double> loss_history;      // training cross-entropy per iteration
};

struct KnnParams {
  RealMatrix train_features;
  std::vector<int> train_labels;
  int k = 5;
};

struct FitOptions {
  double logreg_learning_rate = 0.1;
  int logreg_iterations = 500;
  int knn_k = 5;
  double variance_floor = 1e-9;
};

class ClassifierModel {
 public:
  using Params = std::variant<GaussianNbParams, LogRegParams, KnnParams>;

  ClassifierModel(ClassifierKind kind, std::size_t feature_count, Params params);

  ClassifierKind kind() const noexcept { return kind_; }
  std::size_t feature_count() const noexcept { return feature_count_; }
  const Params& params() const noexcept { return params_; }

  int predict_row(std::span<const double> row) const;

 private:
  ClassifierKind kind_;
  std::size_t feature_count_;
  Params params_;
};

ClassifierModel fit(ClassifierKind kind, const RealMatrix& features, std::span<const int> labels,
                    const FitOptions& options = {});

std::vector<int> predict(const ClassifierModel& model, const RealMatrix& features);

double accuracy(std::span<const int> truth, std::span<const int> predicted);

// Fraction of rows where the model gives the same label to both matrices.
double agreement_eval(const ClassifierModel& model, const RealMatrix& original, const RealMatrix& reconstructed);

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Per-class seeded shuffle, the first round(test_fraction * class size) of
// each class go to test. Both index lists come back sorted.
SplitIndices stratified_split(std::span<const int> labels, double test_fraction, std::uint64_t seed);

nlohmann::json to_json(const ClassifierModel& model);
ClassifierModel classifier_from_json(const nlohmann::json& j);

}  // namespace qgrnn
