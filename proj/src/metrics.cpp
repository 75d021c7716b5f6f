#include "qgrnn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qgrnn {

MetricReport evaluate(std::span<const double> actual, std::span<const double> predicted) {
  if (actual.size() != predicted.size()) throw std::invalid_argument("evaluate: length mismatch");
  if (actual.empty()) throw std::invalid_argument("evaluate: empty vectors");
  double sq = 0.0, abs_sum = 0.0, dot = 0.0, na = 0.0, np = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const double d = actual[i] - predicted[i];
    sq += d * d;
    abs_sum += std::abs(d);
    dot += actual[i] * predicted[i];
    na += actual[i] * actual[i];
    np += predicted[i] * predicted[i];
  }
  if (na == 0.0 || np == 0.0) throw std::domain_error("evaluate: cosine similarity of a zero vector");
  const double n = static_cast<double>(actual.size());
  MetricReport r;
  r.mse = sq / n;
  r.rmse = std::sqrt(r.mse);
  r.mae = abs_sum / n;
  r.cosine = std::clamp(dot / (std::sqrt(na) * std::sqrt(np)), -1.0, 1.0);
  return r;
}

void to_json(nlohmann::json& j, const MetricReport& r) {
  j = nlohmann::json{{"mse", r.mse}, {"rmse", r.rmse}, {"mae", r.mae}, {"cosine", r.cosine}};
}

void from_json(const nlohmann::json& j, MetricReport& r) {
  j.at("mse").get_to(r.mse);
  j.at("rmse").get_to(r.rmse);
  j.at("mae").get_to(r.mae);
  j.at("cosine").get_to(r.cosine);
}

}  // namespace qgrnn
