#pragma once

#include <span>

#include "json.hpp"

namespace qgrnn {

struct MetricReport {
  double mse = 0.0;
  double rmse = 0.0;
  double mae = 0.0;
  double cosine = 0.0;
};

// Throws std::invalid_argument on length mismatch or empty input and
// std::domain_error when either vector is all zeros (cosine undefined).
MetricReport evaluate(std::span<const double> actual, std::span<const double> predicted);

void to_json(nlohmann::json& j, const MetricReport& r);
void from_json(const nlohmann::json& j, MetricReport& r);

}  // namespace qgrnn
