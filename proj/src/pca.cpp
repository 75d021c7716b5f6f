#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qgrnn/data.hpp"
#include "qgrnn/eigen.hpp"

namespace qgrnn {

PcaModel pca_fit(const RealMatrix& features, std::size_t k) {
  const std::size_t n = features.rows();
  const std::size_t d = features.cols();
  if (k == 0 || k > d) {
    throw std::invalid_argument("pca_fit: k=" + std::to_string(k) + " outside [1, " + std::to_string(d) + "]");
  }
  if (n < 2) throw std::invalid_argument("pca_fit: need at least 2 samples");

  PcaModel model;
  model.mean.assign(d, 0.0);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < d; ++c) model.mean[c] += features(r, c);
  for (auto& m : model.mean) m /= static_cast<double>(n);

  // Upper triangle of the centered Gram matrix, accumulated row by row.
  RealMatrix cov(d, d);
  std::vector<double> centered(d);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < d; ++c) centered[c] = features(r, c) - model.mean[c];
    for (std::size_t i = 0; i < d; ++i) {
      const double xi = centered[i];
      if (xi == 0.0) continue;
      double* out = &cov(i, 0);
      for (std::size_t j = i; j < d; ++j) out[j] += xi * centered[j];
    }
  }
  const double denom = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      cov(i, j) /= denom;
      cov(j, i) = cov(i, j);
    }
    model.total_variance += cov(i, i);
  }

  const auto eig = symmetric_eigendecompose(cov);
  model.components = RealMatrix(k, d);
  model.explained_variance.resize(k);
  for (std::size_t m = 0; m < k; ++m) {
    const std::size_t col = d - 1 - m;  // eigenvalues ascend
    model.explained_variance[m] = std::max(0.0, eig.values[col]);
    std::size_t arg = 0;
    for (std::size_t r = 1; r < d; ++r)
      if (std::abs(eig.vectors(r, col)) > std::abs(eig.vectors(arg, col))) arg = r;
    const double sign = eig.vectors(arg, col) < 0.0 ? -1.0 : 1.0;
    for (std::size_t r = 0; r < d; ++r) model.components(m, r) = sign * eig.vectors(r, col);
  }
  return model;
}

RealMatrix pca_transform(const PcaModel& model, const RealMatrix& features) {
  const std::size_t d = model.mean.size();
  if (features.cols() != d) {
    throw std::invalid_argument("pca_transform: expected " + std::to_string(d) + " columns, got " +
                                std::to_string(features.cols()));
  }
  const std::size_t k = model.components.rows();
  RealMatrix out(features.rows(), k);
  for (std::size_t r = 0; r < features.rows(); ++r) {
    for (std::size_t m = 0; m < k; ++m) {
      double s = 0.0;
      for (std::size_t c = 0; c < d; ++c) s += (features(r, c) - model.mean[c]) * model.components(m, c);
      out(r, m) = s;
    }
  }
  return out;
}

}  // namespace qgrnn
