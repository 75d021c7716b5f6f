#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "qgrnn/matrix.hpp"

namespace qgrnn {

using RealMatrix = Matrix<double>;

struct Dataset {
  RealMatrix features;              // rows = samples
  std::vector<int> labels;
  std::vector<std::string> class_names;  // label k -> name (empty for MNIST)

  std::size_t sample_count() const noexcept { return features.rows(); }
  std::size_t feature_count() const noexcept { return features.cols(); }
};

// Four numeric columns plus a class label. A first row whose first field is
// not numeric is treated as a header. Labels are numbered in order of first
// appearance. Throws IoError / ParseError.
Dataset load_iris_csv(const std::filesystem::path& path);

// IDX image/label pair (magic 2051 / 2049, big-endian). Pixels are divided
// by 255. Throws IoError / FormatError / ConsistencyError.
Dataset load_mnist_idx(const std::filesystem::path& images_path, const std::filesystem::path& labels_path);

// Column-wise affine map of [min, max] onto [lo, hi]. Constant columns map
// to lo.
struct MinMaxScaler {
  std::vector<double> col_min;
  std::vector<double> col_max;
  double lo = 0.0;
  double hi = 5.0;

  RealMatrix transform(const RealMatrix& features) const;
  std::vector<double> transform_row(std::span<const double> row) const;
  std::vector<double> inverse_row(std::span<const double> row) const;
};

struct ScaledFeatures {
  RealMatrix scaled;
  MinMaxScaler scaler;
};

ScaledFeatures minmax_scale(const RealMatrix& features, double lo = 0.0, double hi = 5.0);

struct PcaModel {
  std::vector<double> mean;
  RealMatrix components;                  // k x d, unit-norm rows
  std::vector<double> explained_variance; // descending, length k
  double total_variance = 0.0;            // trace of the covariance
};

// Covariance with divisor N-1, eigendecomposed with the Jacobi solver. Each
// component's largest-magnitude entry is made positive.
PcaModel pca_fit(const RealMatrix& features, std::size_t k);

RealMatrix pca_transform(const PcaModel& model, const RealMatrix& features);

// Rows selected by index, in the given order.
RealMatrix select_rows(const RealMatrix& m, std::span<const std::size_t> rows);

}  // namespace qgrnn
