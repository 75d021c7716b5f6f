#pragma once

// Dataset preparation and the embed -> evolve -> learn loop shared by the
// command-line tool and the acceptance suite.

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "qgrnn/data.hpp"
#include "qgrnn/ising.hpp"
#include "qgrnn/metrics.hpp"
#include "qgrnn/train.hpp"

namespace qgrnn {

enum class DatasetKind { Iris, Mnist };

std::string_view to_string(DatasetKind kind);
DatasetKind dataset_kind_from_string(std::string_view name);

struct DatasetPaths {
  std::filesystem::path iris_csv = "data/iris.csv";
  std::filesystem::path mnist_images = "data/mnist/mnist5k-images-idx3-ubyte";
  std::filesystem::path mnist_labels = "data/mnist/mnist5k-labels-idx1-ubyte";
};

// Features ready for embedding: Iris is min-max scaled to [0, 5]; MNIST is
// projected onto `pca_components` principal components fitted on the first
// `pca_fit_samples` rows (0 = all), then scaled to [0, 5] per component.
struct PreparedDataset {
  DatasetKind kind;
  RealMatrix features;
  std::vector<int> labels;
  std::vector<std::string> class_names;
  MinMaxScaler scaler;
};

PreparedDataset prepare_dataset(DatasetKind kind, const DatasetPaths& paths, std::size_t pca_components = 6,
                                std::size_t pca_fit_samples = 0);

struct Reconstruction {
  IsingGraph target;
  std::vector<double> actual;
  std::vector<double> predicted;  // learned node weights
  MetricReport metrics;
  TrainResult training;
};

// Node weights = features, complete graph with seeded random edges, seeded
// random initial state and batch_size seeded times; then train.
Reconstruction reconstruct_features(std::span<const double> features, const TrainConfig& config);

}  // namespace qgrnn
