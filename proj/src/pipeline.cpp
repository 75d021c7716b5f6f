#include "qgrnn/pipeline.hpp"

#include <numeric>
#include <stdexcept>

namespace qgrnn {

std::string_view to_string(DatasetKind kind) {
  return kind == DatasetKind::Iris ? "iris" : "mnist";
}

DatasetKind dataset_kind_from_string(std::string_view name) {
  if (name == "iris") return DatasetKind::Iris;
  if (name == "mnist") return DatasetKind::Mnist;
  throw std::invalid_argument("unknown dataset '" + std::string(name) + "' (expected iris or mnist)");
}

PreparedDataset prepare_dataset(DatasetKind kind, const DatasetPaths& paths, std::size_t pca_components,
                                std::size_t pca_fit_samples) {
  Dataset raw = kind == DatasetKind::Iris ? load_iris_csv(paths.iris_csv)
                                          : load_mnist_idx(paths.mnist_images, paths.mnist_labels);
  RealMatrix base = std::move(raw.features);
  if (kind == DatasetKind::Mnist) {
    PcaModel model;
    if (pca_fit_samples == 0 || pca_fit_samples >= base.rows()) {
      model = pca_fit(base, pca_components);
    } else {
      std::vector<std::size_t> rows(pca_fit_samples);
      std::iota(rows.begin(), rows.end(), std::size_t{0});
      model = pca_fit(select_rows(base, rows), pca_components);
    }
    base = pca_transform(model, base);
  }
  auto scaled = minmax_scale(base, 0.0, 5.0);
  return {kind, std::move(scaled.scaled), std::move(raw.labels), std::move(raw.class_names),
          std::move(scaled.scaler)};
}

Reconstruction reconstruct_features(std::span<const double> features, const TrainConfig& config) {
  config.validate();
  if (features.size() < 2) throw std::invalid_argument("reconstruct_features: need at least 2 features");
  std::vector<double> actual(features.begin(), features.end());
  auto target = IsingGraph::complete_random_edges(actual, derive_seed(config.seed, seed_stream::kEdges));
  const auto initial = random_state(features.size(), derive_seed(config.seed, seed_stream::kInitialState));
  const auto times = draw_times(static_cast<std::size_t>(config.batch_size), config.t_max,
                                derive_seed(config.seed, seed_stream::kTimes));
  const auto samples = sample_evolution(target, initial, times);
  auto training = train_qgrnn(initial, samples, config);
  const auto nodes = training.learned_params.node_params();
  std::vector<double> predicted(nodes.begin(), nodes.end());
  const auto metrics = evaluate(actual, predicted);
  return {std::move(target), std::move(actual), std::move(predicted), metrics, std::move(training)};
}

}  // namespace qgrnn
