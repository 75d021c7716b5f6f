#pragma once

// The `qgrnn` command-line tool: reconstruct, classify, hide, reveal.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qgrnn/pipeline.hpp"
#include "qgrnn/train.hpp"

namespace qgrnn {

// Fully resolved settings for one run. Loaded from a JSON config file, then
// overridden by command-line flags; echoed to run.json.
struct RunConfig {
  std::string command;
  std::uint64_t seed = 0;
  std::string out = "out";
  std::string dataset = "iris";
  std::optional<std::vector<std::size_t>> samples;  // unset = dataset default
  DatasetPaths data;
  std::size_t pca_components = 6;
  std::size_t pca_fit_samples = 0;
  TrainConfig train;
  std::vector<std::string> classifiers{"gaussian-naive-bayes", "logistic-regression", "k-nearest-neighbors"};
  double test_fraction = 0.2;
  std::string reconstructed;  // classify: read sample_*.json from here instead of training
  std::string message;
  std::string dict;
  std::string archive;
  std::string truth;
  double dict_lo = -4.0;
  double dict_hi = 5.0;
  std::string created;  // hide: archive timestamp, empty = now
};

nlohmann::ordered_json train_config_to_json(const TrainConfig& c);
// Overrides only the keys present; unknown keys throw std::invalid_argument.
void merge_train_config(const nlohmann::json& j, TrainConfig& c);

nlohmann::ordered_json run_config_to_json(const RunConfig& c);
void merge_run_config(const nlohmann::json& j, RunConfig& c);

std::vector<std::size_t> default_samples(DatasetKind kind);
// Comma- or whitespace-separated non-negative integers.
std::vector<std::size_t> parse_indices(const std::string& text);

// Runs the tool with argv-style arguments (args[0] is the program name).
// Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qgrnn
