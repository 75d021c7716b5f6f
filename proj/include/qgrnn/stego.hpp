#pragma once

// Message hiding in Ising node weights. Each word of a message becomes one
// node whose weight is the word's dictionary value; the graph is evolved,
// and only the initial state and the time-evolved states are kept. The
// message comes back by training the QGRNN ansatz on those states and
// snapping each learned node weight to the nearest dictionary value.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "qgrnn/ising.hpp"
#include "qgrnn/train.hpp"

namespace qgrnn {

struct Dictionary {
  std::vector<std::string> words;
  double lo = -4.0;
  double hi = 5.0;
  std::vector<double> values;  // values[k] = lo + k * spacing

  std::size_t size() const noexcept { return words.size(); }
  double spacing() const noexcept { return (hi - lo) / static_cast<double>(words.size() - 1); }
  // Throws LookupError for unknown words.
  std::size_t index_of(const std::string& word) const;
};

// At least two distinct words; order defines the value assignment.
Dictionary build_dictionary(std::vector<std::string> words, double lo = -4.0, double hi = 5.0);

// One word per line; blank lines are skipped.
Dictionary load_dictionary(const std::filesystem::path& path);

std::vector<std::string> split_words(const std::string& text);

struct StateArchive {
  static constexpr int kFormatVersion = 1;

  int format_version = kFormatVersion;
  std::size_t node_count = 0;
  double t_max = 0.0;
  StateVector initial{1};
  std::vector<TimeEvolvedSample> samples;
  std::string created;  // ISO-8601 UTC
  std::string note;
};

nlohmann::ordered_json archive_to_json(const StateArchive& archive);
// Throws FormatError on any schema, version or normalization problem.
StateArchive archive_from_json(const nlohmann::json& j);
void save_archive(const std::filesystem::path& path, const StateArchive& archive);
StateArchive load_archive(const std::filesystem::path& path);

std::string utc_timestamp_now();

// `created` empty means "now".
StateArchive encode_message(std::span<const std::string> message, const Dictionary& dict, const TrainConfig& config,
                            const std::string& created = {});

struct SnapResult {
  std::vector<std::size_t> indices;
  std::vector<double> distances;
};

// Nearest dictionary value per entry; ties go to the lower value.
SnapResult snap_to_dictionary(std::span<const double> values, const Dictionary& dict);

struct RevealResult {
  std::vector<std::string> words;
  std::vector<double> learned_values;
  std::vector<double> snap_distances;
  TrainResult training;
};

RevealResult reveal_message(const StateArchive& archive, const Dictionary& dict, const TrainConfig& config);

// Percentage of positions where the words match.
double retrieval_accuracy(std::span<const std::string> truth, std::span<const std::string> retrieved);

}  // namespace qgrnn
