#include "qgrnn/stego.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qgrnn/errors.hpp"
#include "qgrnn/io.hpp"

namespace qgrnn {

std::size_t Dictionary::index_of(const std::string& word) const {
  for (std::size_t k = 0; k < words.size(); ++k)
    if (words[k] == word) return k;
  throw LookupError(word, "word not in dictionary");
}

Dictionary build_dictionary(std::vector<std::string> words, double lo, double hi) {
  if (words.size() < 2) throw std::invalid_argument("build_dictionary: need at least 2 words");
  if (!(hi > lo)) throw std::invalid_argument("build_dictionary: hi must exceed lo");
  std::set<std::string> seen;
  for (const auto& w : words) {
    if (w.empty()) throw std::invalid_argument("build_dictionary: empty word");
    if (!seen.insert(w).second) throw std::invalid_argument("build_dictionary: duplicate word '" + w + "'");
  }
  Dictionary d;
  d.words = std::move(words);
  d.lo = lo;
  d.hi = hi;
  const double spacing = d.spacing();
  d.values.resize(d.words.size());
  for (std::size_t k = 0; k < d.values.size(); ++k) d.values[k] = lo + static_cast<double>(k) * spacing;
  d.values.back() = hi;
  return d;
}

Dictionary load_dictionary(const std::filesystem::path& path) {
  std::istringstream in(read_text_file(path));
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    words.push_back(line.substr(first, last - first + 1));
  }
  return build_dictionary(std::move(words));
}

std::vector<std::string> split_words(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

namespace {

nlohmann::ordered_json amplitudes_json(const StateVector& s) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& a : s.amplitudes()) arr.push_back({a.real(), a.imag()});
  return arr;
}

StateVector state_from_json(const nlohmann::json& j, std::size_t node_count, const std::string& where) {
  if (!j.is_array()) throw FormatError(where + ": expected an amplitude array");
  const std::size_t dim = std::size_t{1} << node_count;
  if (j.size() != dim) {
    throw FormatError(where + ": expected " + std::to_string(dim) + " amplitudes, found " + std::to_string(j.size()));
  }
  std::vector<Complex> amps;
  amps.reserve(dim);
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      throw FormatError(where + ": amplitudes must be [re, im] number pairs");
    }
    amps.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  try {
    return StateVector::from_amplitudes(node_count, std::move(amps), 1e-9);
  } catch (const std::invalid_argument& e) {
    throw FormatError(where + ": " + e.what());
  }
}

std::string seed_fingerprint(std::uint64_t seed) {
  std::ostringstream ss;
  ss << std::hex << (derive_seed(seed, 0xF1A6) >> 32);
  return ss.str();
}

}  // namespace

nlohmann::ordered_json archive_to_json(const StateArchive& archive) {
  nlohmann::ordered_json j;
  j["version"] = archive.format_version;
  j["node_count"] = archive.node_count;
  j["t_max"] = archive.t_max;
  j["initial"] = amplitudes_json(archive.initial);
  auto samples = nlohmann::ordered_json::array();
  for (const auto& s : archive.samples) {
    nlohmann::ordered_json item;
    item["t"] = s.time;
    item["state"] = amplitudes_json(s.state);
    samples.push_back(std::move(item));
  }
  j["samples"] = std::move(samples);
  j["meta"] = {{"created", archive.created}, {"note", archive.note}};
  return j;
}

StateArchive archive_from_json(const nlohmann::json& j) {
  static const std::set<std::string> kKeys{"version", "node_count", "t_max", "initial", "samples", "meta"};
  if (!j.is_object()) throw FormatError("archive: top level must be an object");
  for (const auto& [key, _] : j.items()) {
    if (!kKeys.count(key)) throw FormatError("archive: unexpected field '" + key + "'");
  }
  for (const auto& key : kKeys) {
    if (!j.contains(key)) throw FormatError("archive: missing field '" + key + "'");
  }
  StateArchive a;
  if (!j["version"].is_number_integer()) throw FormatError("archive: version must be an integer");
  a.format_version = j["version"].get<int>();
  if (a.format_version != StateArchive::kFormatVersion) {
    throw FormatError("archive: unsupported version " + std::to_string(a.format_version));
  }
  if (!j["node_count"].is_number_unsigned()) throw FormatError("archive: node_count must be a positive integer");
  a.node_count = j["node_count"].get<std::size_t>();
  if (a.node_count == 0 || a.node_count > kMaxQubits) throw FormatError("archive: node_count out of range");
  if (!j["t_max"].is_number()) throw FormatError("archive: t_max must be a number");
  a.t_max = j["t_max"].get<double>();
  if (!(a.t_max > 0.0)) throw FormatError("archive: t_max must be positive");
  a.initial = state_from_json(j["initial"], a.node_count, "archive.initial");
  if (!j["samples"].is_array() || j["samples"].empty()) throw FormatError("archive: samples must be a non-empty array");
  std::size_t idx = 0;
  for (const auto& item : j["samples"]) {
    const std::string where = "archive.samples[" + std::to_string(idx++) + "]";
    if (!item.is_object() || item.size() != 2 || !item.contains("t") || !item.contains("state")) {
      throw FormatError(where + ": expected {t, state}");
    }
    if (!item["t"].is_number()) throw FormatError(where + ": t must be a number");
    const double t = item["t"].get<double>();
    if (!(t >= 0.0 && t <= a.t_max)) throw FormatError(where + ": t outside [0, t_max]");
    a.samples.push_back({t, state_from_json(item["state"], a.node_count, where)});
  }
  const auto& meta = j["meta"];
  if (!meta.is_object() || !meta.contains("created") || !meta.contains("note") || meta.size() != 2 ||
      !meta["created"].is_string() || !meta["note"].is_string()) {
    throw FormatError("archive: meta must be {created: string, note: string}");
  }
  a.created = meta["created"].get<std::string>();
  a.note = meta["note"].get<std::string>();
  return a;
}

void save_archive(const std::filesystem::path& path, const StateArchive& archive) {
  write_json_file(path, archive_to_json(archive));
}

StateArchive load_archive(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError("archive '" + path.string() + "': " + e.what());
  }
  return archive_from_json(j);
}

std::string utc_timestamp_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

StateArchive encode_message(std::span<const std::string> message, const Dictionary& dict, const TrainConfig& config,
                            const std::string& created) {
  config.validate();
  if (message.size() < 2) throw std::invalid_argument("encode_message: message needs at least 2 words");
  std::vector<double> weights;
  weights.reserve(message.size());
  for (const auto& w : message) weights.push_back(dict.values[dict.index_of(w)]);

  StateArchive a;
  a.node_count = message.size();
  a.t_max = config.t_max;
  a.created = created.empty() ? utc_timestamp_now() : created;
  a.note = "seed-fingerprint " + seed_fingerprint(config.seed);
  {
    // The graph lives only inside this scope.
    const auto graph = IsingGraph::complete_random_edges(std::move(weights),
                                                         derive_seed(config.seed, seed_stream::kEdges));
    a.initial = random_state(a.node_count, derive_seed(config.seed, seed_stream::kInitialState));
    const auto times = draw_times(static_cast<std::size_t>(config.batch_size), config.t_max,
                                  derive_seed(config.seed, seed_stream::kTimes));
    a.samples = sample_evolution(graph, a.initial, times);
  }
  return a;
}

SnapResult snap_to_dictionary(std::span<const double> values, const Dictionary& dict) {
  SnapResult r;
  for (double v : values) {
    std::size_t best = 0;
    double best_d = std::abs(v - dict.values[0]);
    for (std::size_t k = 1; k < dict.values.size(); ++k) {
      const double d = std::abs(v - dict.values[k]);
      if (d < best_d) {
        best = k;
        best_d = d;
      }
    }
    r.indices.push_back(best);
    r.distances.push_back(best_d);
  }
  return r;
}

RevealResult reveal_message(const StateArchive& archive, const Dictionary& dict, const TrainConfig& config) {
  if (archive.format_version != StateArchive::kFormatVersion) throw FormatError("archive: unsupported version");
  if (archive.initial.qubit_count() != archive.node_count) throw FormatError("archive: initial state size mismatch");
  if (std::abs(archive.initial.norm() - 1.0) > 1e-9) throw FormatError("archive: initial state not normalized");
  for (const auto& s : archive.samples) {
    if (s.state.qubit_count() != archive.node_count) throw FormatError("archive: sample size mismatch");
    if (std::abs(s.state.norm() - 1.0) > 1e-9) throw FormatError("archive: sample state not normalized");
  }
  RevealResult out{{}, {}, {}, train_qgrnn(archive.initial, archive.samples, config)};
  const auto nodes = out.training.learned_params.node_params();
  out.learned_values.assign(nodes.begin(), nodes.end());
  const auto snap = snap_to_dictionary(out.learned_values, dict);
  out.snap_distances = snap.distances;
  for (auto idx : snap.indices) out.words.push_back(dict.words[idx]);
  return out;
}

double retrieval_accuracy(std::span<const std::string> truth, std::span<const std::string> retrieved) {
  if (truth.size() != retrieved.size()) throw std::invalid_argument("retrieval_accuracy: length mismatch");
  if (truth.empty()) throw std::invalid_argument("retrieval_accuracy: empty message");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hits += truth[i] == retrieved[i];
  return 100.0 * static_cast<double>(hits) / static_cast<double>(truth.size());
}

}  // namespace qgrnn
