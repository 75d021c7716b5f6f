#include "qgrnn/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "qgrnn/classify.hpp"
#include "qgrnn/errors.hpp"
#include "qgrnn/io.hpp"
#include "qgrnn/stego.hpp"

namespace qgrnn {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

// ---------------------------------------------------------------- config --

namespace {

void check_keys(const nlohmann::json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw std::invalid_argument(where + ": expected a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) throw std::invalid_argument(where + ": unknown key '" + key + "'");
  }
}

template <class T>
void take(const nlohmann::json& j, const char* key, T& dst) {
  if (!j.contains(key)) return;
  try {
    dst = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw std::invalid_argument(std::string("config: bad value for '") + key + "'");
  }
}

}  // namespace

ojson train_config_to_json(const TrainConfig& c) {
  return ojson{{"batch_size", c.batch_size},
               {"learning_rate", c.learning_rate},
               {"epochs", c.epochs},
               {"trotter_delta", c.trotter_delta},
               {"t_max", c.t_max},
               {"fd_step", c.fd_step},
               {"seed", c.seed},
               {"adam_beta1", c.adam_beta1},
               {"adam_beta2", c.adam_beta2},
               {"adam_epsilon", c.adam_epsilon},
               {"init_low", c.init_low},
               {"init_high", c.init_high},
               {"warmup_epochs", c.warmup_epochs},
               {"warmup_start_fraction", c.warmup_start_fraction},
               {"restarts", c.restarts},
               {"accept_cost", c.accept_cost}};
}

void merge_train_config(const nlohmann::json& j, TrainConfig& c) {
  check_keys(j,
             {"batch_size", "learning_rate", "epochs", "trotter_delta", "t_max", "fd_step", "seed", "adam_beta1",
              "adam_beta2", "adam_epsilon", "init_low", "init_high", "warmup_epochs", "warmup_start_fraction",
              "restarts", "accept_cost"},
             "config.train");
  take(j, "batch_size", c.batch_size);
  take(j, "learning_rate", c.learning_rate);
  take(j, "epochs", c.epochs);
  take(j, "trotter_delta", c.trotter_delta);
  take(j, "t_max", c.t_max);
  take(j, "fd_step", c.fd_step);
  take(j, "seed", c.seed);
  take(j, "adam_beta1", c.adam_beta1);
  take(j, "adam_beta2", c.adam_beta2);
  take(j, "adam_epsilon", c.adam_epsilon);
  take(j, "init_low", c.init_low);
  take(j, "init_high", c.init_high);
  take(j, "warmup_epochs", c.warmup_epochs);
  take(j, "warmup_start_fraction", c.warmup_start_fraction);
  take(j, "restarts", c.restarts);
  take(j, "accept_cost", c.accept_cost);
}

ojson run_config_to_json(const RunConfig& c) {
  ojson j;
  j["command"] = c.command;
  j["seed"] = c.seed;
  j["out"] = c.out;
  if (c.command == "reconstruct" || c.command == "classify") {
    j["dataset"] = c.dataset;
    j["samples"] = c.samples.value_or(std::vector<std::size_t>{});
    j["data"] = {{"iris_csv", c.data.iris_csv.string()},
                 {"mnist_images", c.data.mnist_images.string()},
                 {"mnist_labels", c.data.mnist_labels.string()}};
    j["pca_components"] = c.pca_components;
    j["pca_fit_samples"] = c.pca_fit_samples;
  }
  if (c.command == "classify") {
    j["classifiers"] = c.classifiers;
    j["test_fraction"] = c.test_fraction;
    j["reconstructed"] = c.reconstructed;
  }
  if (c.command == "hide" || c.command == "reveal") {
    j["dict"] = c.dict;
    j["dict_lo"] = c.dict_lo;
    j["dict_hi"] = c.dict_hi;
    j["archive"] = c.archive;
  }
  if (c.command == "hide") {
    j["message"] = c.message;
    j["created"] = c.created;
  }
  if (c.command == "reveal") j["truth"] = c.truth;
  j["train"] = train_config_to_json(c.train);
  return j;
}

void merge_run_config(const nlohmann::json& j, RunConfig& c) {
  check_keys(j,
             {"command", "seed", "out", "dataset", "samples", "data", "pca_components", "pca_fit_samples", "train",
              "classifiers", "test_fraction", "reconstructed", "message", "dict", "archive", "truth", "dict_lo",
              "dict_hi", "created"},
             "config");
  if (j.contains("command") && j["command"] != c.command) {
    throw std::invalid_argument("config: written for command '" + j["command"].get<std::string>() + "', not '" +
                                c.command + "'");
  }
  if (j.contains("train")) merge_train_config(j["train"], c.train);
  // A top-level seed governs the whole run, including training.
  if (j.contains("seed")) {
    take(j, "seed", c.seed);
    c.train.seed = c.seed;
  } else {
    c.seed = c.train.seed;
  }
  take(j, "out", c.out);
  take(j, "dataset", c.dataset);
  if (j.contains("samples")) {
    std::vector<std::size_t> s;
    take(j, "samples", s);
    c.samples = s;
  }
  if (j.contains("data")) {
    const auto& d = j["data"];
    check_keys(d, {"iris_csv", "mnist_images", "mnist_labels"}, "config.data");
    std::string p;
    if (d.contains("iris_csv")) take(d, "iris_csv", p), c.data.iris_csv = p;
    if (d.contains("mnist_images")) take(d, "mnist_images", p), c.data.mnist_images = p;
    if (d.contains("mnist_labels")) take(d, "mnist_labels", p), c.data.mnist_labels = p;
  }
  take(j, "pca_components", c.pca_components);
  take(j, "pca_fit_samples", c.pca_fit_samples);
  take(j, "classifiers", c.classifiers);
  take(j, "test_fraction", c.test_fraction);
  take(j, "reconstructed", c.reconstructed);
  take(j, "message", c.message);
  take(j, "dict", c.dict);
  take(j, "archive", c.archive);
  take(j, "truth", c.truth);
  take(j, "dict_lo", c.dict_lo);
  take(j, "dict_hi", c.dict_hi);
  take(j, "created", c.created);
}

std::vector<std::size_t> default_samples(DatasetKind kind) {
  if (kind == DatasetKind::Iris) return {18, 31, 73, 82, 118, 141};
  return {0, 500, 1000, 1500, 2000, 2500, 3000, 3500, 4000, 4500};  // one per digit in the 5k subset
}

std::vector<std::size_t> parse_indices(const std::string& text) {
  std::string spaced = text;
  std::replace(spaced.begin(), spaced.end(), ',', ' ');
  std::istringstream in(spaced);
  std::vector<std::size_t> out;
  for (std::string tok; in >> tok;) {
    if (tok.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("bad sample index '" + tok + "'");
    }
    out.push_back(std::stoull(tok));
  }
  return out;
}

// ------------------------------------------------------------- commands --

namespace {

const char* const kSchemaHelp = R"(Output files (CSV has a header row; numbers use shortest round-trip form):
  run.json                 resolved configuration; pass it back with --config to repeat the run
  reconstruct:
    sample_<i>.json        {index, label, actual, predicted, learned_edges, metrics{mse,rmse,mae,cosine},
                            final_cost, starts_used, selected_start}
    cost_<i>.csv           epoch,cost
    hamiltonian_<i>.csv    row,col,target,learned   (real parts, row-major over the 2^n x 2^n matrix)
    summary.csv            index,label,mse,rmse,mae,cosine,final_cost
  classify:
    accuracy.csv           classifier,train_size,test_size,test_accuracy,agreement
    agreement.csv          classifier,index,true_label,original_prediction,reconstructed_prediction,agree
  hide:
    archive JSON           {version, node_count, t_max, initial, samples[{t, state}], meta{created, note}}
  reveal:
    cost.csv               epoch,cost
    reveal.json            {words, learned_values, snap_distances, final_cost, accuracy?}
    words.csv              position,word,learned_value,snap_distance)";

std::string csv_join(std::initializer_list<std::string> cells) {
  std::string line;
  for (const auto& c : cells) {
    if (!line.empty()) line += ',';
    line += c;
  }
  return line + '\n';
}

std::string cost_csv(const TrainResult& r) {
  std::string s = "epoch,cost\n";
  for (const auto& p : r.cost_history) s += csv_join({std::to_string(p.epoch), format_double(p.cost)});
  return s;
}

std::string hamiltonian_csv(const IsingGraph& target, const IsingGraph& learned) {
  const auto ht = build_hamiltonian(target);
  const auto hl = build_hamiltonian(learned);
  std::string s = "row,col,target,learned\n";
  for (std::size_t r = 0; r < ht.rows(); ++r)
    for (std::size_t c = 0; c < ht.cols(); ++c)
      s += csv_join({std::to_string(r), std::to_string(c), format_double(ht(r, c).real()),
                     format_double(hl(r, c).real())});
  return s;
}

void write_run_json(const RunConfig& c) { write_json_file(fs::path(c.out) / "run.json", run_config_to_json(c)); }

std::vector<std::size_t> resolve_samples(const RunConfig& c, DatasetKind kind, std::size_t available) {
  auto samples = c.samples.value_or(default_samples(kind));
  for (auto i : samples) {
    if (i >= available) {
      throw std::invalid_argument("sample index " + std::to_string(i) + " out of range (dataset has " +
                                  std::to_string(available) + " rows)");
    }
  }
  return samples;
}

PreparedDataset load_for(const RunConfig& c) {
  return prepare_dataset(dataset_kind_from_string(c.dataset), c.data, c.pca_components, c.pca_fit_samples);
}

int cmd_reconstruct(RunConfig c, std::ostream& out) {
  const auto data = load_for(c);
  const auto samples = resolve_samples(c, data.kind, data.features.rows());
  c.samples = samples;
  if (samples.empty()) throw std::invalid_argument("no samples");
  fs::create_directories(c.out);
  write_run_json(c);

  std::string summary = "index,label,mse,rmse,mae,cosine,final_cost\n";
  for (auto idx : samples) {
    const auto r = reconstruct_features(data.features.row(idx), c.train);
    const auto learned = r.training.learned_params.to_graph();
    const auto edges = r.training.learned_params.edge_params();
    ojson j;
    j["index"] = idx;
    j["label"] = data.labels[idx];
    j["actual"] = r.actual;
    j["predicted"] = r.predicted;
    j["learned_edges"] = std::vector<double>(edges.begin(), edges.end());
    j["metrics"] = {{"mse", r.metrics.mse}, {"rmse", r.metrics.rmse}, {"mae", r.metrics.mae},
                    {"cosine", r.metrics.cosine}};
    j["final_cost"] = r.training.final_cost;
    j["starts_used"] = r.training.starts_used;
    j["selected_start"] = r.training.selected_start;
    const auto tag = std::to_string(idx);
    write_json_file(fs::path(c.out) / ("sample_" + tag + ".json"), j);
    write_text_file(fs::path(c.out) / ("cost_" + tag + ".csv"), cost_csv(r.training));
    write_text_file(fs::path(c.out) / ("hamiltonian_" + tag + ".csv"), hamiltonian_csv(r.target, learned));
    summary += csv_join({tag, std::to_string(data.labels[idx]), format_double(r.metrics.mse),
                         format_double(r.metrics.rmse), format_double(r.metrics.mae),
                         format_double(r.metrics.cosine), format_double(r.training.final_cost)});
    out << "sample " << idx << ": mse " << format_double(r.metrics.mse) << ", cosine "
        << format_double(r.metrics.cosine) << ", cost " << format_double(r.training.final_cost) << "\n";
  }
  write_text_file(fs::path(c.out) / "summary.csv", summary);
  return 0;
}

struct ReconstructedRow {
  std::size_t index;
  std::vector<double> features;
};

std::vector<ReconstructedRow> read_reconstructed(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
  std::vector<ReconstructedRow> rows;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (!name.starts_with("sample_") || entry.path().extension() != ".json") continue;
    const auto j = nlohmann::json::parse(read_text_file(entry.path()));
    rows.push_back({j.at("index").get<std::size_t>(), j.at("predicted").get<std::vector<double>>()});
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
  return rows;
}

int cmd_classify(RunConfig c, std::ostream& out) {
  const auto data = load_for(c);
  std::vector<ClassifierKind> kinds;
  for (const auto& name : c.classifiers) kinds.push_back(classifier_kind_from_string(name));
  if (kinds.empty()) throw std::invalid_argument("no classifiers selected");

  std::vector<ReconstructedRow> rows;
  if (!c.reconstructed.empty()) {
    rows = read_reconstructed(c.reconstructed);
    c.samples.reset();
  } else {
    const auto samples = resolve_samples(c, data.kind, data.features.rows());
    c.samples = samples;
    for (auto idx : samples) rows.push_back({idx, reconstruct_features(data.features.row(idx), c.train).predicted});
  }
  if (rows.empty()) throw std::invalid_argument("no samples");
  for (const auto& r : rows) {
    if (r.index >= data.features.rows() || r.features.size() != data.features.cols()) {
      throw ConsistencyError("reconstructed sample " + std::to_string(r.index) + " does not match the dataset");
    }
  }
  fs::create_directories(c.out);
  write_run_json(c);

  std::vector<std::size_t> indices;
  for (const auto& r : rows) indices.push_back(r.index);
  const auto original = select_rows(data.features, indices);
  RealMatrix recon(rows.size(), data.features.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) std::copy(rows[i].features.begin(), rows[i].features.end(), recon.row(i).begin());

  const auto split = stratified_split(data.labels, c.test_fraction, c.seed);
  const auto train_x = select_rows(data.features, split.train);
  const auto test_x = select_rows(data.features, split.test);
  std::vector<int> train_y, test_y;
  for (auto i : split.train) train_y.push_back(data.labels[i]);
  for (auto i : split.test) test_y.push_back(data.labels[i]);

  std::string acc_csv = "classifier,train_size,test_size,test_accuracy,agreement\n";
  std::string agr_csv = "classifier,index,true_label,original_prediction,reconstructed_prediction,agree\n";
  for (auto kind : kinds) {
    const auto model = fit(kind, train_x, train_y);
    const double acc = accuracy(test_y, predict(model, test_x));
    const double agree = agreement_eval(model, original, recon);
    const auto p_orig = predict(model, original);
    const auto p_rec = predict(model, recon);
    const std::string name(to_string(kind));
    acc_csv += csv_join({name, std::to_string(split.train.size()), std::to_string(split.test.size()),
                         format_double(acc), format_double(agree)});
    for (std::size_t i = 0; i < rows.size(); ++i) {
      agr_csv += csv_join({name, std::to_string(rows[i].index), std::to_string(data.labels[rows[i].index]),
                           std::to_string(p_orig[i]), std::to_string(p_rec[i]), p_orig[i] == p_rec[i] ? "1" : "0"});
    }
    out << name << ": test accuracy " << format_double(acc) << ", agreement " << format_double(agree) << "\n";
  }
  write_text_file(fs::path(c.out) / "accuracy.csv", acc_csv);
  write_text_file(fs::path(c.out) / "agreement.csv", agr_csv);
  return 0;
}

Dictionary dictionary_for(const RunConfig& c) {
  if (c.dict.empty()) throw std::invalid_argument("--dict is required");
  auto d = load_dictionary(c.dict);
  return build_dictionary(std::move(d.words), c.dict_lo, c.dict_hi);
}

int cmd_hide(RunConfig c, std::ostream& out) {
  const auto dict = dictionary_for(c);
  const auto words = split_words(c.message);
  if (words.empty()) throw std::invalid_argument("--message is required");
  if (c.created.empty()) c.created = utc_timestamp_now();
  const auto archive = encode_message(words, dict, c.train, c.created);
  if (c.archive.empty()) c.archive = (fs::path(c.out) / "archive.json").string();
  fs::create_directories(c.out);
  save_archive(c.archive, archive);
  write_run_json(c);
  out << "wrote " << c.archive << " (" << archive.node_count << " nodes, " << archive.samples.size()
      << " samples)\n";
  return 0;
}

int cmd_reveal(RunConfig c, std::ostream& out) {
  const auto dict = dictionary_for(c);
  if (c.archive.empty()) throw std::invalid_argument("--archive is required");
  const auto archive = load_archive(c.archive);
  const auto truth = split_words(c.truth);
  if (!truth.empty() && truth.size() != archive.node_count) {
    throw std::invalid_argument("--truth has " + std::to_string(truth.size()) + " words, archive holds " +
                                std::to_string(archive.node_count));
  }
  const auto r = reveal_message(archive, dict, c.train);
  fs::create_directories(c.out);
  write_run_json(c);

  ojson j;
  j["words"] = r.words;
  j["learned_values"] = r.learned_values;
  j["snap_distances"] = r.snap_distances;
  j["final_cost"] = r.training.final_cost;
  std::string message;
  for (const auto& w : r.words) message += (message.empty() ? "" : " ") + w;
  out << "message: " << message << "\n";
  std::string words_csv = "position,word,learned_value,snap_distance\n";
  for (std::size_t i = 0; i < r.words.size(); ++i) {
    out << "  " << r.words[i] << "  learned " << format_double(r.learned_values[i]) << "  snap distance "
        << format_double(r.snap_distances[i]) << "\n";
    words_csv += csv_join({std::to_string(i), r.words[i], format_double(r.learned_values[i]),
                           format_double(r.snap_distances[i])});
  }
  if (!truth.empty()) {
    const double acc = retrieval_accuracy(truth, r.words);
    j["accuracy"] = acc;
    out << "accuracy: " << format_double(acc) << "%\n";
  }
  write_json_file(fs::path(c.out) / "reveal.json", j);
  write_text_file(fs::path(c.out) / "cost.csv", cost_csv(r.training));
  write_text_file(fs::path(c.out) / "words.csv", words_csv);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum graph recurrent network: feature embedding, reconstruction and message hiding"};
  app.footer(kSchemaHelp);
  app.require_subcommand(1);

  std::string config_path, out_dir, dataset, samples, message, dict, archive, truth, reconstructed;
  std::uint64_t seed = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file; flags override its values")
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "Seed for edges, initial state, times and parameter init");
    sub->add_option("--out", out_dir, "Output directory (default: out)");
  };
  auto* rec = app.add_subcommand("reconstruct", "Embed dataset samples as node weights and learn them back");
  auto* cls = app.add_subcommand("classify", "Classifier accuracy and agreement on reconstructed features");
  auto* hide = app.add_subcommand("hide", "Encode a message into a state archive");
  auto* rev = app.add_subcommand("reveal", "Recover a message from a state archive");
  for (auto* sub : {rec, cls, hide, rev}) common(sub);
  for (auto* sub : {rec, cls}) {
    sub->add_option("--dataset", dataset, "iris or mnist");
    sub->add_option("--samples", samples, "Sample indices, e.g. \"18,31,73\"");
  }
  cls->add_option("--reconstructed", reconstructed, "Directory of sample_<i>.json files from reconstruct");
  hide->add_option("--message", message, "Words to hide, space separated");
  for (auto* sub : {hide, rev}) {
    sub->add_option("--dict", dict, "Dictionary file, one word per line");
    sub->add_option("--archive", archive, "Archive path (hide default: <out>/archive.json)");
  }
  rev->add_option("--truth", truth, "Expected message, for the accuracy report");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  CLI::App* sub = app.get_subcommands().front();
  RunConfig c;
  c.command = sub->get_name();
  try {
    if (!config_path.empty()) merge_run_config(nlohmann::json::parse(read_text_file(config_path)), c);
    auto given = [&](const char* flag) { return sub->count(flag) > 0; };
    if (given("--seed")) c.seed = c.train.seed = seed;
    if (given("--out")) c.out = out_dir;
    if (sub->get_option_no_throw("--dataset") && given("--dataset")) c.dataset = dataset;
    if (sub->get_option_no_throw("--samples") && given("--samples")) c.samples = parse_indices(samples);
    if (sub->get_option_no_throw("--reconstructed") && given("--reconstructed")) c.reconstructed = reconstructed;
    if (sub->get_option_no_throw("--message") && given("--message")) c.message = message;
    if (sub->get_option_no_throw("--dict") && given("--dict")) c.dict = dict;
    if (sub->get_option_no_throw("--archive") && given("--archive")) c.archive = archive;
    if (sub->get_option_no_throw("--truth") && given("--truth")) c.truth = truth;
    c.train.validate();

    if (c.command == "reconstruct") return cmd_reconstruct(c, out);
    if (c.command == "classify") return cmd_classify(c, out);
    if (c.command == "hide") return cmd_hide(c, out);
    return cmd_reveal(c, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qgrnn
