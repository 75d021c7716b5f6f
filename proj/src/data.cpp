#include "qgrnn/data.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "qgrnn/errors.hpp"

namespace qgrnn {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::uint32_t read_be32(std::istream& in, const std::string& what) {
  std::array<unsigned char, 4> b{};
  if (!in.read(reinterpret_cast<char*>(b.data()), 4)) throw FormatError(what + ": truncated header");
  return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) | (std::uint32_t{b[2]} << 8) | b[3];
}

}  // namespace

Dataset load_iris_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");

  constexpr std::size_t kFeatures = 4;
  std::vector<double> values;
  Dataset ds;
  std::map<std::string, int, std::less<>> label_ids;
  std::string line;
  std::size_t line_no = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    double dummy = 0.0;
    if (first_content && !parse_double(fields[0], dummy)) {
      first_content = false;  // header
      continue;
    }
    first_content = false;
    if (fields.size() != kFeatures + 1) {
      throw ParseError(line_no, "expected " + std::to_string(kFeatures + 1) + " fields, found " +
                                    std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < kFeatures; ++c) {
      double v = 0.0;
      if (!parse_double(fields[c], v)) {
        throw ParseError(line_no, "non-numeric feature '" + std::string(fields[c]) + "'");
      }
      values.push_back(v);
    }
    const std::string label(fields[kFeatures]);
    if (label.empty()) throw ParseError(line_no, "missing class label");
    auto it = label_ids.find(label);
    if (it == label_ids.end()) {
      it = label_ids.emplace(label, static_cast<int>(ds.class_names.size())).first;
      ds.class_names.push_back(label);
    }
    ds.labels.push_back(it->second);
  }
  if (ds.labels.empty()) throw ParseError(line_no, "no data rows in '" + path.string() + "'");
  ds.features = RealMatrix(ds.labels.size(), kFeatures, std::move(values));
  return ds;
}

Dataset load_mnist_idx(const std::filesystem::path& images_path, const std::filesystem::path& labels_path) {
  std::ifstream img(images_path, std::ios::binary);
  if (!img) throw IoError("cannot open '" + images_path.string() + "'");
  std::ifstream lab(labels_path, std::ios::binary);
  if (!lab) throw IoError("cannot open '" + labels_path.string() + "'");

  const auto img_magic = read_be32(img, images_path.string());
  if (img_magic != 2051) {
    throw FormatError("'" + images_path.string() + "': image magic " + std::to_string(img_magic) + ", expected 2051");
  }
  const std::uint32_t n_images = read_be32(img, images_path.string());
  const std::uint32_t rows = read_be32(img, images_path.string());
  const std::uint32_t cols = read_be32(img, images_path.string());

  const auto lab_magic = read_be32(lab, labels_path.string());
  if (lab_magic != 2049) {
    throw FormatError("'" + labels_path.string() + "': label magic " + std::to_string(lab_magic) + ", expected 2049");
  }
  const std::uint32_t n_labels = read_be32(lab, labels_path.string());
  if (n_images != n_labels) {
    throw ConsistencyError("image count " + std::to_string(n_images) + " != label count " + std::to_string(n_labels));
  }

  const std::size_t pixels = std::size_t{rows} * cols;
  std::vector<unsigned char> raw(std::size_t{n_images} * pixels);
  if (!img.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()))) {
    throw FormatError("'" + images_path.string() + "': fewer pixel bytes than the header declares");
  }
  std::vector<unsigned char> raw_labels(n_labels);
  if (!lab.read(reinterpret_cast<char*>(raw_labels.data()), static_cast<std::streamsize>(raw_labels.size()))) {
    throw FormatError("'" + labels_path.string() + "': fewer label bytes than the header declares");
  }

  Dataset ds;
  ds.features = RealMatrix(n_images, pixels);
  auto out = ds.features.data();
  for (std::size_t k = 0; k < raw.size(); ++k) out[k] = raw[k] / 255.0;
  ds.labels.reserve(n_labels);
  for (unsigned char l : raw_labels) {
    if (l > 9) throw FormatError("label value " + std::to_string(l) + " outside 0-9");
    ds.labels.push_back(l);
  }
  return ds;
}

RealMatrix MinMaxScaler::transform(const RealMatrix& features) const {
  if (features.cols() != col_min.size()) throw std::invalid_argument("MinMaxScaler: column count mismatch");
  RealMatrix out(features.rows(), features.cols());
  for (std::size_t r = 0; r < features.rows(); ++r) {
    const auto row = transform_row(features.row(r));
    std::copy(row.begin(), row.end(), out.row(r).begin());
  }
  return out;
}

std::vector<double> MinMaxScaler::transform_row(std::span<const double> row) const {
  if (row.size() != col_min.size()) throw std::invalid_argument("MinMaxScaler: column count mismatch");
  std::vector<double> out(row.size());
  for (std::size_t c = 0; c < row.size(); ++c) {
    const double range = col_max[c] - col_min[c];
    out[c] = range > 0.0 ? lo + (row[c] - col_min[c]) / range * (hi - lo) : lo;
  }
  return out;
}

std::vector<double> MinMaxScaler::inverse_row(std::span<const double> row) const {
  if (row.size() != col_min.size()) throw std::invalid_argument("MinMaxScaler: column count mismatch");
  std::vector<double> out(row.size());
  for (std::size_t c = 0; c < row.size(); ++c) {
    out[c] = col_min[c] + (row[c] - lo) / (hi - lo) * (col_max[c] - col_min[c]);
  }
  return out;
}

ScaledFeatures minmax_scale(const RealMatrix& features, double lo, double hi) {
  if (!(hi > lo)) throw std::invalid_argument("minmax_scale: hi must exceed lo");
  MinMaxScaler scaler;
  scaler.lo = lo;
  scaler.hi = hi;
  scaler.col_min.assign(features.cols(), 0.0);
  scaler.col_max.assign(features.cols(), 0.0);
  for (std::size_t c = 0; c < features.cols(); ++c) {
    double mn = features.rows() ? features(0, c) : 0.0;
    double mx = mn;
    for (std::size_t r = 1; r < features.rows(); ++r) {
      mn = std::min(mn, features(r, c));
      mx = std::max(mx, features(r, c));
    }
    scaler.col_min[c] = mn;
    scaler.col_max[c] = mx;
  }
  RealMatrix scaled = scaler.transform(features);
  // Clamp the last-ulp overshoot of the affine map.
  for (auto& v : scaled.data()) v = std::clamp(v, lo, hi);
  return {std::move(scaled), std::move(scaler)};
}

RealMatrix select_rows(const RealMatrix& m, std::span<const std::size_t> rows) {
  RealMatrix out(rows.size(), m.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k] >= m.rows()) throw std::invalid_argument("select_rows: row " + std::to_string(rows[k]) + " out of range");
    std::copy(m.row(rows[k]).begin(), m.row(rows[k]).end(), out.row(k).begin());
  }
  return out;
}

}  // namespace qgrnn
