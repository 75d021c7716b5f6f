#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>

#include "doctest.h"
#include "qgrnn/data.hpp"
#include "qgrnn/errors.hpp"
#include "qgrnn/io.hpp"
#include "support/generators.hpp"
#include "support/tempdir.hpp"

using namespace qgrnn;
using testing_support::TempDir;

namespace {

const std::filesystem::path kData = QGRNN_DATA_DIR;

void put_be32(std::ofstream& f, std::uint32_t v) {
  const unsigned char b[4] = {static_cast<unsigned char>(v >> 24), static_cast<unsigned char>(v >> 16),
                              static_cast<unsigned char>(v >> 8), static_cast<unsigned char>(v)};
  f.write(reinterpret_cast<const char*>(b), 4);
}

void write_idx_images(const std::filesystem::path& p, std::uint32_t magic, std::uint32_t count) {
  std::ofstream f(p, std::ios::binary);
  put_be32(f, magic);
  put_be32(f, count);
  put_be32(f, 28);
  put_be32(f, 28);
  for (std::uint32_t i = 0; i < count * 784; ++i) f.put(static_cast<char>(i % 256));
}

void write_idx_labels(const std::filesystem::path& p, std::uint32_t magic, std::uint32_t count) {
  std::ofstream f(p, std::ios::binary);
  put_be32(f, magic);
  put_be32(f, count);
  for (std::uint32_t i = 0; i < count; ++i) f.put(static_cast<char>(i % 10));
}

// Top-k eigenpairs of a small symmetric matrix by power iteration with
// deflation; independent of the Jacobi solver.
std::vector<std::vector<double>> power_components(Matrix<double> a, std::size_t k) {
  const std::size_t d = a.rows();
  std::vector<std::vector<double>> out;
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<double> v(d, 1.0);
    v[c % d] += 0.5;
    double lambda = 0;
    for (int it = 0; it < 20000; ++it) {
      std::vector<double> w(d, 0.0);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t j = 0; j < d; ++j) w[r] += a(r, j) * v[j];
      double n = 0;
      for (double x : w) n += x * x;
      n = std::sqrt(n);
      for (auto& x : w) x /= n;
      lambda = n;
      v = w;
    }
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t j = 0; j < d; ++j) a(r, j) -= lambda * v[r] * v[j];
    out.push_back(v);
  }
  return out;
}

}  // namespace

TEST_CASE("iris csv") {
  const auto d = load_iris_csv(kData / "iris.csv");
  CHECK(d.sample_count() == 150);
  CHECK(d.feature_count() == 4);
  CHECK(d.class_names.size() == 3);
  CHECK(d.labels.front() == 0);
  CHECK(d.labels.back() == 2);
  CHECK(d.features(0, 0) == doctest::Approx(5.1));
}

TEST_CASE("iris csv errors") {
  TempDir tmp;
  write_text_file(tmp / "empty.csv", "");
  CHECK_THROWS_AS(load_iris_csv(tmp / "empty.csv"), ParseError);

  write_text_file(tmp / "bad.csv", "a,b,c,d,label\n5.1,3.5,1.4,0.2,x\n4.9,abc,1.4,0.2,x\n");
  try {
    load_iris_csv(tmp / "bad.csv");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }

  write_text_file(tmp / "short.csv", "5.1,3.5,1.4,x\n");
  CHECK_THROWS_AS(load_iris_csv(tmp / "short.csv"), ParseError);

  CHECK_THROWS_AS(load_iris_csv(tmp / "missing.csv"), IoError);

  write_text_file(tmp / "noheader.csv", "1,2,3,4,b\n5,6,7,8,a\n");
  const auto d = load_iris_csv(tmp / "noheader.csv");
  CHECK(d.sample_count() == 2);
  CHECK(d.labels == std::vector<int>{0, 1});
}

TEST_CASE("mnist idx") {
  TempDir tmp;
  write_idx_images(tmp / "img", 2051, 10);
  write_idx_labels(tmp / "lbl", 2049, 10);
  const auto d = load_mnist_idx(tmp / "img", tmp / "lbl");
  CHECK(d.sample_count() == 10);
  CHECK(d.feature_count() == 784);
  CHECK(d.features(0, 255) == doctest::Approx(1.0));
  CHECK(d.labels[3] == 3);

  write_idx_images(tmp / "badimg", 2049, 10);
  CHECK_THROWS_AS(load_mnist_idx(tmp / "badimg", tmp / "lbl"), FormatError);
  write_idx_labels(tmp / "badlbl", 2051, 10);
  CHECK_THROWS_AS(load_mnist_idx(tmp / "img", tmp / "badlbl"), FormatError);
  write_idx_labels(tmp / "nine", 2049, 9);
  CHECK_THROWS_AS(load_mnist_idx(tmp / "img", tmp / "nine"), ConsistencyError);
  CHECK_THROWS_AS(load_mnist_idx(tmp / "nothing", tmp / "lbl"), IoError);

  const auto real = load_mnist_idx(kData / "mnist/mnist5k-images-idx3-ubyte", kData / "mnist/mnist5k-labels-idx1-ubyte");
  CHECK(real.sample_count() == 5000);
  CHECK(real.feature_count() == 784);
}

TEST_CASE("minmax_scale") {
  Matrix<double> m(3, 2);
  m(0, 0) = 0; m(1, 0) = 10; m(2, 0) = 5;
  m(0, 1) = 7; m(1, 1) = 7;  m(2, 1) = 7;
  const auto s = minmax_scale(m);
  CHECK(s.scaled(0, 0) == 0.0);
  CHECK(s.scaled(1, 0) == 5.0);
  CHECK(s.scaled(2, 0) == doctest::Approx(2.5));
  for (std::size_t r = 0; r < 3; ++r) CHECK(s.scaled(r, 1) == 0.0);
  const auto row = s.scaler.inverse_row(s.scaled.row(2));
  CHECK(row[0] == doctest::Approx(5.0));
  CHECK_THROWS_AS(minmax_scale(m, 1.0, 1.0), std::invalid_argument);

  const auto iris = load_iris_csv(kData / "iris.csv");
  const auto scaled = minmax_scale(iris.features);
  // First Iris row in [0, 5]: sepal length 5.1 over range [4.3, 7.9].
  CHECK(scaled.scaled(0, 0) == doctest::Approx(5 * 0.8 / 3.6));
}

TEST_CASE("property: scaling stays in range and is monotone") {
  gen::Gen g(50);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = g.real_matrix(g.index(2, 30), g.index(1, 5), -100, 100);
    const auto s = minmax_scale(m, 0, 5);
    for (std::size_t c = 0; c < m.cols(); ++c)
      for (std::size_t r = 0; r < m.rows(); ++r) {
        CHECK(s.scaled(r, c) >= -1e-12);
        CHECK(s.scaled(r, c) <= 5 + 1e-12);
        for (std::size_t q = 0; q < m.rows(); ++q)
          if (m(r, c) < m(q, c)) CHECK(s.scaled(r, c) <= s.scaled(q, c));
      }
  }
}

TEST_CASE("pca examples") {
  Matrix<double> line(5, 2);
  for (std::size_t i = 0; i < 5; ++i) line(i, 0) = line(i, 1) = static_cast<double>(i);
  const auto m = pca_fit(line, 2);
  const double r = 1 / std::sqrt(2.0);
  CHECK(m.components(0, 0) == doctest::Approx(r));
  CHECK(m.components(0, 1) == doctest::Approx(r));
  CHECK(m.explained_variance[1] == doctest::Approx(0.0).scale(1.0));

  const auto proj = pca_transform(m, select_rows(line, std::vector<std::size_t>{2}));
  CHECK(proj(0, 0) == doctest::Approx(0.0).scale(1.0));
  CHECK_THROWS_AS(pca_fit(line, 3), std::invalid_argument);
  CHECK_THROWS_AS(pca_fit(line, 0), std::invalid_argument);
  CHECK_THROWS_AS(pca_transform(m, Matrix<double>(1, 3)), std::invalid_argument);
}

TEST_CASE("pca against a power-iteration oracle") {
  gen::Gen g(51);
  const auto x = g.real_matrix(20, 8);
  const auto m = pca_fit(x, 3);
  Matrix<double> cov(8, 8);
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = 0; b < 8; ++b) {
      double s = 0;
      for (std::size_t r = 0; r < 20; ++r) s += (x(r, a) - m.mean[a]) * (x(r, b) - m.mean[b]);
      cov(a, b) = s / 19.0;
    }
  const auto ref = power_components(cov, 3);
  for (std::size_t k = 0; k < 3; ++k) {
    double dot = 0;
    for (std::size_t j = 0; j < 8; ++j) dot += m.components(k, j) * ref[k][j];
    CHECK(std::abs(dot) == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("property: full-rank pca is complete and invertible") {
  gen::Gen g(52);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t d = g.index(2, 6);
    const auto x = g.real_matrix(g.index(d + 1, 20), d, -3, 3);
    const auto m = pca_fit(x, d);
    double sum = 0;
    for (std::size_t k = 0; k < d; ++k) {
      sum += m.explained_variance[k];
      if (k) CHECK(m.explained_variance[k - 1] >= m.explained_variance[k]);
      for (std::size_t l = 0; l < d; ++l) {
        double dot = 0;
        for (std::size_t j = 0; j < d; ++j) dot += m.components(k, j) * m.components(l, j);
        CHECK(dot == doctest::Approx(k == l ? 1.0 : 0.0).scale(1.0).epsilon(1e-8));
      }
    }
    CHECK(sum == doctest::Approx(m.total_variance).epsilon(1e-8));
    const auto p = pca_transform(m, x);
    for (std::size_t r = 0; r < x.rows(); ++r)
      for (std::size_t j = 0; j < d; ++j) {
        double back = 0;
        for (std::size_t k = 0; k < d; ++k) back += p(r, k) * m.components(k, j);
        CHECK(back == doctest::Approx(x(r, j) - m.mean[j]).scale(1.0).epsilon(1e-8));
      }
    const auto again = pca_fit(x, d);
    CHECK(again.components == m.components);
  }
}
