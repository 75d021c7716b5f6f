#pragma once

// Seeded value generators for property tests.

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "qgrnn/ising.hpp"
#include "qgrnn/matrix.hpp"
#include "qgrnn/state_vector.hpp"

namespace gen {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::size_t index(std::size_t lo, std::size_t hi) {  // inclusive
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  std::uint64_t seed() { return rng_(); }

  qgrnn::StateVector state(std::size_t n) { return qgrnn::random_state(n, seed()); }

  qgrnn::IsingGraph graph(std::size_t n, double node_lo = -2.0, double node_hi = 2.0) {
    std::vector<double> nodes(n);
    for (auto& w : nodes) w = uniform(node_lo, node_hi);
    return qgrnn::IsingGraph::complete_random_edges(nodes, seed());
  }

  std::vector<std::complex<double>> amplitudes(std::size_t count) {
    std::vector<std::complex<double>> v(count);
    for (auto& a : v) a = {uniform(-1, 1), uniform(-1, 1)};
    return v;
  }

  qgrnn::Matrix<std::complex<double>> hermitian(std::size_t d) {
    qgrnn::Matrix<std::complex<double>> m(d, d);
    for (std::size_t r = 0; r < d; ++r) {
      m(r, r) = uniform(-3, 3);
      for (std::size_t c = r + 1; c < d; ++c) {
        m(r, c) = {uniform(-1, 1), uniform(-1, 1)};
        m(c, r) = std::conj(m(r, c));
      }
    }
    return m;
  }

  qgrnn::Matrix<double> real_matrix(std::size_t rows, std::size_t cols, double lo = -1, double hi = 1) {
    qgrnn::Matrix<double> m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = uniform(lo, hi);
    return m;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace gen
