#include "qgrnn/ising.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace qgrnn {

IsingGraph::IsingGraph(std::size_t node_count) : node_weights_(node_count, 0.0) {
  if (node_count == 0 || node_count > kMaxQubits) throw std::invalid_argument("IsingGraph: bad node count");
}

IsingGraph::IsingGraph(std::vector<double> node_weights, std::map<Edge, double> edge_weights)
    : node_weights_(std::move(node_weights)) {
  if (node_weights_.empty() || node_weights_.size() > kMaxQubits) {
    throw std::invalid_argument("IsingGraph: bad node count");
  }
  for (const auto& [edge, w] : edge_weights) {
    if (edge.first >= edge.second) throw std::invalid_argument("IsingGraph: edge keys must satisfy i < j");
    set_edge_weight(edge.first, edge.second, w);
  }
}

IsingGraph IsingGraph::complete_random_edges(std::vector<double> node_weights, std::uint64_t seed,
                                             double low, double high) {
  IsingGraph g(std::move(node_weights), {});
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(low, high);
  for (std::size_t i = 0; i < g.node_count(); ++i)
    for (std::size_t j = i + 1; j < g.node_count(); ++j) g.edge_weights_[{i, j}] = dist(rng);
  return g;
}

void IsingGraph::set_node_weight(std::size_t node, double w) {
  if (node >= node_count()) throw std::invalid_argument("IsingGraph: node out of range");
  node_weights_[node] = w;
}

void IsingGraph::set_edge_weight(std::size_t i, std::size_t j, double w) {
  if (i == j) throw std::invalid_argument("IsingGraph: self-loop on node " + std::to_string(i));
  if (i > j) std::swap(i, j);
  if (j >= node_count()) throw std::invalid_argument("IsingGraph: edge endpoint out of range");
  edge_weights_[{i, j}] = w;
}

std::vector<double> IsingGraph::diagonal_energies() const {
  const std::size_t n = node_count();
  std::vector<double> diag(std::size_t{1} << n, 0.0);
  for (std::size_t b = 0; b < diag.size(); ++b) {
    double e = 0.0;
    for (const auto& [edge, w] : edge_weights_) {
      const bool same = ((b >> edge.first) & 1U) == ((b >> edge.second) & 1U);
      e += same ? w : -w;
    }
    for (std::size_t i = 0; i < n; ++i) e += ((b >> i) & 1U) ? -node_weights_[i] : node_weights_[i];
    diag[b] = e;
  }
  return diag;
}

HamiltonianMatrix build_hamiltonian(const IsingGraph& graph) {
  const std::size_t n = graph.node_count();
  const std::size_t dim = std::size_t{1} << n;
  HamiltonianMatrix h(dim, dim);
  const auto diag = graph.diagonal_energies();
  for (std::size_t b = 0; b < dim; ++b) {
    h(b, b) = diag[b];
    for (std::size_t q = 0; q < n; ++q) h(b, b ^ (std::size_t{1} << q)) = 1.0;
  }
  return h;
}

ExactPropagator::ExactPropagator(const HamiltonianMatrix& h) : eig_(hermitian_eigendecompose(h)) {}

StateVector ExactPropagator::evolve(const StateVector& initial, double t) const {
  const std::size_t dim = dimension();
  if (initial.dimension() != dim) {
    throw std::invalid_argument("evolve: state dimension " + std::to_string(initial.dimension()) +
                                " does not match Hamiltonian dimension " + std::to_string(dim));
  }
  if (!(t >= 0.0)) throw std::invalid_argument("evolve: time must be non-negative");
  const auto& v = eig_.vectors;
  // c = V^dagger psi, scaled by exp(-i lambda t), mapped back with V.
  std::vector<std::complex<double>> coeff(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    std::complex<double> s{};
    for (std::size_t r = 0; r < dim; ++r) s += std::conj(v(r, k)) * initial[r];
    coeff[k] = s * std::polar(1.0, -eig_.values[k] * t);
  }
  std::vector<std::complex<double>> out(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    std::complex<double> s{};
    for (std::size_t k = 0; k < dim; ++k) s += v(r, k) * coeff[k];
    out[r] = s;
  }
  return StateVector::from_amplitudes(initial.qubit_count(), std::move(out));
}

StateVector evolve_exact(const HamiltonianMatrix& h, const StateVector& initial, double t) {
  if (initial.dimension() != h.rows()) throw std::invalid_argument("evolve_exact: dimension mismatch");
  return ExactPropagator(h).evolve(initial, t);
}

std::vector<TimeEvolvedSample> sample_evolution(const IsingGraph& graph, const StateVector& initial,
                                                std::span<const double> times) {
  if (initial.qubit_count() != graph.node_count()) {
    throw std::invalid_argument("sample_evolution: initial state qubit count != node count");
  }
  for (double t : times) {
    if (!(t >= 0.0)) throw std::invalid_argument("sample_evolution: negative time");
  }
  const ExactPropagator propagator(build_hamiltonian(graph));
  std::vector<TimeEvolvedSample> samples;
  samples.reserve(times.size());
  for (double t : times) samples.push_back({t, propagator.evolve(initial, t)});
  return samples;
}

std::vector<double> draw_times(std::size_t n, double t_max, std::uint64_t seed) {
  if (!(t_max > 0.0)) throw std::invalid_argument("draw_times: t_max must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> times(n);
  for (auto& t : times) t = t_max * (1.0 - unit(rng));  // (0, t_max]
  std::sort(times.begin(), times.end());
  return times;
}

double energy_expectation(const HamiltonianMatrix& h, const StateVector& state) {
  if (state.dimension() != h.rows()) throw std::invalid_argument("energy_expectation: dimension mismatch");
  std::complex<double> e{};
  for (std::size_t r = 0; r < h.rows(); ++r) {
    std::complex<double> row{};
    for (std::size_t c = 0; c < h.cols(); ++c) row += h(r, c) * state[c];
    e += std::conj(state[r]) * row;
  }
  return e.real();
}

}  // namespace qgrnn
