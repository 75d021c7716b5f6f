#include "qgrnn/ansatz.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qgrnn/kernels.hpp"

namespace qgrnn {

AnsatzParams::AnsatzParams(std::size_t node_count) : node_count_(node_count) {
  if (node_count == 0 || node_count > kMaxQubits) throw std::invalid_argument("AnsatzParams: bad node count");
  flat_.assign(size_for(node_count), 0.0);
}

AnsatzParams::AnsatzParams(std::size_t node_count, std::vector<double> flat)
    : node_count_(node_count), flat_(std::move(flat)) {
  if (node_count == 0 || node_count > kMaxQubits) throw std::invalid_argument("AnsatzParams: bad node count");
  if (flat_.size() != size_for(node_count)) {
    throw std::invalid_argument("AnsatzParams: expected " + std::to_string(size_for(node_count)) +
                                " parameters, got " + std::to_string(flat_.size()));
  }
}

std::size_t AnsatzParams::edge_index(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  if (i == j || j >= node_count_) throw std::invalid_argument("AnsatzParams: bad edge");
  // Pairs (0,1..n-1), (1,2..n-1), ...: rows before i hold sum_{r<i} (n-1-r).
  return i * (2 * node_count_ - i - 1) / 2 + (j - i - 1);
}

double AnsatzParams::edge(std::size_t i, std::size_t j) const { return flat_[edge_index(i, j)]; }
void AnsatzParams::set_edge(std::size_t i, std::size_t j, double v) { flat_[edge_index(i, j)] = v; }

AnsatzParams AnsatzParams::from_graph(const IsingGraph& graph) {
  AnsatzParams p(graph.node_count());
  for (const auto& [edge, w] : graph.edge_weights()) p.set_edge(edge.first, edge.second, w);
  for (std::size_t i = 0; i < graph.node_count(); ++i) p.set_node(i, graph.node_weights()[i]);
  return p;
}

IsingGraph AnsatzParams::to_graph() const {
  std::vector<double> nodes(node_params().begin(), node_params().end());
  IsingGraph g(std::move(nodes), {});
  for (std::size_t i = 0; i < node_count_; ++i)
    for (std::size_t j = i + 1; j < node_count_; ++j) g.set_edge_weight(i, j, edge(i, j));
  return g;
}

StateVector apply_trotter_layer(StateVector state, const AnsatzParams& params, double delta) {
  if (state.qubit_count() != params.node_count()) {
    throw std::invalid_argument("apply_trotter_layer: state has " + std::to_string(state.qubit_count()) +
                                " qubits, params describe " + std::to_string(params.node_count()) + " nodes");
  }
  if (!(delta > 0.0)) throw std::invalid_argument("apply_trotter_layer: delta must be positive");
  const std::size_t n = params.node_count();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) state = apply_zz(std::move(state), i, j, delta * params.edge(i, j));
  for (std::size_t i = 0; i < n; ++i) state = apply_rz(std::move(state), i, 2.0 * delta * params.node(i));
  for (std::size_t i = 0; i < n; ++i) state = apply_rx(std::move(state), i, 2.0 * delta);
  return state;
}

std::size_t trotter_layer_count(double t, double delta) {
  const double d = std::round(t / delta);
  return d < 1.0 ? 1 : static_cast<std::size_t>(d);
}

TrotterLayer::TrotterLayer(const AnsatzParams& params, double delta)
    : TrotterLayer(params.to_graph().diagonal_energies(), params.node_count(), delta) {}

TrotterLayer::TrotterLayer(std::span<const double> diagonal_energies, std::size_t node_count, double delta)
    : node_count_(node_count), phases_(diagonal_energies.size()), cos_(std::cos(delta)), sin_(std::sin(delta)) {
  if (diagonal_energies.size() != (std::size_t{1} << node_count)) {
    throw std::invalid_argument("TrotterLayer: diagonal size mismatch");
  }
  for (std::size_t b = 0; b < phases_.size(); ++b) phases_[b] = std::polar(1.0, -delta * diagonal_energies[b]);
}

void TrotterLayer::apply(StateVector& state) const {
  const auto& k = kernels::active();
  auto amps = state.mutable_amplitudes();
  k.multiply_diagonal(amps, phases_);
  // RX(2 delta) has cos(delta), sin(delta) entries.
  for (std::size_t q = 0; q < node_count_; ++q) k.rotate_x(amps, std::size_t{1} << q, cos_, sin_);
}

StateVector apply_qgrnn(StateVector state, const AnsatzParams& params, double t, double delta) {
  if (!(t > 0.0)) throw std::invalid_argument("apply_qgrnn: t must be positive");
  if (!(delta > 0.0)) throw std::invalid_argument("apply_qgrnn: delta must be positive");
  if (state.qubit_count() != params.node_count()) throw std::invalid_argument("apply_qgrnn: dimension mismatch");
  const std::size_t layers = trotter_layer_count(t, delta);
  const TrotterLayer layer(params, t / static_cast<double>(layers));
  for (std::size_t k = 0; k < layers; ++k) layer.apply(state);
  return state;
}

}  // namespace qgrnn
