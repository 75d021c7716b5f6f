#pragma once

// Trotterized QGRNN ansatz over a complete graph. One layer applies
//   ZZ(delta * beta1_ij)   for every pair i<j (lexicographic)
//   RZ(2 delta * beta2_i)  for every node
//   RX(2 delta)            for every node
// i.e. exp(-i delta H2) exp(-i delta H1(beta)) with H1 the ZZ + Z part and
// H2 = sum_i X_i.

#include <cstddef>
#include <span>
#include <vector>

#include "qgrnn/ising.hpp"
#include "qgrnn/state_vector.hpp"

namespace qgrnn {

class AnsatzParams {
 public:
  explicit AnsatzParams(std::size_t node_count);
  AnsatzParams(std::size_t node_count, std::vector<double> flat);

  static std::size_t edge_count_for(std::size_t node_count) { return node_count * (node_count - 1) / 2; }
  static std::size_t size_for(std::size_t node_count) { return edge_count_for(node_count) + node_count; }

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edge_count_for(node_count_); }
  std::size_t size() const noexcept { return flat_.size(); }

  // Flat layout: every edge parameter (pairs i<j in lexicographic order), then
  // every node parameter in ascending node order.
  std::span<const double> flat() const noexcept { return flat_; }
  std::span<double> flat() noexcept { return flat_; }

  std::span<const double> edge_params() const noexcept { return {flat_.data(), edge_count()}; }
  std::span<const double> node_params() const noexcept { return {flat_.data() + edge_count(), node_count_}; }

  double edge(std::size_t i, std::size_t j) const;
  double node(std::size_t i) const { return flat_.at(edge_count() + i); }
  void set_edge(std::size_t i, std::size_t j, double v);
  void set_node(std::size_t i, double v) { flat_.at(edge_count() + i) = v; }

  // Index of pair (i, j), i<j, in the lexicographic edge ordering.
  std::size_t edge_index(std::size_t i, std::size_t j) const;

  static AnsatzParams from_graph(const IsingGraph& graph);
  IsingGraph to_graph() const;

  friend bool operator==(const AnsatzParams&, const AnsatzParams&) = default;

 private:
  std::size_t node_count_;
  std::vector<double> flat_;
};

// Gate-by-gate reference layer.
StateVector apply_trotter_layer(StateVector state, const AnsatzParams& params, double delta);

// D = max(1, round(t / delta)) layers with step t / D.
StateVector apply_qgrnn(StateVector state, const AnsatzParams& params, double t, double delta);

std::size_t trotter_layer_count(double t, double delta);

// Precomputed layer for repeated application: the ZZ and Z gates are all
// diagonal and collapse into one phase table. Equal to apply_trotter_layer up
// to rounding.
class TrotterLayer {
 public:
  TrotterLayer(const AnsatzParams& params, double delta);
  TrotterLayer(std::span<const double> diagonal_energies, std::size_t node_count, double delta);

  void apply(StateVector& state) const;

 private:
  std::size_t node_count_;
  std::vector<Complex> phases_;
  double cos_;
  double sin_;
};

}  // namespace qgrnn
