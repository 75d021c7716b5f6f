#pragma once

// Transverse-field Ising graph Hamiltonians
//
//   H(alpha) = sum_{i<j} alpha1_ij Z_i Z_j + sum_i alpha2_i Z_i + sum_i X_i
//
// with Z eigenvalue +1 on bit 0 and -1 on bit 1, plus exact time evolution
// U(t) = exp(-i t H) through a Jacobi eigendecomposition.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "qgrnn/eigen.hpp"
#include "qgrnn/matrix.hpp"
#include "qgrnn/state_vector.hpp"

namespace qgrnn {

using HamiltonianMatrix = Matrix<std::complex<double>>;
using Edge = std::pair<std::size_t, std::size_t>;

class IsingGraph {
 public:
  explicit IsingGraph(std::size_t node_count);
  // Edge keys must satisfy i < j.
  IsingGraph(std::vector<double> node_weights, std::map<Edge, double> edge_weights);

  // Every pair i<j gets an edge, weights from U[low, high] with the given seed.
  static IsingGraph complete_random_edges(std::vector<double> node_weights, std::uint64_t seed,
                                          double low = -1.0, double high = 1.0);

  std::size_t node_count() const noexcept { return node_weights_.size(); }
  std::span<const double> node_weights() const noexcept { return node_weights_; }
  const std::map<Edge, double>& edge_weights() const noexcept { return edge_weights_; }

  void set_node_weight(std::size_t node, double w);
  // Accepts (i, j) in either order; stored as (min, max).
  void set_edge_weight(std::size_t i, std::size_t j, double w);

  // Diagonal of the ZZ + Z part, one entry per basis index.
  std::vector<double> diagonal_energies() const;

 private:
  std::vector<double> node_weights_;
  std::map<Edge, double> edge_weights_;
};

HamiltonianMatrix build_hamiltonian(const IsingGraph& graph);

// exp(-i t H) applied through a cached eigendecomposition of H.
class ExactPropagator {
 public:
  explicit ExactPropagator(const HamiltonianMatrix& h);

  std::size_t dimension() const noexcept { return eig_.values.size(); }
  const Eigensystem<std::complex<double>>& eigensystem() const noexcept { return eig_; }

  StateVector evolve(const StateVector& initial, double t) const;

 private:
  Eigensystem<std::complex<double>> eig_;
};

StateVector evolve_exact(const HamiltonianMatrix& h, const StateVector& initial, double t);

struct TimeEvolvedSample {
  double time = 0.0;
  StateVector state;
};

// One exact-evolution sample per entry of `times`, in input order.
std::vector<TimeEvolvedSample> sample_evolution(const IsingGraph& graph, const StateVector& initial,
                                                std::span<const double> times);

// n times drawn uniformly from (0, t_max], sorted ascending.
std::vector<double> draw_times(std::size_t n, double t_max, std::uint64_t seed);

// <psi| H |psi>
double energy_expectation(const HamiltonianMatrix& h, const StateVector& state);

}  // namespace qgrnn
