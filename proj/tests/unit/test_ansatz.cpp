#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "qgrnn/ansatz.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace qgrnn;
using oracle::C;

namespace {

AnsatzParams random_ansatz(gen::Gen& g, std::size_t n) {
  AnsatzParams p(n);
  for (auto& v : p.flat()) v = g.uniform(-2, 2);
  return p;
}

double max_diff(std::span<const Complex> a, std::span<const Complex> b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("parameter layout") {
  AnsatzParams p(4);
  CHECK(p.size() == 10);
  CHECK(p.edge_count() == 6);
  CHECK(p.edge_index(0, 1) == 0);
  CHECK(p.edge_index(0, 3) == 2);
  CHECK(p.edge_index(1, 2) == 3);
  CHECK(p.edge_index(2, 3) == 5);
  p.set_edge(3, 2, 0.7);
  CHECK(p.flat()[5] == 0.7);
  p.set_node(1, -0.3);
  CHECK(p.flat()[7] == -0.3);
  CHECK_THROWS_AS(AnsatzParams(3, std::vector<double>(5)), std::invalid_argument);
  CHECK_THROWS_AS(p.edge_index(1, 1), std::invalid_argument);

  gen::Gen g(2);
  const auto graph = g.graph(4);
  const auto back = AnsatzParams::from_graph(graph).to_graph();
  CHECK(back.edge_weights() == graph.edge_weights());
  CHECK(std::vector<double>(back.node_weights().begin(), back.node_weights().end()) ==
        std::vector<double>(graph.node_weights().begin(), graph.node_weights().end()));
}

TEST_CASE("zero parameters leave only the transverse rotations") {
  gen::Gen g(6);
  const auto s = g.state(3);
  const double d = 0.07;
  auto expected = s;
  for (std::size_t q = 0; q < 3; ++q) expected = apply_rx(std::move(expected), q, 2 * d);
  CHECK(max_diff(apply_trotter_layer(s, AnsatzParams(3), d).amplitudes(), expected.amplitudes()) < 1e-14);
}

TEST_CASE("layer equals expm(-i delta H2) expm(-i delta H1) on dense matrices") {
  gen::Gen g(12);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = g.index(1, 3);
    const auto p = random_ansatz(g, n);
    const double delta = g.uniform(0.001, 0.3);
    const auto s = g.state(n);
    auto h1 = oracle::kron_hamiltonian(p.to_graph());
    oracle::CMat h2(h1.rows(), h1.cols());
    for (std::size_t q = 0; q < n; ++q) h2 = oracle::add(h2, oracle::embed(oracle::pauli_x(), q, n));
    h1 = oracle::add(h1, h2, -1.0);
    const auto u = oracle::mul(oracle::expm_minus_i(h2, delta), oracle::expm_minus_i(h1, delta));
    const auto want = oracle::apply(u, s.amplitudes());
    CHECK(max_diff(apply_trotter_layer(s, p, delta).amplitudes(), want) <= 1e-10);

    auto fused = s;
    TrotterLayer(p, delta).apply(fused);
    CHECK(max_diff(fused.amplitudes(), want) <= 1e-10);
  }
}

TEST_CASE("apply_qgrnn layer count and errors") {
  CHECK(trotter_layer_count(0.01, 0.01) == 1);
  CHECK(trotter_layer_count(0.5, 0.01) == 50);
  CHECK(trotter_layer_count(0.001, 0.01) == 1);
  CHECK(trotter_layer_count(0.234, 0.01) == 23);
  CHECK_THROWS_AS(apply_qgrnn(StateVector(2), AnsatzParams(2), 0.0, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(apply_qgrnn(StateVector(2), AnsatzParams(2), 0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(apply_trotter_layer(StateVector(3), AnsatzParams(2), 0.1), std::invalid_argument);

  gen::Gen g(1);
  const auto p = random_ansatz(g, 3);
  const auto s = g.state(3);
  CHECK(max_diff(apply_qgrnn(s, p, 0.01, 0.01).amplitudes(), apply_trotter_layer(s, p, 0.01).amplitudes()) < 1e-13);
  // Non-integer t/delta tiles [0, t] with equal steps.
  auto manual = s;
  for (int k = 0; k < 23; ++k) manual = apply_trotter_layer(std::move(manual), p, 0.234 / 23);
  CHECK(max_diff(apply_qgrnn(s, p, 0.234, 0.01).amplitudes(), manual.amplitudes()) < 1e-12);
}

TEST_CASE("property: fine steps approach exact evolution") {
  gen::Gen g(19);
  for (int trial = 0; trial < 5; ++trial) {
    const auto graph = g.graph(3);
    const auto s = g.state(3);
    const auto exact = evolve_exact(build_hamiltonian(graph), s, 0.3);
    const auto approx = apply_qgrnn(s, AnsatzParams::from_graph(graph), 0.3, 1e-4);
    CHECK(std::norm(inner_product(exact, approx)) >= 1 - 1e-6);
  }
}

TEST_CASE("property: deficit shrinks as delta halves and stays above 0.999 at delta 0.01") {
  gen::Gen g(29);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t n = g.index(2, 6);
    const auto graph = g.graph(n, 0.0, 5.0);
    const auto s = g.state(n);
    const auto exact = evolve_exact(build_hamiltonian(graph), s, 0.5);
    const auto p = AnsatzParams::from_graph(graph);
    double prev = 2.0;
    for (double delta : {0.04, 0.02, 0.01, 0.005}) {
      const double deficit = 1 - std::norm(inner_product(exact, apply_qgrnn(s, p, 0.5, delta)));
      CHECK(deficit <= prev + 1e-12);
      if (delta == 0.01) CHECK(deficit <= 1e-3);
      prev = deficit;
    }
  }
}

TEST_CASE("property: deterministic and norm-preserving over 50 layers") {
  gen::Gen g(37);
  const auto p = random_ansatz(g, 5);
  const auto s = g.state(5);
  const auto a = apply_qgrnn(s, p, 0.5, 0.01);
  const auto b = apply_qgrnn(s, p, 0.5, 0.01);
  CHECK(a == b);
  CHECK(a.norm() == doctest::Approx(1.0).epsilon(1e-9));
}
