#include "qgrnn/state_vector.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

#include "qgrnn/kernels.hpp"

namespace qgrnn {
namespace {

void check_qubit(const StateVector& state, std::size_t qubit, const char* what) {
  if (qubit >= state.qubit_count()) {
    throw std::invalid_argument(std::string(what) + ": qubit " + std::to_string(qubit) +
                                " out of range for " + std::to_string(state.qubit_count()) +
                                "-qubit state");
  }
}

std::size_t dimension_for(std::size_t qubit_count) {
  if (qubit_count == 0 || qubit_count > kMaxQubits) {
    throw std::invalid_argument("qubit_count must be in [1, " + std::to_string(kMaxQubits) +
                                "], got " + std::to_string(qubit_count));
  }
  return std::size_t{1} << qubit_count;
}

}  // namespace

StateVector::StateVector(std::size_t qubit_count)
    : qubit_count_(qubit_count), amplitudes_(dimension_for(qubit_count)) {
  amplitudes_[0] = 1.0;
}

StateVector::StateVector(std::size_t qubit_count, std::vector<Complex> amplitudes)
    : qubit_count_(qubit_count), amplitudes_(std::move(amplitudes)) {}

StateVector StateVector::from_amplitudes(std::size_t qubit_count, std::vector<Complex> amplitudes,
                                         double norm_tolerance) {
  const std::size_t dim = dimension_for(qubit_count);
  if (amplitudes.size() != dim) {
    throw std::invalid_argument("expected " + std::to_string(dim) + " amplitudes, got " +
                                std::to_string(amplitudes.size()));
  }
  StateVector state(qubit_count, std::move(amplitudes));
  const double n = state.norm();
  if (!(std::abs(n - 1.0) <= norm_tolerance)) {
    throw std::invalid_argument("state norm " + std::to_string(n) + " deviates from 1");
  }
  return state;
}

StateVector StateVector::basis(std::size_t qubit_count, std::size_t index) {
  const std::size_t dim = dimension_for(qubit_count);
  if (index >= dim) throw std::invalid_argument("basis index out of range");
  std::vector<Complex> amps(dim);
  amps[index] = 1.0;
  return StateVector(qubit_count, std::move(amps));
}

double StateVector::norm() const { return std::sqrt(kernels::active().norm_squared(amplitudes_)); }

StateVector random_state(std::size_t qubit_count, std::uint64_t seed) {
  const std::size_t dim = dimension_for(qubit_count);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> amps(dim);
  double sum = 0.0;
  for (auto& a : amps) {
    const double re = normal(rng);
    const double im = normal(rng);
    a = {re, im};
    sum += re * re + im * im;
  }
  const double scale = 1.0 / std::sqrt(sum);
  for (auto& a : amps) a *= scale;
  return StateVector::from_amplitudes(qubit_count, std::move(amps));
}

StateVector apply_rx(StateVector state, std::size_t qubit, double theta) {
  check_qubit(state, qubit, "apply_rx");
  kernels::active().rotate_x(state.mutable_amplitudes(), std::size_t{1} << qubit,
                             std::cos(theta / 2), std::sin(theta / 2));
  return state;
}

StateVector apply_rz(StateVector state, std::size_t qubit, double theta) {
  check_qubit(state, qubit, "apply_rz");
  const Complex phase0 = std::polar(1.0, -theta / 2);
  const Complex phase1 = std::polar(1.0, theta / 2);
  const std::size_t mask = std::size_t{1} << qubit;
  auto amps = state.mutable_amplitudes();
  for (std::size_t k = 0; k < amps.size(); ++k) amps[k] *= (k & mask) ? phase1 : phase0;
  return state;
}

StateVector apply_zz(StateVector state, std::size_t qubit_i, std::size_t qubit_j, double phi) {
  check_qubit(state, qubit_i, "apply_zz");
  check_qubit(state, qubit_j, "apply_zz");
  if (qubit_i == qubit_j) throw std::invalid_argument("apply_zz: qubits must differ");
  const Complex same = std::polar(1.0, -phi);
  const Complex differ = std::polar(1.0, phi);
  auto amps = state.mutable_amplitudes();
  for (std::size_t k = 0; k < amps.size(); ++k) {
    const bool bi = (k >> qubit_i) & 1U;
    const bool bj = (k >> qubit_j) & 1U;
    amps[k] *= (bi == bj) ? same : differ;
  }
  return state;
}

StateVector apply_hadamard(StateVector state, std::size_t qubit) {
  check_qubit(state, qubit, "apply_hadamard");
  const double r = std::numbers::sqrt2 / 2;
  const std::size_t stride = std::size_t{1} << qubit;
  auto amps = state.mutable_amplitudes();
  for (std::size_t block = 0; block < amps.size(); block += 2 * stride) {
    for (std::size_t k = block; k < block + stride; ++k) {
      const Complex a0 = amps[k];
      const Complex a1 = amps[k + stride];
      amps[k] = r * (a0 + a1);
      amps[k + stride] = r * (a0 - a1);
    }
  }
  return state;
}

StateVector apply_cswap(StateVector state, std::size_t control, std::size_t a, std::size_t b) {
  check_qubit(state, control, "apply_cswap");
  check_qubit(state, a, "apply_cswap");
  check_qubit(state, b, "apply_cswap");
  if (control == a || control == b || a == b) {
    throw std::invalid_argument("apply_cswap: control and targets must be pairwise distinct");
  }
  const std::size_t cmask = std::size_t{1} << control;
  const std::size_t amask = std::size_t{1} << a;
  const std::size_t bmask = std::size_t{1} << b;
  auto amps = state.mutable_amplitudes();
  // Visit each swapped pair once from its (a=1, b=0) member.
  for (std::size_t k = 0; k < amps.size(); ++k) {
    if ((k & cmask) && (k & amask) && !(k & bmask)) std::swap(amps[k], amps[k ^ amask ^ bmask]);
  }
  return state;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.qubit_count() != b.qubit_count()) {
    throw std::invalid_argument("inner_product: qubit counts differ (" +
                                std::to_string(a.qubit_count()) + " vs " +
                                std::to_string(b.qubit_count()) + ")");
  }
  return kernels::active().inner_product(a.amplitudes(), b.amplitudes());
}

double prob_zero(const StateVector& state, std::size_t qubit) {
  check_qubit(state, qubit, "prob_zero");
  const std::size_t mask = std::size_t{1} << qubit;
  double p = 0.0;
  const auto amps = state.amplitudes();
  for (std::size_t k = 0; k < amps.size(); ++k) {
    if (!(k & mask)) p += std::norm(amps[k]);
  }
  return p;
}

}  // namespace qgrnn
