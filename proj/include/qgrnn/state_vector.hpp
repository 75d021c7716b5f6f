#pragma once

// Dense statevector over n qubits. Basis index b assigns qubit q the bit at
// position q of b (qubit 0 is the least significant bit).
//
// Gate conventions:
//   RX(theta) = exp(-i theta X / 2)
//   RZ(theta) = diag(exp(-i theta / 2), exp(+i theta / 2))
//   ZZ(phi)   = exp(-i phi Z_i Z_j)          (full angle, not half)
//
// Gates take the state by value and return the result, so callers that no
// longer need the input should std::move it in.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qgrnn {

using Complex = std::complex<double>;

class StateVector {
 public:
  // |0...0>
  explicit StateVector(std::size_t qubit_count);

  // Throws std::invalid_argument unless amplitudes.size() == 2^qubit_count and
  // the L2 norm is 1 within norm_tolerance.
  static StateVector from_amplitudes(std::size_t qubit_count, std::vector<Complex> amplitudes,
                                     double norm_tolerance = 1e-9);

  static StateVector basis(std::size_t qubit_count, std::size_t index);

  std::size_t qubit_count() const noexcept { return qubit_count_; }
  std::size_t dimension() const noexcept { return amplitudes_.size(); }

  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  const Complex& operator[](std::size_t k) const { return amplitudes_[k]; }

  // Raw access for in-place kernels. Callers must keep the state unitary.
  std::span<Complex> mutable_amplitudes() noexcept { return amplitudes_; }

  double norm() const;

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  StateVector(std::size_t qubit_count, std::vector<Complex> amplitudes);

  std::size_t qubit_count_;
  std::vector<Complex> amplitudes_;
};

// Largest supported register; 2^kMaxQubits amplitudes.
inline constexpr std::size_t kMaxQubits = 24;

// Independent standard-normal real and imaginary parts per amplitude, then
// normalized. Deterministic in (qubit_count, seed).
StateVector random_state(std::size_t qubit_count, std::uint64_t seed);

StateVector apply_rx(StateVector state, std::size_t qubit, double theta);
StateVector apply_rz(StateVector state, std::size_t qubit, double theta);
StateVector apply_zz(StateVector state, std::size_t qubit_i, std::size_t qubit_j, double phi);
StateVector apply_hadamard(StateVector state, std::size_t qubit);
StateVector apply_cswap(StateVector state, std::size_t control, std::size_t a, std::size_t b);

// sum_k conj(a_k) b_k
Complex inner_product(const StateVector& a, const StateVector& b);

// Probability that `qubit` reads 0.
double prob_zero(const StateVector& state, std::size_t qubit);

}  // namespace qgrnn
