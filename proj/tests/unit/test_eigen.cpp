#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "qgrnn/eigen.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace qgrnn;
using oracle::C;

namespace {

oracle::CMat reconstruct(const Eigensystem<C>& e) {
  const std::size_t d = e.values.size();
  oracle::CMat lam(d, d);
  for (std::size_t i = 0; i < d; ++i) lam(i, i) = e.values[i];
  return oracle::mul(oracle::mul(e.vectors, lam), oracle::adjoint(e.vectors));
}

}  // namespace

TEST_CASE("diagonal input") {
  oracle::CMat h(2, 2);
  h(0, 0) = 2;
  h(1, 1) = -1;
  const auto e = hermitian_eigendecompose(h);
  CHECK(e.values[0] == doctest::Approx(-1));
  CHECK(e.values[1] == doctest::Approx(2));
  CHECK(std::abs(e.vectors(1, 0)) == doctest::Approx(1));
  CHECK(std::abs(e.vectors(0, 1)) == doctest::Approx(1));
}

TEST_CASE("Pauli X") {
  const auto e = hermitian_eigendecompose(oracle::pauli_x());
  CHECK(e.values[0] == doctest::Approx(-1));
  CHECK(e.values[1] == doctest::Approx(1));
  const double r = 1 / std::sqrt(2.0);
  // up to phase: |v0> ~ (|0> - |1>)/sqrt2
  CHECK(std::abs(e.vectors(0, 0)) == doctest::Approx(r));
  CHECK(std::abs(e.vectors(0, 0) + e.vectors(1, 0)) < 1e-12);
  CHECK(std::abs(e.vectors(0, 1) - e.vectors(1, 1)) < 1e-12);
}

TEST_CASE("property: random Hermitian reconstruction and orthonormality") {
  gen::Gen g(31);
  for (std::size_t d : {2u, 3u, 5u, 8u, 16u}) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto h = g.hermitian(d);
      const auto e = hermitian_eigendecompose(h);
      CAPTURE(d);
      CHECK(oracle::max_abs_diff(reconstruct(e), h) <= 1e-8);
      CHECK(oracle::max_abs_diff(oracle::mul(oracle::adjoint(e.vectors), e.vectors), oracle::CMat::identity(d)) <= 1e-8);
      for (std::size_t i = 1; i < d; ++i) CHECK(e.values[i - 1] <= e.values[i]);
    }
  }
}

TEST_CASE("real symmetric variant") {
  gen::Gen g(8);
  auto a = g.real_matrix(6, 6);
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < r; ++c) a(r, c) = a(c, r);
  const auto e = symmetric_eigendecompose(a);
  for (std::size_t k = 0; k < 6; ++k) {
    for (std::size_t r = 0; r < 6; ++r) {
      double av = 0;
      for (std::size_t c = 0; c < 6; ++c) av += a(r, c) * e.vectors(c, k);
      CHECK(av == doctest::Approx(e.values[k] * e.vectors(r, k)).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("errors") {
  oracle::CMat bad = oracle::pauli_x();
  bad(0, 1) = C(1, 0.5);
  bad(1, 0) = C(1, 0.5);
  CHECK_THROWS_AS(hermitian_eigendecompose(bad), std::invalid_argument);
  CHECK_THROWS_AS(hermitian_eigendecompose(oracle::CMat(2, 3)), std::invalid_argument);
  Matrix<double> asym(2, 2);
  asym(0, 1) = 1;
  CHECK_THROWS_AS(symmetric_eigendecompose(asym), std::invalid_argument);
}
