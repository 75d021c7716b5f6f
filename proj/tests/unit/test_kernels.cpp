#include <cmath>
#include <vector>

#include "doctest.h"
#include "qgrnn/kernels.hpp"
#include "support/generators.hpp"

using qgrnn::kernels::Amplitude;
namespace k = qgrnn::kernels;

namespace {

double max_diff(const std::vector<Amplitude>& a, const std::vector<Amplitude>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("scalar rotate_x matches the 2x2 matrix on one qubit") {
  std::vector<Amplitude> v{{0.6, 0.0}, {0.0, 0.8}};
  const double c = std::cos(0.3), s = std::sin(0.3);
  k::scalar_table().rotate_x(v, 1, c, s);
  CHECK(std::abs(v[0] - (c * Amplitude(0.6, 0) - Amplitude(0, s) * Amplitude(0, 0.8))) < 1e-15);
  CHECK(std::abs(v[1] - (c * Amplitude(0, 0.8) - Amplitude(0, s) * Amplitude(0.6, 0))) < 1e-15);
}

TEST_CASE("scalar kernels on small arrays") {
  std::vector<Amplitude> a{{1, 2}, {3, -1}, {0, 1}};
  std::vector<Amplitude> b{{2, 0}, {1, 1}, {-1, 0}};
  const auto& t = k::scalar_table();
  CHECK(t.norm_squared(a) == doctest::Approx(16.0));
  // conj(1+2i)*2 + conj(3-i)*(1+i) + conj(i)*(-1) = (2-4i) + (2+4i) + i
  const auto ip = t.inner_product(a, b);
  CHECK(ip.real() == doctest::Approx(4.0));
  CHECK(ip.imag() == doctest::Approx(1.0));
  std::vector<Amplitude> d{{0, 1}, {2, 0}, {1, 1}};
  t.multiply_diagonal(a, d);
  CHECK(a[0] == Amplitude(-2, 1));
  CHECK(a[1] == Amplitude(6, -2));
  CHECK(a[2] == Amplitude(-1, 1));
}

TEST_CASE("active table is one of the compiled variants") {
  const auto& act = k::active();
  if (act.isa == k::Isa::Avx2) {
    REQUIRE(k::avx2_table() != nullptr);
    CHECK(k::cpu_has_avx2());
  } else {
    CHECK(act.name == k::scalar_table().name);
  }
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
  const auto* simd = k::avx2_table();
  if (simd == nullptr || !k::cpu_has_avx2()) {
    MESSAGE("AVX2 variant unavailable on this build or CPU; skipping");
    return;
  }
  const auto& ref = k::scalar_table();
  gen::Gen g(2024);
  for (std::size_t n = 1; n <= 10; ++n) {
    const std::size_t dim = std::size_t{1} << n;
    CAPTURE(n);
    for (int trial = 0; trial < 5; ++trial) {
      const auto a = g.amplitudes(dim);
      const auto b = g.amplitudes(dim);
      const double theta = g.uniform(-3, 3);

      for (std::size_t stride = 1; stride < dim; stride <<= 1) {
        CAPTURE(stride);
        auto x = a, y = a;
        ref.rotate_x(x, stride, std::cos(theta), std::sin(theta));
        simd->rotate_x(y, stride, std::cos(theta), std::sin(theta));
        CHECK(max_diff(x, y) <= 1e-14);
      }

      auto x = a, y = a;
      ref.multiply_diagonal(x, b);
      simd->multiply_diagonal(y, b);
      CHECK(max_diff(x, y) <= 1e-14);

      CHECK(std::abs(ref.inner_product(a, b) - simd->inner_product(a, b)) <= 1e-12);
      CHECK(std::abs(ref.norm_squared(a) - simd->norm_squared(a)) <= 1e-12);
    }
  }
  // Odd lengths exercise the scalar tails of the vector loops.
  for (std::size_t len : {1u, 3u, 5u, 7u}) {
    const auto a = g.amplitudes(len);
    const auto b = g.amplitudes(len);
    CHECK(std::abs(ref.inner_product(a, b) - simd->inner_product(a, b)) <= 1e-12);
    CHECK(std::abs(ref.norm_squared(a) - simd->norm_squared(a)) <= 1e-12);
    auto x = a, y = a;
    ref.multiply_diagonal(x, b);
    simd->multiply_diagonal(y, b);
    CHECK(max_diff(x, y) <= 1e-14);
  }
}
