// Compiled with -mavx2 -mfma. Only reached after a CPUID check.
#include "qgrnn/kernels.hpp"

#include <immintrin.h>

namespace qgrnn::kernels {
namespace {

// One __m256d holds two complex doubles: [re0, im0, re1, im1].

inline __m256d load2(const Amplitude* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(Amplitude* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

// (x + iy) * (u + iv), lane-pairwise.
inline __m256d cmul(__m256d x, __m256d d) {
  const __m256d d_re = _mm256_movedup_pd(d);         // [u0, u0, u1, u1]
  const __m256d d_im = _mm256_permute_pd(d, 0b1111);  // [v0, v0, v1, v1]
  const __m256d x_sw = _mm256_permute_pd(x, 0b0101);  // [y0, x0, y1, x1]
  // [x*u - y*v, y*u + x*v]
  return _mm256_fmaddsub_pd(x, d_re, _mm256_mul_pd(x_sw, d_im));
}

// -i s * (x + iy) + c * (p + iq) for the rotation pair update.
inline __m256d rx_mix(__m256d self, __m256d other, __m256d c, __m256d s_signed) {
  const __m256d other_sw = _mm256_permute_pd(other, 0b0101);  // [y, x, ...]
  // s_signed = [s, -s, s, -s] gives [s*y, -s*x]
  return _mm256_fmadd_pd(other_sw, s_signed, _mm256_mul_pd(self, c));
}

void rotate_x_avx2(std::span<Amplitude> amps, std::size_t stride, double c, double s) {
  const std::size_t dim = amps.size();
  Amplitude* data = amps.data();
  if (stride == 1) {
    for (std::size_t k = 0; k < dim; k += 2) {
      const Amplitude a0 = data[k];
      const Amplitude a1 = data[k + 1];
      data[k] = {c * a0.real() + s * a1.imag(), c * a0.imag() - s * a1.real()};
      data[k + 1] = {c * a1.real() + s * a0.imag(), c * a1.imag() - s * a0.real()};
    }
    return;
  }
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vs = _mm256_setr_pd(s, -s, s, -s);
  for (std::size_t block = 0; block < dim; block += 2 * stride) {
    for (std::size_t k = block; k < block + stride; k += 2) {
      const __m256d a0 = load2(data + k);
      const __m256d a1 = load2(data + k + stride);
      store2(data + k, rx_mix(a0, a1, vc, vs));
      store2(data + k + stride, rx_mix(a1, a0, vc, vs));
    }
  }
}

void multiply_diagonal_avx2(std::span<Amplitude> amps, std::span<const Amplitude> diag) {
  const std::size_t dim = amps.size();
  std::size_t k = 0;
  for (; k + 2 <= dim; k += 2) store2(amps.data() + k, cmul(load2(amps.data() + k), load2(diag.data() + k)));
  for (; k < dim; ++k) amps[k] *= diag[k];
}

Amplitude inner_product_avx2(std::span<const Amplitude> a, std::span<const Amplitude> b) {
  const std::size_t dim = a.size();
  __m256d acc_re = _mm256_setzero_pd();  // lanes: [ar*br, ai*bi, ...]
  __m256d acc_im = _mm256_setzero_pd();  // lanes: [ar*bi, ai*br, ...]
  std::size_t k = 0;
  for (; k + 2 <= dim; k += 2) {
    const __m256d va = load2(a.data() + k);
    const __m256d vb = load2(b.data() + k);
    acc_re = _mm256_fmadd_pd(va, vb, acc_re);
    acc_im = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), acc_im);
  }
  alignas(32) double r[4], i[4];
  _mm256_store_pd(r, acc_re);
  _mm256_store_pd(i, acc_im);
  double re = (r[0] + r[1]) + (r[2] + r[3]);
  double im = (i[0] - i[1]) + (i[2] - i[3]);
  for (; k < dim; ++k) {
    re += a[k].real() * b[k].real() + a[k].imag() * b[k].imag();
    im += a[k].real() * b[k].imag() - a[k].imag() * b[k].real();
  }
  return {re, im};
}

double norm_squared_avx2(std::span<const Amplitude> a) {
  const std::size_t dim = a.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= dim; k += 2) {
    const __m256d v = load2(a.data() + k);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  alignas(32) double r[4];
  _mm256_store_pd(r, acc);
  double sum = (r[0] + r[1]) + (r[2] + r[3]);
  for (; k < dim; ++k) sum += std::norm(a[k]);
  return sum;
}

constexpr KernelTable kAvx2{
    Isa::Avx2, "avx2", rotate_x_avx2, multiply_diagonal_avx2, inner_product_avx2, norm_squared_avx2};

}  // namespace

const KernelTable* avx2_table() noexcept { return &kAvx2; }

}  // namespace qgrnn::kernels
