#include "qgrnn/kernels.hpp"

namespace qgrnn::kernels {
namespace {

void rotate_x_scalar(std::span<Amplitude> amps, std::size_t stride, double c, double s) {
  const std::size_t dim = amps.size();
  for (std::size_t block = 0; block < dim; block += 2 * stride) {
    for (std::size_t k = block; k < block + stride; ++k) {
      const Amplitude a0 = amps[k];
      const Amplitude a1 = amps[k + stride];
      // -i s * (x + iy) = s*y - i s*x
      amps[k] = {c * a0.real() + s * a1.imag(), c * a0.imag() - s * a1.real()};
      amps[k + stride] = {c * a1.real() + s * a0.imag(), c * a1.imag() - s * a0.real()};
    }
  }
}

void multiply_diagonal_scalar(std::span<Amplitude> amps, std::span<const Amplitude> diag) {
  for (std::size_t k = 0; k < amps.size(); ++k) {
    const double ar = amps[k].real(), ai = amps[k].imag();
    const double dr = diag[k].real(), di = diag[k].imag();
    amps[k] = {ar * dr - ai * di, ar * di + ai * dr};
  }
}

Amplitude inner_product_scalar(std::span<const Amplitude> a, std::span<const Amplitude> b) {
  double re = 0.0, im = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    re += a[k].real() * b[k].real() + a[k].imag() * b[k].imag();
    im += a[k].real() * b[k].imag() - a[k].imag() * b[k].real();
  }
  return {re, im};
}

double norm_squared_scalar(std::span<const Amplitude> a) {
  double sum = 0.0;
  for (const auto& x : a) sum += x.real() * x.real() + x.imag() * x.imag();
  return sum;
}

constexpr KernelTable kScalar{
    Isa::Scalar, "scalar", rotate_x_scalar, multiply_diagonal_scalar, inner_product_scalar,
    norm_squared_scalar};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace qgrnn::kernels
