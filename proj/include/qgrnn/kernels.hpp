#pragma once

// Amplitude-array inner loops used by the simulator hot path. Each kernel
// has a portable scalar reference and, on x86-64, an AVX2+FMA variant. The
// active table is picked once at first use from CPUID; the environment
// variable QGRNN_KERNELS=scalar forces the reference path.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace qgrnn::kernels {

using Amplitude = std::complex<double>;

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  Isa isa;
  std::string_view name;

  // Applies [[c, -i s], [-i s, c]] to every amplitude pair (k, k + stride)
  // with bit `stride` of k clear. stride is a power of two below amps.size().
  void (*rotate_x)(std::span<Amplitude> amps, std::size_t stride, double c, double s);

  // amps[k] *= diag[k]
  void (*multiply_diagonal)(std::span<Amplitude> amps, std::span<const Amplitude> diag);

  // sum_k conj(a[k]) * b[k]
  Amplitude (*inner_product)(std::span<const Amplitude> a, std::span<const Amplitude> b);

  // sum_k |a[k]|^2
  double (*norm_squared)(std::span<const Amplitude> a);
};

const KernelTable& scalar_table() noexcept;

// Returns nullptr when the AVX2 variant was not compiled in.
const KernelTable* avx2_table() noexcept;

bool cpu_has_avx2() noexcept;

// Table used by the simulator. Selected once; immutable afterwards.
const KernelTable& active() noexcept;

}  // namespace qgrnn::kernels
