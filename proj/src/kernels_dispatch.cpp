#include <cstdlib>
#include <string_view>

#include "qgrnn/kernels.hpp"

namespace qgrnn::kernels {

#ifndef QGRNN_HAVE_AVX2
const KernelTable* avx2_table() noexcept { return nullptr; }
#endif

bool cpu_has_avx2() noexcept {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

const KernelTable& select() noexcept {
  if (const char* env = std::getenv("QGRNN_KERNELS"); env && std::string_view(env) == "scalar") {
    return scalar_table();
  }
  if (const KernelTable* avx2 = avx2_table(); avx2 && cpu_has_avx2()) return *avx2;
  return scalar_table();
}

}  // namespace

const KernelTable& active() noexcept {
  static const KernelTable& table = select();
  return table;
}

}  // namespace qgrnn::kernels
