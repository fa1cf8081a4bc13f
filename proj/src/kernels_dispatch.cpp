#include <cstdlib>
#include <cstring>

#include "perco/kernels.hpp"

namespace perco::kernels {

#if PERCO_HAVE_AVX2
const KernelTable& avx2_kernels();
#endif

const KernelTable* avx2_table() {
#if PERCO_HAVE_AVX2
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &avx2_kernels() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& table = []() -> const KernelTable& {
    const char* env = std::getenv("PERCO_SIMD");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return scalar_table();
    if (const KernelTable* simd = avx2_table()) return *simd;
    return scalar_table();
  }();
  return table;
}

void uniform_labels(std::uint64_t seed, std::span<const std::uint64_t> keys, std::span<double> out) {
  active().uniform_labels(seed, keys.data(), out.data(), keys.size());
}

void threshold_below(std::span<const double> labels, double p, std::span<std::uint8_t> out) {
  active().threshold_below(labels.data(), p, out.data(), labels.size());
}

void srw_step(std::span<const double> src, std::span<double> out) {
  active().srw_step(src.data(), out.data(), out.size());
}

}  // namespace perco::kernels
