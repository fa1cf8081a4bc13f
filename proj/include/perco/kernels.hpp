#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

// Data-parallel inner loops. Every kernel has a scalar reference version and,
// on x86-64, an AVX2 version; both produce bit-identical results. The active
// table is chosen once at runtime from CPUID, and PERCO_SIMD=scalar forces the
// reference path.
namespace perco::kernels {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  Isa isa;
  const char* name;
  // out[i] = unit_from_bits(keyed_hash(seed, keys[i]))
  void (*uniform_labels)(std::uint64_t seed, const std::uint64_t* keys, double* out, std::size_t n);
  // out[i] = labels[i] < p
  void (*threshold_below)(const double* labels, double p, std::uint8_t* out, std::size_t n);
  // out[i] = 0.5 * (src[i] + src[i + 2]); src holds n + 2 values
  void (*srw_step)(const double* src, double* out, std::size_t n);
};

const KernelTable& scalar_table();
// nullptr when not compiled in or not supported by this CPU.
const KernelTable* avx2_table();
const KernelTable& active();

void uniform_labels(std::uint64_t seed, std::span<const std::uint64_t> keys, std::span<double> out);
void threshold_below(std::span<const double> labels, double p, std::span<std::uint8_t> out);
void srw_step(std::span<const double> src, std::span<double> out);

}  // namespace perco::kernels
