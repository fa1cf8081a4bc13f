#include "perco/hashing.hpp"
#include "perco/kernels.hpp"

namespace perco::kernels {

namespace {

void uniform_labels_scalar(std::uint64_t seed, const std::uint64_t* keys, double* out, std::size_t n) {
  const SeedKeys sk = seed_keys(seed);
  for (std::size_t i = 0; i < n; ++i) out[i] = uniform_label(sk, keys[i]);
}

void threshold_below_scalar(const double* labels, double p, std::uint8_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = labels[i] < p ? 1 : 0;
}

void srw_step_scalar(const double* src, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.5 * (src[i] + src[i + 2]);
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::Scalar, "scalar", uniform_labels_scalar, threshold_below_scalar,
                                 srw_step_scalar};
  return table;
}

}  // namespace perco::kernels
