#include <immintrin.h>

#include "perco/hashing.hpp"
#include "perco/kernels.hpp"

namespace perco::kernels {

namespace {

// Low 64 bits of a * c, lane-wise, from 32x32->64 partial products.
inline __m256i mul64(__m256i a, __m256i c) {
  const __m256i lo = _mm256_mul_epu32(a, c);
  const __m256i a_hi = _mm256_srli_epi64(a, 32);
  const __m256i c_hi = _mm256_srli_epi64(c, 32);
  const __m256i cross = _mm256_add_epi64(_mm256_mul_epu32(a_hi, c), _mm256_mul_epu32(a, c_hi));
  return _mm256_add_epi64(lo, _mm256_slli_epi64(cross, 32));
}

inline __m256i mix64(__m256i z) {
  const __m256i m1 = _mm256_set1_epi64x(static_cast<long long>(0xbf58476d1ce4e5b9ULL));
  const __m256i m2 = _mm256_set1_epi64x(static_cast<long long>(0x94d049bb133111ebULL));
  z = mul64(_mm256_xor_si256(z, _mm256_srli_epi64(z, 30)), m1);
  z = mul64(_mm256_xor_si256(z, _mm256_srli_epi64(z, 27)), m2);
  return _mm256_xor_si256(z, _mm256_srli_epi64(z, 31));
}

void uniform_labels_avx2(std::uint64_t seed, const std::uint64_t* keys, double* out, std::size_t n) {
  const SeedKeys sk = seed_keys(seed);
  const __m256i k0 = _mm256_set1_epi64x(static_cast<long long>(sk.k0));
  const __m256i k1 = _mm256_set1_epi64x(static_cast<long long>(sk.k1));
  const __m256i exponent = _mm256_set1_epi64x(0x3FF0000000000000LL);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i h = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(keys + i));
    h = mix64(_mm256_add_epi64(mix64(_mm256_xor_si256(h, k0)), k1));
    const __m256i bits = _mm256_or_si256(_mm256_srli_epi64(h, 12), exponent);
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_castsi256_pd(bits), one));
  }
  for (; i < n; ++i) out[i] = uniform_label(sk, keys[i]);
}

void threshold_below_avx2(const double* labels, double p, std::uint8_t* out, std::size_t n) {
  const __m256d pv = _mm256_set1_pd(p);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(_mm256_loadu_pd(labels + i), pv, _CMP_LT_OQ));
    out[i] = mask & 1;
    out[i + 1] = (mask >> 1) & 1;
    out[i + 2] = (mask >> 2) & 1;
    out[i + 3] = (mask >> 3) & 1;
  }
  for (; i < n; ++i) out[i] = labels[i] < p ? 1 : 0;
}

void srw_step_avx2(const double* src, double* out, std::size_t n) {
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d sum = _mm256_add_pd(_mm256_loadu_pd(src + i), _mm256_loadu_pd(src + i + 2));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(half, sum));
  }
  for (; i < n; ++i) out[i] = 0.5 * (src[i] + src[i + 2]);
}

}  // namespace

const KernelTable& avx2_kernels() {
  static const KernelTable table{Isa::Avx2, "avx2", uniform_labels_avx2, threshold_below_avx2, srw_step_avx2};
  return table;
}

}  // namespace perco::kernels
