#pragma once

#include <bit>
#include <cstdint>
#include <span>

namespace perco {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Round keys derived once per seed; the SIMD kernels consume the same pair.
struct SeedKeys {
  std::uint64_t k0;
  std::uint64_t k1;
};

constexpr SeedKeys seed_keys(std::uint64_t seed) {
  return {mix64(seed + kGolden), mix64(seed ^ 0xd1b54a32d192ed03ULL)};
}

// Counter-based hash of (seed, key). Pure function, no stream state.
constexpr std::uint64_t keyed_hash(const SeedKeys& keys, std::uint64_t key) {
  return mix64(mix64(key ^ keys.k0) + keys.k1);
}

constexpr std::uint64_t keyed_hash(std::uint64_t seed, std::uint64_t key) {
  return keyed_hash(seed_keys(seed), key);
}

// Maps the top 52 bits onto [0,1) by filling the mantissa of a double in [1,2).
inline double unit_from_bits(std::uint64_t h) {
  return std::bit_cast<double>((h >> 12) | 0x3FF0000000000000ULL) - 1.0;
}

inline double uniform_label(const SeedKeys& keys, std::uint64_t key) {
  return unit_from_bits(keyed_hash(keys, key));
}

// Seed of trial `index` under a master seed.
constexpr std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(mix64(master) ^ (index * kGolden + 0x632be59bd9b4e019ULL));
}

// Domain separation for independent streams derived from one trial seed.
constexpr std::uint64_t substream(std::uint64_t seed, std::uint64_t tag) {
  return mix64(seed ^ mix64(tag + 0x8cb92ba72f3d8dd7ULL));
}

// Fingerprint of an integer sequence; family tag separates graph families.
inline std::uint64_t fingerprint(std::uint64_t tag, std::span<const std::int32_t> data) {
  std::uint64_t h = mix64(tag + kGolden * (data.size() + 1));
  for (std::int32_t x : data) {
    h = mix64(h ^ (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) + kGolden));
  }
  return h;
}

}  // namespace perco
