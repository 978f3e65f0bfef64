#pragma once

#include <array>
#include <cstdint>
#include <random>

namespace topicfilter {

/// Deterministic generator for substream `stream` of a master seed. Distinct
/// streams give decorrelated sequences.
inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

/// Child seed for substream `stream`, for APIs that take a plain seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  auto rng = make_rng(seed, stream);
  return rng();
}

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace topicfilter
