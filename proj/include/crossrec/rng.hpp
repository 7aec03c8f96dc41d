#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace crossrec {

inline std::uint64_t fnv1a64_bytes(const void* data, std::size_t len,
                                   std::uint64_t h = 0xcbf29ce484222325ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint64_t fnv1a64(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ull) {
  return fnv1a64_bytes(s.data(), s.size(), h);
}

// All randomness flows from one top-level seed through named sub-streams, so
// each component (split, subsample, lowpass-init, ...) is independently
// reproducible.
inline std::uint64_t substream_seed(std::uint64_t base, std::string_view name) {
  std::uint64_t h = fnv1a64(name);
  h = fnv1a64_bytes(&base, sizeof(base), h);
  return h;
}

inline std::mt19937_64 make_rng(std::uint64_t base, std::string_view name) {
  return std::mt19937_64(substream_seed(base, name));
}

}  // namespace crossrec
