#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace gson {

namespace detail {

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Independent named substream of an episode seed. Every randomized component
/// (sensor noise, mock estimator, sampler, jitter) draws from its own stream so
/// adding draws in one component never perturbs another.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::string_view name) {
  return std::mt19937_64(detail::splitmix64(seed ^ detail::fnv1a64(name)));
}

/// Substream further split by an index (e.g. per estimator query).
inline std::mt19937_64 make_stream(std::uint64_t seed, std::string_view name, std::uint64_t index) {
  return std::mt19937_64(
      detail::splitmix64(detail::splitmix64(seed ^ detail::fnv1a64(name)) + index));
}

}  // namespace gson
