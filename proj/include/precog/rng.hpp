#pragma once

#include <cstdint>
#include <random>

namespace precog {

/// splitmix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Named stream constants so that e.g. weight init and jitter never share draws.
enum class Stream : std::uint64_t {
  WeightInit = 1,
  Jitter = 2,
  Matrix = 3,
  Signal = 4,
  Noise = 5,
  Plant = 6,
};

inline std::mt19937_64 make_engine(std::uint64_t seed, Stream stream) {
  return std::mt19937_64(mix_seed(seed ^ mix_seed(static_cast<std::uint64_t>(stream))));
}

}  // namespace precog
