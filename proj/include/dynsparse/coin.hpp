#pragma once

#include <cstdint>

namespace dynsparse {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  return splitmix64(seed ^ splitmix64(a ^ splitmix64(b + 0x5851f42d4c957f2dULL)));
}

// uniform in [0,1), a pure function of its key
inline double unit_hash(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  return static_cast<double>(mix_key(seed, a, b) >> 11) * 0x1.0p-53;
}

inline bool coin(double p, std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  return unit_hash(seed, a, b) < p;
}

}  // namespace dynsparse
