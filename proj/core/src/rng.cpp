#include "frap/rng.hpp"

namespace frap {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng make_rng(std::uint64_t seed) {
  std::uint64_t s = seed;
  return Rng(splitmix64(s));
}

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  // Mix seed and stream index through two SplitMix64 rounds; streams for
  // distinct indices land in unrelated regions of the mt19937_64 seed space.
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s);
  s = a ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
  return Rng(splitmix64(s));
}

}  // namespace frap
