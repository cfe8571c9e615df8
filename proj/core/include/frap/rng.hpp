#pragma once

#include <cstdint>
#include <random>

namespace frap {

using Rng = std::mt19937_64;

// One SplitMix64 step; mutates the state and returns the next output.
std::uint64_t splitmix64(std::uint64_t& state);

// Deterministic generator for a given seed (seed is whitened first so that
// small consecutive seeds still give well separated states).
Rng make_rng(std::uint64_t seed);

// Generator for a numbered substream of a seed.  Replicate-level samplers
// each own a stream so results do not depend on how the replicate loop is
// scheduled across threads.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

}  // namespace frap
