#ifndef TPRR_RNG_HPP
#define TPRR_RNG_HPP

#include <cstdint>

namespace tprr {

// SplitMix64 finalizer (Steele/Lea/Flood). Used both as a stream deriver and
// as a counter-based generator: hashing (seed, trial, edge) gives every edge
// an edge-state draw that does not depend on how many other edges were
// sampled first, so runs are reproducible for any evaluation order and the
// same draws are shared by overlays of the same physical graph.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Deterministic sub-stream: injective in `index` for a fixed base.
inline std::uint64_t derive_stream(std::uint64_t base, std::uint64_t index) {
  return splitmix64(base + 0x9E3779B97F4A7C15ull * (index + 1));
}

// Map 64 random bits to a double in [0, 1) with 53-bit resolution.
inline double u01(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace tprr

#endif
