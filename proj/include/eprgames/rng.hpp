#pragma once

#include <cstdint>

namespace eprgames {

// Counter-based generator: every draw is a pure function of (seed, stream,
// counter), so chunked/parallel generation produces the same values as a
// serial pass, and results are identical across platforms.
namespace rng {

inline uint64_t mix64(uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline uint64_t draw_u64(uint64_t seed, uint64_t stream, uint64_t counter) {
  uint64_t h = mix64(seed);
  h = mix64(h ^ (stream * 0xD6E8FEB86659FD93ull));
  return mix64(h ^ (counter * 0xA3B195354A39B70Dull));
}

/// Uniform double in [0, 1).
inline double draw_unit(uint64_t seed, uint64_t stream, uint64_t counter) {
  return static_cast<double>(draw_u64(seed, stream, counter) >> 11) * 0x1.0p-53;
}

/// Stateful convenience wrapper over one stream.
class Stream {
 public:
  Stream(uint64_t seed, uint64_t stream) : seed_(seed), stream_(stream) {}

  uint64_t next_u64() { return draw_u64(seed_, stream_, counter_++); }
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  uint64_t seed_;
  uint64_t stream_;
  uint64_t counter_ = 0;
};

}  // namespace rng
}  // namespace eprgames
