#pragma once

#include <cstdint>

// Counter-based random streams. Every draw is a pure function of
// (seed, key words), so streaming and non-streaming simulation paths
// consume identical randomness regardless of evaluation order.

namespace mipt::rng {

enum Purpose : uint64_t {
  kEdgeWeight = 1,
  kBasis = 2,
  kGateOn = 3,
  kGateIdx = 4,
  kPositions = 5,
  kOutcome = 6,
  kBond = 7,
  kSpinInit = 8,
  kFlip = 9,
  kSequence = 10,
};

inline uint64_t splitmix(uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline uint64_t derive(uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t c = 0,
                       uint64_t d = 0, uint64_t e = 0) {
  uint64_t h = splitmix(seed ^ 0x6a09e667f3bcc909ull);
  h = splitmix(h ^ a);
  h = splitmix(h ^ b);
  h = splitmix(h ^ c);
  h = splitmix(h ^ d);
  h = splitmix(h ^ e);
  return h;
}

inline double unit(uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t c = 0,
                   uint64_t d = 0, uint64_t e = 0) {
  return static_cast<double>(derive(seed, a, b, c, d, e) >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n). Modulo bias is < n / 2^64, negligible for the
// n used here (<= a few thousand).
inline uint64_t below(uint64_t n, uint64_t seed, uint64_t a, uint64_t b = 0,
                      uint64_t c = 0, uint64_t d = 0, uint64_t e = 0) {
  return derive(seed, a, b, c, d, e) % n;
}

// Small stateful stream for inherently sequential consumers (MC chains).
class Stream {
 public:
  Stream(uint64_t seed, uint64_t stream_id)
      : state_(derive(seed, rng::kSequence, stream_id)) {}

  uint64_t next() { return splitmix(state_ += 0x9e3779b97f4a7c15ull); }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  uint64_t below(uint64_t n) { return next() % n; }

 private:
  uint64_t state_;
};

}  // namespace mipt::rng
