#pragma once

#include <cstdint>
#include <limits>

namespace spreadnet {

// splitmix64 step (Steele, Lea, Flood 2014). Used both as the stream
// generator and, iterated over key words, as the stream-addressing hash.
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Collapses (key, word) into a new key. Chaining this gives every
/// (seed, tag, index...) tuple its own independent random stream, so the
/// draw for a given arc/run/node never depends on evaluation order.
constexpr std::uint64_t key_hash(std::uint64_t key, std::uint64_t word) {
  return mix64(key ^ mix64(word));
}

constexpr std::uint64_t key_hash(std::uint64_t key, std::uint64_t a, std::uint64_t b) {
  return key_hash(key_hash(key, a), b);
}

constexpr std::uint64_t key_hash(std::uint64_t key, std::uint64_t a, std::uint64_t b,
                                 std::uint64_t c) {
  return key_hash(key_hash(key, a, b), c);
}

constexpr double unit_from_bits(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;  // [0, 1)
}

/// One uniform in [0,1) addressed purely by its key; no state involved.
constexpr double keyed_unit(std::uint64_t key, std::uint64_t word) {
  return unit_from_bits(mix64(key_hash(key, word)));
}

/// Sequential splitmix64 stream. Satisfies UniformRandomBitGenerator.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  explicit StreamRng(std::uint64_t key) : state_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64() { return mix64(state_ += kGolden); }

  double next_unit() { return unit_from_bits(next_u64()); }

  bool next_bernoulli(double p) { return next_unit() < p; }

  /// Uniform integer in [0, bound) without modulo bias (rejection sampling).
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = max() - max() % bound;  // multiple of bound
    std::uint64_t draw = next_u64();
    while (draw >= limit) draw = next_u64();
    return draw % bound;
  }

 private:
  std::uint64_t state_;
};

}  // namespace spreadnet
