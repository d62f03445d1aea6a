#pragma once

#include <cstdint>
#include <random>
#include <string_view>

// Deterministic hashing and random draws. Every stochastic step in the
// pipeline derives its stream from a user seed plus a purpose salt, so a
// run is reproducible bit-for-bit on any platform. std::uniform_*
// distributions are implementation-defined, so bounded draws are done by
// hand on top of mt19937_64.

namespace namegauge {

constexpr std::uint64_t SALT_RATIO = 0x726174696f5f3031ULL;
constexpr std::uint64_t SALT_SPLIT = 0x73706c69745f3031ULL;
constexpr std::uint64_t SALT_TRAIN = 0x747261696e5f3031ULL;
constexpr std::uint64_t SALT_SYNTH = 0x73796e74685f3031ULL;

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Combines a seed with a salt (or an index) into a fresh stream seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    return splitmix64(seed ^ salt);
}

// Stable per-item key for seeded orderings (survivor selection, splits).
inline std::uint64_t item_key(std::uint64_t stream_seed, std::string_view id) {
    return splitmix64(stream_seed ^ fnv1a64(id));
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform draw in [0, n). Modulo bias is negligible for the pool
    // sizes used here and keeps the draw portable.
    std::uint64_t bounded(std::uint64_t n) { return n ? eng_() % n : 0; }

    double unit() { return (eng_() >> 11) * 0x1.0p-53; }

  private:
    std::mt19937_64 eng_;
};

}  // namespace namegauge
