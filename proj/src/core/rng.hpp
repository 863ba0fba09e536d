#ifndef MGS_CORE_RNG_HPP
#define MGS_CORE_RNG_HPP

#include <cstdint>
#include <random>
#include <string>

namespace mgs {

// Draw helpers on top of std::mt19937_64. The engine's output sequence is
// pinned by the standard; std::*_distribution is not, so every draw below is
// implemented directly on raw engine words. Search results must be bit-equal
// across compilers and across worker counts, which is why all randomness in
// the library flows through per-purpose streams derived here.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  bool coin() { return (engine_() >> 63) != 0; }

  // true with probability p
  bool bernoulli(double p) { return real() < p; }

  // uniform in [0, 1)
  double real() { return (engine_() >> 11) * 0x1.0p-53; }

  // uniform in [0, n); n > 0
  std::uint64_t below(std::uint64_t n) {
    // multiply-shift; bias is < 2^-64 per draw, irrelevant at this scale
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(engine_()) * n) >> 64);
  }

private:
  std::mt19937_64 engine_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_str(const std::string &s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// Independent stream for (seed, purpose, index). Worker scheduling can never
// reorder draws because each purpose owns its own engine.
inline Rng derived_rng(std::uint64_t seed, std::uint64_t purpose, std::uint64_t index = 0) {
  return Rng(splitmix64(splitmix64(seed ^ purpose * 0x9e3779b97f4a7c15ULL) + index));
}

namespace stream {
constexpr std::uint64_t init_population = 1;
constexpr std::uint64_t crossover = 2;
constexpr std::uint64_t mutation = 3;
constexpr std::uint64_t split = 4;
constexpr std::uint64_t verification = 5;
} // namespace stream

} // namespace mgs

#endif
