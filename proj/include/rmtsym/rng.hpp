#pragma once

#include <cstdint>
#include <cmath>
#include <utility>

namespace rmtsym {

/// SplitMix64 finalizer; bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_combine(std::uint64_t h, std::uint64_t v) {
  return mix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

/// Counter-based stream: draw i of stream (seed, replicate, stream) is
/// mix64(key + i * golden), a keyed SplitMix64 sequence. Stateless apart from
/// the counter, so draws are reproducible under any parallel schedule.
class CounterRng {
 public:
  CounterRng(std::uint64_t master_seed, std::uint64_t replicate, std::uint64_t stream)
      : key_(mix_combine(mix_combine(mix64(master_seed), replicate), stream)) {}

  std::uint64_t next_u64() {
    return mix64(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL);
  }

  /// Uniform in (0, 1]; never returns 0, so log() below is safe.
  double next_unit() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Box-Muller on two 64-bit uniforms; a pair of independent N(0,1).
  std::pair<double, double> next_gauss_pair() {
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * M_PI * u2;
    return {r * std::cos(t), r * std::sin(t)};
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace rmtsym
