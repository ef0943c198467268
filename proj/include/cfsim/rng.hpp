#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace cfsim {

/// What a substream is consumed for. The numeric values are part of the
/// seeding contract: changing them changes every result.
enum class StreamPurpose : std::uint64_t {
  kPlacement = 1,
  kShadowing = 2,
  kChannel = 3,
};

/// Deterministic random stream. The uniform/normal transforms are written
/// out explicitly (instead of std::*_distribution) so a given engine state
/// maps to the same doubles on every platform.
class Stream {
 public:
  explicit Stream(const std::array<std::uint64_t, 4>& key) {
    std::seed_seq seq(key.begin(), key.end());
    engine_.seed(seq);
  }

  std::uint64_t raw() { return engine_(); }

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; second value of each pair is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] so the log is finite.
    const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  /// CN(0, 1): independent real/imag parts N(0, 1/2).
  std::complex<double> cnormal() {
    const double re = normal();
    const double im = normal();
    return {re * M_SQRT1_2, im * M_SQRT1_2};
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

namespace detail {
/// splitmix64 finalizer; decorrelates nearby keys.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace detail

/// Derives an independent substream from (seed, setup, purpose, realization).
/// Pure function of the key: the same key yields the same stream no matter
/// where or in which order it is requested.
inline Stream split_stream(std::uint64_t seed, std::uint64_t setup,
                           StreamPurpose purpose, std::uint64_t realization = 0) {
  std::uint64_t s = detail::mix64(seed);
  s = detail::mix64(s ^ detail::mix64(setup + 0x1000'0000ULL));
  s = detail::mix64(s ^ detail::mix64(static_cast<std::uint64_t>(purpose) + 0x2000'0000ULL));
  s = detail::mix64(s ^ detail::mix64(realization + 0x3000'0000ULL));
  std::array<std::uint64_t, 4> key;
  for (auto& k : key) {
    s = detail::mix64(s);
    k = s;
  }
  return Stream(key);
}

}  // namespace cfsim
