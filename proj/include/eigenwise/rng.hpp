#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <string_view>

// Counter-based pseudo-random numbers.
//
// Every random quantity in the library is a pure function of
// (seed, stream, counter), so results do not depend on evaluation order or
// on the number of threads.  Seed derivation scheme:
//   replicate seed   = hash64({base_seed, experiment_tag, replicate_index})
//   bootstrap seed   = hash64({replicate_seed, stream::boot_tag, draw_index})
// and within one seeded object, independent substreams are keyed by the
// stream constants below.

namespace eigenwise {

namespace detail {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

namespace stream {
constexpr std::uint64_t noise_entries = 0x01;
constexpr std::uint64_t resample_index = 0x02;
constexpr std::uint64_t smoothing = 0x03;
constexpr std::uint64_t gaussian_frame = 0x04;
constexpr std::uint64_t bernoulli_graph = 0x05;
constexpr std::uint64_t boot_tag = 0xb007ULL;
}  // namespace stream

inline std::uint64_t hash64(std::initializer_list<std::uint64_t> words) {
  std::uint64_t h = 0x243f6a8885a308d3ULL;  // arbitrary nonzero start
  for (std::uint64_t w : words) h = detail::mix64((h + detail::kGolden) ^ w);
  return h;
}

inline std::uint64_t hash64_str(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a, then avalanche
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
  return detail::mix64(h);
}

// Random access into a SplitMix64 stream: word(i) is the i-th output of the
// generator seeded with `key`, computable at any index directly.
class CounterRng {
public:
  CounterRng() : key_(0) {}
  CounterRng(std::uint64_t seed, std::uint64_t stream_id)
      : key_(hash64({seed, stream_id})) {}

  std::uint64_t word(std::uint64_t counter) const {
    return detail::mix64(key_ + (counter + 1) * detail::kGolden);
  }

  // [0, 1)
  double uniform(std::uint64_t counter) const {
    return static_cast<double>(word(counter) >> 11) * 0x1.0p-53;
  }

  // (0, 1); safe under log()
  double uniform_open(std::uint64_t counter) const {
    return (static_cast<double>(word(counter) >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; consumes counters 2i and 2i+1 of a lane
  // pair, so callers index gaussians by i independently of other draws.
  double gaussian(std::uint64_t i) const {
    const double u1 = uniform_open(2 * i);
    const double u2 = uniform(2 * i + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  // Mean-1 exponential.
  double exponential(std::uint64_t counter) const {
    return -std::log(uniform_open(counter));
  }

  // Uniform integer in [0, m) by 128-bit multiply (unbiased enough for
  // m << 2^64; bias < m / 2^64).
  std::uint64_t below(std::uint64_t counter, std::uint64_t m) const {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(word(counter)) * m) >> 64);
  }

  std::uint64_t key() const { return key_; }

private:
  std::uint64_t key_;
};

}  // namespace eigenwise
