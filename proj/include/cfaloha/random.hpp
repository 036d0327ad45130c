#ifndef CFALOHA_RANDOM_HPP
#define CFALOHA_RANDOM_HPP

#include <cstdint>
#include <random>

namespace cfaloha {

/// Random stream used throughout the simulator. Always owned by the caller.
using Rng = std::mt19937_64;

/// Purpose tags for per-trial substreams. Each purpose draws from its own
/// stream, so adding a network to a run never perturbs the draws of another.
enum class StreamPurpose : std::uint64_t {
  kLayout = 1,
  kActivity = 2,
  kDistributedChannel = 3,
  kCellularLayout = 4,
  kCellularChannel = 5,
};

namespace detail {
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace detail

/// Derives a substream from (seed, trial, purpose). The result depends only
/// on these three values, never on scheduling.
inline Rng make_substream(std::uint64_t seed, std::uint64_t trial,
                          StreamPurpose purpose) {
  std::uint64_t h = detail::splitmix64(seed);
  h = detail::splitmix64(h ^ trial);
  h = detail::splitmix64(h ^ static_cast<std::uint64_t>(purpose));
  std::seed_seq seq{static_cast<std::uint32_t>(h),
                    static_cast<std::uint32_t>(h >> 32)};
  return Rng(seq);
}

}  // namespace cfaloha

#endif  // CFALOHA_RANDOM_HPP
