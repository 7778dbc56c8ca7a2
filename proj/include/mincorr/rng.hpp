#ifndef MINCORR_RNG_HPP
#define MINCORR_RNG_HPP

#include <array>
#include <cstdint>
#include <limits>

namespace mincorr {

/// Seedable, splittable uniform source (xoshiro256** seeded via splitmix64).
///
/// `uniform()` returns odd multiples of 2^-53 in (0,1), so both u and 1 - u
/// are exactly representable and never 0 or 1. A stream is single-owner;
/// parallel work takes one `substream(i)` per unit of work.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() noexcept;
  double uniform() noexcept;

  /// Independent stream derived from this stream's seed and `index`. Does not
  /// advance or depend on this stream's position.
  RngStream substream(std::uint64_t index) const;

  // UniformRandomBitGenerator
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() noexcept { return next_u64(); }

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> state_{};
};

std::uint64_t splitmix64(std::uint64_t& state) noexcept;

}  // namespace mincorr

#endif  // MINCORR_RNG_HPP
