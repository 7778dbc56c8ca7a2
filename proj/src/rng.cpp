#include "mincorr/rng.hpp"

namespace mincorr {
namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t seed) : seed_(seed) {
  std::uint64_t sm = seed;
  for (auto& word : state_) word = splitmix64(sm);
}

std::uint64_t RngStream::next_u64() noexcept {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RngStream::uniform() noexcept {
  // (2k + 1) 2^-53 for a 52-bit k: symmetric about 1/2 on an exact grid.
  const std::uint64_t k = next_u64() >> 12;
  return static_cast<double>(2 * k + 1) * 0x1.0p-53;
}

RngStream RngStream::substream(std::uint64_t index) const {
  std::uint64_t sm = seed_ ^ 0x6A09E667F3BCC909ULL;
  const std::uint64_t a = splitmix64(sm);
  sm = index + 0xBB67AE8584CAA73BULL;
  const std::uint64_t b = splitmix64(sm);
  std::uint64_t mix = a ^ rotl(b, 29);
  return RngStream(splitmix64(mix));
}

}  // namespace mincorr
