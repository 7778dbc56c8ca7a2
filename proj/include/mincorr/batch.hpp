#ifndef MINCORR_BATCH_HPP
#define MINCORR_BATCH_HPP

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "mincorr/rng.hpp"

namespace mincorr {

/// Row-major n x d block of draws plus the seed that produced it.
struct SampleBatch {
  std::size_t dim = 0;
  std::size_t rows = 0;
  std::uint64_t seed = 0;
  std::vector<double> values;
  std::vector<std::string> warnings;

  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * dim, dim};
  }
  std::vector<double> column(std::size_t j) const {
    std::vector<double> out(rows);
    for (std::size_t i = 0; i < rows; ++i) out[i] = values[i * dim + j];
    return out;
  }
};

template <typename S>
concept VectorSampler = requires(const S& s, RngStream& rng, std::span<double> out) {
  { s.dim() } -> std::convertible_to<std::size_t>;
  s.sample(rng, out);
};

/// Draws per substream. Draw i always comes from substream i / kBlockDraws,
/// so the batch is identical for any thread count.
inline constexpr std::size_t kBlockDraws = 1 << 14;

template <VectorSampler S>
SampleBatch generate_batch(const S& sampler, std::size_t n, std::uint64_t seed,
                           unsigned threads = 1) {
  SampleBatch batch;
  batch.dim = sampler.dim();
  batch.rows = n;
  batch.seed = seed;
  batch.values.resize(n * batch.dim);

  const RngStream root(seed);
  const std::size_t blocks = (n + kBlockDraws - 1) / kBlockDraws;
  auto run_block = [&](std::size_t block) {
    RngStream rng = root.substream(block);
    const std::size_t begin = block * kBlockDraws;
    const std::size_t end = std::min(n, begin + kBlockDraws);
    for (std::size_t i = begin; i < end; ++i) {
      sampler.sample(rng, std::span<double>(batch.values.data() + i * batch.dim, batch.dim));
    }
  };

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(blocks)));
  if (threads <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) run_block(b);
    return batch;
  }
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&, t] {
      for (std::size_t b = t; b < blocks; b += threads) run_block(b);
    });
  }
  for (auto& w : workers) w.join();
  return batch;
}

}  // namespace mincorr

#endif  // MINCORR_BATCH_HPP
