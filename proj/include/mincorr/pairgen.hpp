#ifndef MINCORR_PAIRGEN_HPP
#define MINCORR_PAIRGEN_HPP

#include <cstddef>
#include <span>

#include "mincorr/bounds.hpp"
#include "mincorr/marginal.hpp"
#include "mincorr/rng.hpp"

namespace mincorr {

struct Pair {
  double x;
  double y;
};

/// Bivariate generator mixing an extremal coupling with independence.
///
/// Each draw takes U, V, W ~ U(0,1) in that order. X = F^{-1}(U); when
/// W < accept_prob, Y = G^{-1}(U') with U' = U for rho > 0 and U' = 1 - U for
/// rho < 0, otherwise Y = G^{-1}(V). accept_prob is rho / rho_max or
/// rho / rho_min, so cor(X, Y) = rho exactly in expectation.
///
/// Two Erlang marginals of equal shape are generated instead as sums of n
/// independent exponential pairs built the same way (3n uniforms per draw).
class PairSampler {
 public:
  /// Throws RangeError if rho is outside corr_range(f, g) by more than 1e-12.
  PairSampler(Marginal f, Marginal g, double rho);
  /// Uses a precomputed range for (f, g).
  PairSampler(Marginal f, Marginal g, double rho, CorrRange range);

  const Marginal& f() const noexcept { return f_; }
  const Marginal& g() const noexcept { return g_; }
  double rho() const noexcept { return rho_; }
  const CorrRange& range() const noexcept { return range_; }
  double accept_prob() const noexcept { return accept_prob_; }
  bool antithetic() const noexcept { return rho_ < 0.0; }
  bool sum_construction() const noexcept { return sum_terms_ > 0; }
  std::size_t uniforms_per_draw() const noexcept;

  Pair sample(RngStream& rng) const;

  std::size_t dim() const noexcept { return 2; }
  void sample(RngStream& rng, std::span<double> out) const;

 private:
  Marginal f_;
  Marginal g_;
  double rho_;
  CorrRange range_;
  double accept_prob_ = 0.0;
  int sum_terms_ = 0;
};

inline constexpr double kRangeTolerance = 1e-12;

inline Pair sample_pair(const PairSampler& sampler, RngStream& rng) {
  return sampler.sample(rng);
}

/// Gamma(n, lambda) pair with correlation rho, built from n exponential pairs.
/// Throws RangeError unless 1 - pi^2/6 <= rho <= 1.
Pair sample_erlang_pair(int n, double lambda, double rho, RngStream& rng);

struct FrechetBounds {
  double lower;  // max(0, F(x) + G(y) - 1)
  double upper;  // min(F(x), G(y))
};

FrechetBounds frechet_bounds(const Marginal& f, const Marginal& g, double x,
                             double y);

/// CDF of the sampler's output: accept_prob * H_ext + (1 - accept_prob) F G,
/// where H_ext is the upper bound for rho >= 0 and the lower bound otherwise.
/// Throws ParameterError for the Erlang sum construction, which is not such a
/// mixture.
double joint_cdf(const PairSampler& sampler, double x, double y);

}  // namespace mincorr

#endif  // MINCORR_PAIRGEN_HPP
