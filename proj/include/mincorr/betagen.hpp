#ifndef MINCORR_BETAGEN_HPP
#define MINCORR_BETAGEN_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mincorr/corr_matrix.hpp"
#include "mincorr/multigen.hpp"
#include "mincorr/rng.hpp"

namespace mincorr {

/// Gamma-ratio transform of a vector source: with nu1 + nu2 uniforms,
/// sum_{i<=nu1} log u_i / sum_{all} log u_i ~ Beta(nu1, nu2).
struct BetaVecTransform {
  BetaVecTransform(int nu1, int nu2);

  int nu1;
  int nu2;
  std::size_t dim_u() const noexcept { return static_cast<std::size_t>(nu1 + nu2); }
  double mean() const noexcept;
  double variance() const noexcept;
};

/// Throws ParameterError for a wrong-length vector or a component outside (0,1).
double phi_beta(const BetaVecTransform& t, std::span<const double> u);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t draws = 0;
};

/// Monte Carlo estimate of (E[phi(U) phi(1 - U)] - m^2) / sigma^2 with exact
/// Beta moments. Requires mc_draws >= 10^4.
McEstimate c_beta_antithetic(const BetaVecTransform& t, std::size_t mc_draws,
                             RngStream& rng);

/// c_beta_antithetic with 10^6 draws on a fixed per-(nu1, nu2) seed, computed
/// once per process and cached.
McEstimate cached_c_beta_antithetic(int nu1, int nu2);

/// Trivariate Beta(nu1, nu2) generator with target correlations rho_12,
/// rho_13, rho_23 built on the vector-source transform.
///
/// Construction stops (FeasibilityError) when the matrix is not PSD, when the
/// entry product is negative, exactly one entry is zero, or an entry is at or
/// below the antithetic coefficient c. A factor at or below c is not fatal:
/// the sampler is built and `warning()` is set, since the result is only
/// approximate.
///
/// Each draw consumes U (nu1 + nu2 uniforms), then V_i (nu1 + nu2) and W_i for
/// i = 1..3, whichever branch each coordinate takes.
class BetaTrivariateSampler {
 public:
  BetaTrivariateSampler(int nu1, int nu2, const CorrMatrix& m);
  BetaTrivariateSampler(int nu1, int nu2, const CorrMatrix& m, McEstimate c_anti);

  const BetaVecTransform& transform() const noexcept { return t_; }
  const McEstimate& c_estimate() const noexcept { return c_anti_; }
  const FactorVector& factors() const noexcept { return factors_; }
  const std::array<double, 3>& accept_probs() const noexcept { return accept_; }
  const std::optional<std::string>& warning() const noexcept { return warning_; }

  std::size_t dim() const noexcept { return 3; }
  void sample(RngStream& rng, std::span<double> out) const;

 private:
  BetaVecTransform t_;
  McEstimate c_anti_;
  FactorVector factors_;
  std::array<double, 3> accept_{};
  std::optional<std::string> warning_;
};

std::array<double, 3> sample_beta_trivariate(int nu1, int nu2,
                                             const CorrMatrix& m,
                                             RngStream& rng);

}  // namespace mincorr

#endif  // MINCORR_BETAGEN_HPP
