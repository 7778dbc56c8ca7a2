#ifndef MINCORR_MULTIGEN_HPP
#define MINCORR_MULTIGEN_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mincorr/bounds.hpp"
#include "mincorr/corr_matrix.hpp"
#include "mincorr/marginal.hpp"
#include "mincorr/rng.hpp"

namespace mincorr {

enum class SignChoice { as_solved, flipped };

std::string to_string(SignChoice choice);

/// Factors rho_i with rho_i * rho_j = rho_ij for every i != j.
struct FactorVector {
  std::vector<double> factors;
  std::size_t n_negative = 0;
  SignChoice sign_choice = SignChoice::as_solved;
  /// Set when exactly two coordinates are correlated: that coordinate carries
  /// factor 1 and always takes the shared source.
  std::optional<std::size_t> shared_source;
};

/// Solves rho_ij = rho_i rho_j.
///
/// Rows that are entirely zero get factor 0. The remaining coordinates must
/// be pairwise correlated. With two of them, the lower index takes the shared
/// source (factor 1) and the other takes rho_jk. With three, rho_2 =
/// sqrt(rho_12 rho_23 / rho_13), rho_1 = rho_12 / rho_2, rho_3 = rho_23 / rho_2.
/// With more, log|rho_i| is solved by least squares and signs are propagated
/// from the first coordinate. Of the two global sign choices, the one with
/// fewer negative factors is returned (ties keep the solved one).
///
/// Throws FactorizationError for an inconsistent sign pattern (an odd number
/// of negative entries on some triangle), a zero pattern without a product
/// form, |rho_i| >= 1, or a least-squares residual above 1e-10.
FactorVector factorize(const CorrMatrix& m);

/// Equicorrelated generator: one shared source U; coordinate i takes phi(U) when
/// W_i < |rho| and phi(V_i) otherwise. Pairwise correlation is rho^2.
/// Draw order: U, then (V_i, W_i) for i = 1..dim.
class EquicorrelatedSampler {
 public:
  EquicorrelatedSampler(Marginal f, double rho, std::size_t dim);

  const Marginal& marginal() const noexcept { return f_; }
  double rho() const noexcept { return rho_; }
  double pairwise_corr() const noexcept { return rho_ * rho_; }

  std::size_t dim() const noexcept { return dim_; }
  void sample(RngStream& rng, std::span<double> out) const;

 private:
  Marginal f_;
  double rho_;
  std::size_t dim_;
};

std::vector<double> sample_equicorrelated(const Marginal& f, double rho,
                                          std::size_t n, RngStream& rng);

/// Generator for factorized correlations rho_ij = rho_i rho_j.
///
/// Coordinate i takes phi(U) (rho_i > 0) or phi(1 - U) (rho_i < 0) with
/// probability rho_i / c(U, U'), where c is rho_max or rho_min of (f, f), and
/// phi(V_i) otherwise. Draw order matches EquicorrelatedSampler.
///
/// Pairwise correlations are exact when at most one factor is negative. Two
/// negative factors i, j give (rho_i / rho_min)(rho_j / rho_min) instead, so
/// such a factorization carries `exactness_warning()`.
class FactorSampler {
 public:
  /// Throws RangeError if a factor lies outside corr_range(f, f).
  FactorSampler(Marginal f, FactorVector factors);
  FactorSampler(Marginal f, FactorVector factors, CorrRange range);

  const Marginal& marginal() const noexcept { return f_; }
  const FactorVector& factors() const noexcept { return factors_; }
  const CorrRange& range() const noexcept { return range_; }
  const std::vector<double>& accept_probs() const noexcept { return accept_; }
  std::optional<std::string> exactness_warning() const;

  std::size_t dim() const noexcept { return factors_.factors.size(); }
  void sample(RngStream& rng, std::span<double> out) const;

 private:
  Marginal f_;
  FactorVector factors_;
  CorrRange range_;
  std::vector<double> accept_;
};

std::vector<double> sample_multivariate(const Marginal& f,
                                        const FactorVector& factors,
                                        RngStream& rng);

struct BoundViolation {
  std::string kind;  // "entry" or "factor"
  std::size_t i;
  std::size_t j;     // equals i for factors
  double value;
  double bound;
};

/// Where a 3x3 target sits: outside the PSD set, PSD without a product form,
/// or factorizable.
enum class Region3 { outside_psd, psd_not_factorizable, factorizable };

std::string to_string(Region3 region);

struct FeasibilityReport {
  bool psd = false;
  double min_eigenvalue = 0.0;
  std::vector<double> leading_minors;

  bool factorized = false;
  std::string factorization_error;
  std::optional<FactorVector> factors;

  CorrRange range;
  std::vector<BoundViolation> violations;
  std::optional<Region3> region;
  std::vector<std::string> warnings;

  bool feasible = false;
  /// First failing gate in the order psd, factorization, bounds; empty if none.
  std::string first_failure;
};

/// Runs every gate and reports all of them; never throws for infeasibility.
FeasibilityReport feasibility_check(const Marginal& f, const CorrMatrix& m,
                                    double psd_tol = 1e-10);

}  // namespace mincorr

#endif  // MINCORR_MULTIGEN_HPP
