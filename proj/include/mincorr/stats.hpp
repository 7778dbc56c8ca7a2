#ifndef MINCORR_STATS_HPP
#define MINCORR_STATS_HPP

#include <cstddef>
#include <span>

#include "mincorr/marginal.hpp"

namespace mincorr {

/// Sample Pearson correlation, two-pass. Throws DegenerateInputError for
/// unequal lengths, fewer than two points or a zero sample variance.
double pearson_corr(std::span<const double> xs, std::span<const double> ys);

struct GofReport {
  double statistic = 0.0;  // Kolmogorov-Smirnov D
  std::size_t n = 0;
  double threshold = 0.0;
  bool pass = false;
};

/// One-sample KS test against m.cdf with the asymptotic critical value
/// c(alpha) / sqrt(n), c(0.05) = 1.358, c(0.01) = 1.628.
/// Requires n >= 50 and alpha in {0.05, 0.01}.
GofReport ks_test(std::span<const double> samples, const Marginal& m,
                  double alpha);

/// Fraction of pairs with xs_i <= x and ys_i <= y.
double empirical_joint_cdf(std::span<const double> xs,
                           std::span<const double> ys, double x, double y);

}  // namespace mincorr

#endif  // MINCORR_STATS_HPP
