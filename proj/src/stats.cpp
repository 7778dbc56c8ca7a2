#include "mincorr/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mincorr/errors.hpp"

namespace mincorr {

double pearson_corr(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw DegenerateInputError("pearson_corr: vectors must have equal length");
  }
  const std::size_t n = xs.size();
  if (n < 2) throw DegenerateInputError("pearson_corr: need at least two points");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) {
    throw DegenerateInputError("pearson_corr: zero sample variance");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

GofReport ks_test(std::span<const double> samples, const Marginal& m,
                  double alpha) {
  double c = 0.0;
  if (alpha == 0.05) {
    c = 1.358;
  } else if (alpha == 0.01) {
    c = 1.628;
  } else {
    throw ParameterError("ks_test: alpha must be 0.05 or 0.01");
  }
  const std::size_t n = samples.size();
  if (n < 50) throw ParameterError("ks_test: need at least 50 samples");

  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double nn = static_cast<double>(n);
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = m.cdf(sorted[i]);
    d = std::max(d, static_cast<double>(i + 1) / nn - f);
    d = std::max(d, f - static_cast<double>(i) / nn);
  }
  d = std::clamp(d, 0.0, 1.0);
  const double threshold = c / std::sqrt(nn);
  return {d, n, threshold, d < threshold};
}

double empirical_joint_cdf(std::span<const double> xs,
                           std::span<const double> ys, double x, double y) {
  if (xs.size() != ys.size() || xs.empty()) {
    throw DegenerateInputError("empirical_joint_cdf: need equal, non-empty vectors");
  }
  std::size_t count = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] <= x && ys[i] <= y) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(xs.size());
}

}  // namespace mincorr
