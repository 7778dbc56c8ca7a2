#ifndef MINCORR_MARGINAL_HPP
#define MINCORR_MARGINAL_HPP

#include <cstddef>
#include <span>
#include <string>

namespace mincorr {

enum class Family {
  uniform01,
  arcsine,
  exponential,
  weibull,
  erlang,
  beta_pow,
  beta_int,
  gaussian,
};

std::string to_string(Family family);

struct Moments {
  double mean;
  double sd;
};

/// A univariate distribution from the supported registry.
///
/// Parameters are validated by the named constructors; an admissible Marginal
/// always has finite, strictly positive variance. `quantile` is the true
/// generalized inverse F^{-1}, so it is non-decreasing on (0,1).
///
/// Scale parameters (`exponential`, `erlang`) multiply a unit-scale variable:
/// Exponential(scale) has mean `scale`.
class Marginal {
 public:
  static Marginal uniform01();
  /// Density 1/(pi sqrt(1-x^2)) on [-1,1].
  static Marginal arcsine();
  static Marginal exponential(double scale = 1.0);
  /// Density k x^{k-1} exp(-x^k) on x >= 0.
  static Marginal weibull(double k);
  /// Gamma(n, scale) with integer shape n.
  static Marginal erlang(int n, double scale = 1.0);
  /// Beta(a, 1), density a x^{a-1} on [0,1].
  static Marginal beta_pow(double a);
  /// Beta(nu1, nu2) with integer shapes.
  static Marginal beta_int(int nu1, int nu2);
  static Marginal gaussian(double mu = 0.0, double sigma = 1.0);

  Family family() const noexcept { return family_; }

  // Family parameters; the ones a family does not use read as 0.
  double scale() const noexcept { return scale_; }
  double shape() const noexcept { return shape_; }
  int shape_n() const noexcept { return n1_; }
  int shape_n2() const noexcept { return n2_; }
  double location() const noexcept { return location_; }

  Moments mean_sd() const noexcept;

  /// F^{-1}(u); throws ParameterError unless 0 < u < 1.
  double quantile(double u) const;
  /// F^{-1}(1 - q), evaluated without forming 1 - q.
  double quantile_complement(double q) const;

  double cdf(double x) const noexcept;
  /// 1 - F(x), accurate in the upper tail.
  double survival(double x) const noexcept;

  /// Number of uniforms the generators feed into one draw of this marginal.
  /// Erlang(n) is built as a sum of n exponentials and takes n sources;
  /// every other family takes one.
  std::size_t source_dim() const noexcept;
  /// Maps `source_dim()` uniforms to one variate; equal in law to the family.
  double transform(std::span<const double> u) const;
  /// `transform` applied to the componentwise complement 1 - u.
  double transform_complement(std::span<const double> u) const;

  /// Same family and same shape parameters (scale and location may differ).
  bool same_shape(const Marginal& other) const noexcept;

  std::string describe() const;

 private:
  Marginal(Family family) : family_(family) {}

  Family family_;
  double scale_ = 0.0;
  double shape_ = 0.0;
  double location_ = 0.0;
  int n1_ = 0;
  int n2_ = 0;
};

/// Standard normal quantile with absolute error well below 1e-9.
double normal_quantile(double p);
/// Phi^{-1}(1 - q) without forming 1 - q.
double normal_quantile_complement(double q);

}  // namespace mincorr

#endif  // MINCORR_MARGINAL_HPP
