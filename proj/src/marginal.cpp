#include "mincorr/marginal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "mincorr/errors.hpp"

namespace mincorr {
namespace {

constexpr double kPi = std::numbers::pi;

void require(bool ok, const char* message) {
  if (!ok) throw ParameterError(message);
}

void require_unit_open(double u, const char* who) {
  if (!(u > 0.0 && u < 1.0)) {
    throw ParameterError(std::string(who) + ": argument must lie in (0,1)");
  }
}

// Regularized lower incomplete gamma P(n, y) and its complement for integer n.
// Below the mode the tail series of P is summed directly; above it the finite
// Poisson sum for Q is used. Each side is returned without cancellation.
struct GammaTail {
  double lower;
  double upper;
};

GammaTail erlang_tails(int n, double y) {
  if (y <= 0.0) return {0.0, 1.0};
  const double log_y = std::log(y);
  if (y < static_cast<double>(n)) {
    // P(n, y) = e^{-y} sum_{k>=n} y^k / k!
    double term = std::exp(n * log_y - y - std::lgamma(n + 1.0));
    double sum = 0.0;
    for (int k = n; k < n + 10000; ++k) {
      sum += term;
      term *= y / (k + 1.0);
      if (term < sum * 1e-17) break;
    }
    return {sum, 1.0 - sum};
  }
  // Q(n, y) = e^{-y} sum_{k<n} y^k / k!, summed from the largest term down.
  double term = std::exp((n - 1) * log_y - y - std::lgamma(static_cast<double>(n)));
  double sum = 0.0;
  for (int k = n - 1; k >= 0; --k) {
    sum += term;
    if (k > 0) term *= k / y;
    if (term < sum * 1e-17) break;
  }
  return {1.0 - sum, sum};
}

// Regularized incomplete beta I_x(a, b) for integer a, b via the binomial sum
// I_x(a,b) = sum_{j=a}^{a+b-1} C(a+b-1, j) x^j (1-x)^{a+b-1-j}.
GammaTail beta_int_tails(int a, int b, double x) {
  if (x <= 0.0) return {0.0, 1.0};
  if (x >= 1.0) return {1.0, 0.0};
  const int total = a + b - 1;
  const double log_x = std::log(x);
  const double log_1mx = std::log1p(-x);
  const double log_total_fact = std::lgamma(total + 1.0);
  auto term = [&](int j) {
    return std::exp(log_total_fact - std::lgamma(j + 1.0) -
                    std::lgamma(total - j + 1.0) + j * log_x +
                    (total - j) * log_1mx);
  };
  double lower = 0.0;
  double upper = 0.0;
  for (int j = a; j <= total; ++j) lower += term(j);
  for (int j = 0; j < a; ++j) upper += term(j);
  return {lower, upper};
}

// Solves target(x) = 0 for a target increasing in x on [lo, hi], using Newton
// steps with bisection fallback. `slope` is the derivative of target.
double invert_increasing(const std::function<double(double)>& target,
                         const std::function<double(double)>& slope, double lo,
                         double hi, double start) {
  double x = start;
  for (int iter = 0; iter < 400; ++iter) {
    const double fx = target(x);
    if (fx == 0.0) return x;
    if (fx < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double d = slope(x);
    double next = (d > 0.0 && std::isfinite(d)) ? x - fx / d : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (std::abs(next - x) <= 4.0 * eps * std::max(std::abs(x), 1e-300)) {
      return next;
    }
    if (hi - lo <= 2.0 * eps * std::max(std::abs(hi), 1e-300)) {
      return 0.5 * (lo + hi);
    }
    x = next;
  }
  return x;
}

}  // namespace

std::string to_string(Family family) {
  switch (family) {
    case Family::uniform01: return "uniform";
    case Family::arcsine: return "arcsine";
    case Family::exponential: return "exponential";
    case Family::weibull: return "weibull";
    case Family::erlang: return "erlang";
    case Family::beta_pow: return "beta_pow";
    case Family::beta_int: return "beta_int";
    case Family::gaussian: return "gaussian";
  }
  return "unknown";
}

Marginal Marginal::uniform01() { return Marginal(Family::uniform01); }

Marginal Marginal::arcsine() { return Marginal(Family::arcsine); }

Marginal Marginal::exponential(double scale) {
  require(std::isfinite(scale) && scale > 0.0,
          "exponential: scale (lambda) must be finite and > 0");
  Marginal m(Family::exponential);
  m.scale_ = scale;
  return m;
}

Marginal Marginal::weibull(double k) {
  require(std::isfinite(k) && k > 0.0, "weibull: k must be finite and > 0");
  Marginal m(Family::weibull);
  m.shape_ = k;
  m.scale_ = 1.0;
  const Moments mom = m.mean_sd();
  require(std::isfinite(mom.sd) && mom.sd > 0.0,
          "weibull: k outside the range with finite positive variance");
  return m;
}

Marginal Marginal::erlang(int n, double scale) {
  require(n >= 1, "erlang: n must be a positive integer");
  require(std::isfinite(scale) && scale > 0.0,
          "erlang: scale (lambda) must be finite and > 0");
  Marginal m(Family::erlang);
  m.n1_ = n;
  m.scale_ = scale;
  return m;
}

Marginal Marginal::beta_pow(double a) {
  require(std::isfinite(a) && a > 0.0, "beta_pow: a must be finite and > 0");
  Marginal m(Family::beta_pow);
  m.shape_ = a;
  return m;
}

Marginal Marginal::beta_int(int nu1, int nu2) {
  require(nu1 >= 1 && nu2 >= 1,
          "beta_int: nu1 and nu2 must be positive integers");
  require(nu1 + nu2 <= 1000, "beta_int: nu1 + nu2 must not exceed 1000");
  Marginal m(Family::beta_int);
  m.n1_ = nu1;
  m.n2_ = nu2;
  return m;
}

Marginal Marginal::gaussian(double mu, double sigma) {
  require(std::isfinite(mu), "gaussian: mu must be finite");
  require(std::isfinite(sigma) && sigma > 0.0,
          "gaussian: sigma must be finite and > 0");
  Marginal m(Family::gaussian);
  m.location_ = mu;
  m.scale_ = sigma;
  return m;
}

Moments Marginal::mean_sd() const noexcept {
  switch (family_) {
    case Family::uniform01:
      return {0.5, std::sqrt(1.0 / 12.0)};
    case Family::arcsine:
      return {0.0, std::sqrt(0.5)};
    case Family::exponential:
      return {scale_, scale_};
    case Family::weibull: {
      const double g1 = std::tgamma(1.0 + 1.0 / shape_);
      const double g2 = std::tgamma(1.0 + 2.0 / shape_);
      return {g1, std::sqrt(g2 - g1 * g1)};
    }
    case Family::erlang:
      return {n1_ * scale_, std::sqrt(static_cast<double>(n1_)) * scale_};
    case Family::beta_pow: {
      const double a = shape_;
      return {a / (a + 1.0), std::sqrt(a / ((a + 1.0) * (a + 1.0) * (a + 2.0)))};
    }
    case Family::beta_int: {
      const double a = n1_;
      const double b = n2_;
      const double s = a + b;
      return {a / s, std::sqrt(a * b / (s * s * (s + 1.0)))};
    }
    case Family::gaussian:
      return {location_, scale_};
  }
  return {0.0, 0.0};
}

double Marginal::quantile(double u) const {
  require_unit_open(u, "quantile");
  switch (family_) {
    case Family::uniform01:
      return u;
    case Family::arcsine:
      // -cos(pi u), written so the median maps to exactly 0
      return std::sin(kPi * (u - 0.5));
    case Family::exponential:
      return -scale_ * std::log1p(-u);
    case Family::weibull:
      return std::pow(-std::log1p(-u), 1.0 / shape_);
    case Family::beta_pow:
      return std::pow(u, 1.0 / shape_);
    case Family::gaussian:
      return location_ + scale_ * normal_quantile(u);
    case Family::erlang:
    case Family::beta_int:
      break;
  }
  if (u > 0.5) return quantile_complement(1.0 - u);

  if (family_ == Family::erlang) {
    const int n = n1_;
    auto target = [n, u](double y) { return erlang_tails(n, y).lower - u; };
    auto slope = [n](double y) {
      return y <= 0.0 ? 0.0
                      : std::exp((n - 1) * std::log(y) - y - std::lgamma(n * 1.0));
    };
    double hi = n + 10.0 * std::sqrt(static_cast<double>(n)) + 10.0;
    while (target(hi) < 0.0) hi *= 2.0;
    // lower tail: P(n, y) ~ y^n / n!
    const double start = std::exp((std::log(u) + std::lgamma(n + 1.0)) / n);
    return scale_ * invert_increasing(target, slope, 0.0, hi, std::min(start, 0.5 * hi));
  }
  const int a = n1_;
  const int b = n2_;
  const double log_beta = std::lgamma(a * 1.0) + std::lgamma(b * 1.0) - std::lgamma(a + b * 1.0);
  // lower tail: I_x(a, b) ~ x^a / (a B(a, b))
  const double start = std::min(0.5, std::exp((std::log(u * a) + log_beta) / a));
  auto target = [a, b, u](double x) { return beta_int_tails(a, b, x).lower - u; };
  auto slope = [a, b, log_beta](double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return std::exp((a - 1) * std::log(x) + (b - 1) * std::log1p(-x) - log_beta);
  };
  return invert_increasing(target, slope, 0.0, 1.0, start);
}

double Marginal::quantile_complement(double q) const {
  require_unit_open(q, "quantile_complement");
  switch (family_) {
    case Family::uniform01:
      return 1.0 - q;
    case Family::arcsine:
      return std::sin(kPi * (0.5 - q));
    case Family::exponential:
      return -scale_ * std::log(q);
    case Family::weibull:
      return std::pow(-std::log(q), 1.0 / shape_);
    case Family::beta_pow:
      return std::exp(std::log1p(-q) / shape_);
    case Family::gaussian:
      return location_ + scale_ * normal_quantile_complement(q);
    case Family::erlang:
    case Family::beta_int:
      break;
  }
  if (q > 0.5) return quantile(1.0 - q);

  // Solve survival(x) = q; target increases in x as survival decreases.
  if (family_ == Family::erlang) {
    const int n = n1_;
    auto target = [n, q](double y) { return q - erlang_tails(n, y).upper; };
    auto slope = [n](double y) {
      return y <= 0.0 ? 0.0
                      : std::exp((n - 1) * std::log(y) - y - std::lgamma(n * 1.0));
    };
    double hi = n + 10.0 * std::sqrt(static_cast<double>(n)) + 10.0;
    while (target(hi) < 0.0) hi *= 2.0;
    // upper tail: Q(n, y) ~ y^{n-1} e^{-y} / (n-1)!
    const double log_q = -std::log(q);
    const double start = log_q + (n - 1) * std::log(std::max(1.0, log_q));
    return scale_ * invert_increasing(target, slope, 0.0, hi, std::clamp(start, 1e-3, 0.5 * hi));
  }
  // 1 - X ~ Beta(nu2, nu1): the small lower-tail root keeps full precision
  return 1.0 - Marginal::beta_int(n2_, n1_).quantile(q);
}

double Marginal::cdf(double x) const noexcept {
  if (std::isnan(x)) return x;
  switch (family_) {
    case Family::uniform01:
      return std::clamp(x, 0.0, 1.0);
    case Family::arcsine:
      if (x <= -1.0) return 0.0;
      if (x >= 1.0) return 1.0;
      return 0.5 + std::asin(x) / kPi;
    case Family::exponential:
      return x <= 0.0 ? 0.0 : -std::expm1(-x / scale_);
    case Family::weibull:
      return x <= 0.0 ? 0.0 : -std::expm1(-std::pow(x, shape_));
    case Family::erlang:
      return erlang_tails(n1_, x / scale_).lower;
    case Family::beta_pow:
      if (x <= 0.0) return 0.0;
      return x >= 1.0 ? 1.0 : std::pow(x, shape_);
    case Family::beta_int:
      return beta_int_tails(n1_, n2_, x).lower;
    case Family::gaussian:
      return 0.5 * std::erfc(-(x - location_) / (scale_ * std::numbers::sqrt2));
  }
  return 0.0;
}

double Marginal::survival(double x) const noexcept {
  if (std::isnan(x)) return x;
  switch (family_) {
    case Family::uniform01:
      return 1.0 - std::clamp(x, 0.0, 1.0);
    case Family::arcsine:
      if (x <= -1.0) return 1.0;
      if (x >= 1.0) return 0.0;
      return 0.5 - std::asin(x) / kPi;
    case Family::exponential:
      return x <= 0.0 ? 1.0 : std::exp(-x / scale_);
    case Family::weibull:
      return x <= 0.0 ? 1.0 : std::exp(-std::pow(x, shape_));
    case Family::erlang:
      return erlang_tails(n1_, x / scale_).upper;
    case Family::beta_pow:
      if (x <= 0.0) return 1.0;
      return x >= 1.0 ? 0.0 : -std::expm1(shape_ * std::log(x));
    case Family::beta_int:
      return beta_int_tails(n1_, n2_, x).upper;
    case Family::gaussian:
      return 0.5 * std::erfc((x - location_) / (scale_ * std::numbers::sqrt2));
  }
  return 0.0;
}

std::size_t Marginal::source_dim() const noexcept {
  return family_ == Family::erlang ? static_cast<std::size_t>(n1_) : 1;
}

double Marginal::transform(std::span<const double> u) const {
  if (u.size() != source_dim()) {
    throw ParameterError("transform: source vector has the wrong length");
  }
  if (family_ != Family::erlang) return quantile(u[0]);
  double sum = 0.0;
  for (double ui : u) {
    require_unit_open(ui, "transform");
    sum += -std::log1p(-ui);
  }
  return scale_ * sum;
}

double Marginal::transform_complement(std::span<const double> u) const {
  if (u.size() != source_dim()) {
    throw ParameterError("transform_complement: source vector has the wrong length");
  }
  if (family_ != Family::erlang) return quantile_complement(u[0]);
  double sum = 0.0;
  for (double ui : u) {
    require_unit_open(ui, "transform_complement");
    sum += -std::log(ui);
  }
  return scale_ * sum;
}

bool Marginal::same_shape(const Marginal& other) const noexcept {
  return family_ == other.family_ && shape_ == other.shape_ &&
         n1_ == other.n1_ && n2_ == other.n2_;
}

std::string Marginal::describe() const {
  std::ostringstream out;
  out << to_string(family_);
  switch (family_) {
    case Family::uniform01:
    case Family::arcsine:
      break;
    case Family::exponential:
      out << "(lambda=" << scale_ << ")";
      break;
    case Family::weibull:
      out << "(k=" << shape_ << ")";
      break;
    case Family::erlang:
      out << "(n=" << n1_ << ", lambda=" << scale_ << ")";
      break;
    case Family::beta_pow:
      out << "(a=" << shape_ << ")";
      break;
    case Family::beta_int:
      out << "(nu1=" << n1_ << ", nu2=" << n2_ << ")";
      break;
    case Family::gaussian:
      out << "(mu=" << location_ << ", sigma=" << scale_ << ")";
      break;
  }
  return out.str();
}

}  // namespace mincorr
