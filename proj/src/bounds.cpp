#include "mincorr/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mincorr/errors.hpp"

namespace mincorr {

std::string to_string(Coupling coupling) {
  switch (coupling) {
    case Coupling::same_source: return "same_source";
    case Coupling::antithetic: return "antithetic";
    case Coupling::independent: return "independent";
  }
  return "unknown";
}

std::string to_string(RangeMethod method) {
  switch (method) {
    case RangeMethod::closed_form: return "closed_form";
    case RangeMethod::quadrature: return "quadrature";
    case RangeMethod::monte_carlo: return "monte_carlo";
  }
  return "unknown";
}

double exponential_min_corr() { return 1.0 - std::numbers::pi * std::numbers::pi / 6.0; }

std::optional<double> c_coeff_closed_form(const Marginal& f, const Marginal& g,
                                          Coupling coupling) {
  if (coupling == Coupling::independent) return 0.0;
  if (!f.same_shape(g)) return std::nullopt;
  // Same family and shape: the transforms differ by a positive affine map.
  if (coupling == Coupling::same_source) return 1.0;

  switch (f.family()) {
    case Family::uniform01:
    case Family::arcsine:
    case Family::gaussian:
      // Symmetric laws: F^{-1}(1-u) is an affine image of -F^{-1}(u).
      return -1.0;
    case Family::exponential:
    case Family::erlang:
      // Erlang pairs are generated as sums of antithetic exponential pairs.
      return exponential_min_corr();
    case Family::weibull:
      if (f.shape() == 1.0) return exponential_min_corr();
      return std::nullopt;
    case Family::beta_pow: {
      const double inv = 1.0 / f.shape();
      const double n = std::round(inv);
      if (n >= 1.0 && n <= 1e6 && std::abs(inv - n) <= 1e-12 * n) {
        return beta_recip_min_corr(static_cast<int>(n));
      }
      return std::nullopt;
    }
    case Family::beta_int:
      return std::nullopt;
  }
  return std::nullopt;
}

QuadratureResult c_coeff_quadrature(const Marginal& f, const Marginal& g,
                                    Coupling coupling,
                                    const QuadratureOptions& options) {
  if (coupling == Coupling::independent) {
    QuadratureResult zero;
    zero.converged = true;
    return zero;
  }
  const Moments mf = f.mean_sd();
  const Moments mg = g.mean_sd();
  const double norm = 1.0 / (mf.sd * mg.sd);
  const bool antithetic = coupling == Coupling::antithetic;

  // (u, w) with w = 1 - u; the smaller of the two is exact.
  auto integrand = [&](double u, double w) {
    const bool lower_half = u <= 0.5;
    const double x = lower_half ? f.quantile(u) : f.quantile_complement(w);
    double y;
    if (!antithetic) {
      y = lower_half ? g.quantile(u) : g.quantile_complement(w);
    } else {
      y = lower_half ? g.quantile_complement(u) : g.quantile(w);
    }
    return (x - mf.mean) * (y - mg.mean) * norm;
  };
  return integrate_unit_interval(integrand, options);
}

double c_coeff(const Marginal& f, const Marginal& g, Coupling coupling) {
  if (auto exact = c_coeff_closed_form(f, g, coupling)) return *exact;
  const QuadratureResult q = c_coeff_quadrature(f, g, coupling);
  if (!q.converged) {
    std::ostringstream msg;
    msg << "c_coeff(" << f.describe() << ", " << g.describe() << ", "
        << to_string(coupling) << "): quadrature did not converge, estimate "
        << q.value << " with error bound " << q.abs_error;
    throw NumericalAccuracyError(msg.str(), q.value, q.abs_error);
  }
  return q.value;
}

CorrRange corr_range(const Marginal& f, const Marginal& g) {
  CorrRange range;
  range.method = RangeMethod::closed_form;
  auto resolve = [&](Coupling coupling) {
    if (auto exact = c_coeff_closed_form(f, g, coupling)) return *exact;
    const QuadratureResult q = c_coeff_quadrature(f, g, coupling);
    if (!q.converged) {
      std::ostringstream msg;
      msg << "corr_range(" << f.describe() << ", " << g.describe()
          << "): quadrature for " << to_string(coupling)
          << " coupling did not converge, estimate " << q.value
          << " with error bound " << q.abs_error;
      throw NumericalAccuracyError(msg.str(), q.value, q.abs_error);
    }
    range.method = RangeMethod::quadrature;
    range.abs_error_bound += q.abs_error;
    return q.value;
  };
  range.rho_max = std::min(1.0, resolve(Coupling::same_source));
  range.rho_min = std::max(-1.0, resolve(Coupling::antithetic));
  return range;
}

double beta_recip_min_corr(int n) {
  if (n < 1) throw ParameterError("beta_recip_min_corr: n must be >= 1");
  // ratio = ((n+1)!)^2 / (2n)!, built up one step at a time:
  // ratio_n / ratio_{n-1} = (n+1)^2 / (2n (2n-1)), ratio_0 = 1.
  double ratio = 1.0;
  for (int k = 1; k <= n; ++k) {
    const double kk = k;
    ratio *= (kk + 1.0) * (kk + 1.0) / (2.0 * kk * (2.0 * kk - 1.0));
  }
  const double nn = n;
  return (ratio - (2.0 * nn + 1.0)) / (nn * nn);
}

double exp_min_corr_series(long terms) {
  if (terms < 1) throw ParameterError("exp_min_corr_series: terms must be >= 1");
  double sum = 0.0;
  // smallest terms first
  for (long i = terms; i >= 1; --i) {
    const double x = static_cast<double>(i);
    sum += 1.0 / (x * (x + 1.0) * (x + 1.0));
  }
  return sum;
}

double reciprocal_binomial_sum(int n, long terms) {
  if (n < 2) throw ParameterError("reciprocal_binomial_sum: n must be >= 2");
  if (terms < 1) throw ParameterError("reciprocal_binomial_sum: terms must be >= 1");
  // 1/C(n+k, k): term_0 = 1, term_{k+1} = term_k (k+1) / (n+k+1)
  std::vector<double> series;
  series.reserve(static_cast<std::size_t>(terms));
  double term = 1.0;
  for (long k = 0; k < terms; ++k) {
    series.push_back(term);
    term *= static_cast<double>(k + 1) / static_cast<double>(n + k + 1);
  }
  double sum = 0.0;
  for (auto it = series.rbegin(); it != series.rend(); ++it) sum += *it;
  return sum;
}

}  // namespace mincorr
