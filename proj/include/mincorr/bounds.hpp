#ifndef MINCORR_BOUNDS_HPP
#define MINCORR_BOUNDS_HPP

#include <optional>
#include <string>

#include "mincorr/marginal.hpp"
#include "mincorr/quadrature.hpp"

namespace mincorr {

/// How the two marginals share their uniform source in c(U, U').
enum class Coupling {
  same_source,  // U' = U (comonotone)
  antithetic,   // U' = 1 - U (countermonotone)
  independent,  // U' independent of U
};

enum class RangeMethod { closed_form, quadrature, monte_carlo };

std::string to_string(Coupling coupling);
std::string to_string(RangeMethod method);

/// Attainable correlation interval [rho_min, rho_max] for a marginal pair.
struct CorrRange {
  double rho_min = -1.0;
  double rho_max = 1.0;
  RangeMethod method = RangeMethod::closed_form;
  double abs_error_bound = 0.0;
};

/// 1 - pi^2/6, the minimum correlation of two unit exponentials.
double exponential_min_corr();

/// Normalized cross moment (E[phi(U) psi(U')] - m_F m_G) / (sd_F sd_G) where
/// phi, psi are the generator transforms of f and g.
///
/// Uses an exact value when one is known (uniform, arcsine, gaussian and
/// exponential pairs of one family, Beta(1/n, 1), the Erlang sum
/// construction), and adaptive quadrature otherwise. Throws
/// NumericalAccuracyError if quadrature misses its tolerance.
double c_coeff(const Marginal& f, const Marginal& g, Coupling coupling);

/// The exact value used by c_coeff, if the pair has one.
std::optional<double> c_coeff_closed_form(const Marginal& f, const Marginal& g,
                                          Coupling coupling);

/// c computed by integrating the quantile product F^{-1}(u) G^{-1}(u') over
/// (0,1), regardless of closed forms. For Erlang this integrates the scalar
/// quantile, i.e. the true Frechet-Hoeffding bound of the Gamma law.
QuadratureResult c_coeff_quadrature(const Marginal& f, const Marginal& g,
                                    Coupling coupling,
                                    const QuadratureOptions& options = {});

/// [c(antithetic), c(same_source)] for the pair.
///
/// For two Erlang marginals with the same shape the range is the one the
/// sum-of-exponentials construction attains, [1 - pi^2/6, 1].
CorrRange corr_range(const Marginal& f, const Marginal& g);

/// Minimum correlation of two Beta(1/n, 1) variables:
/// (((n+1)!)^2 - (2n+1)!) / (n^2 (2n)!), evaluated in log space.
double beta_recip_min_corr(int n);

/// sum_{i=1}^{terms} 1 / (i (i+1)^2); converges to 2 - pi^2/6.
double exp_min_corr_series(long terms);

/// sum_{k=0}^{terms-1} 1 / C(n+k, k); converges to n / (n-1).
double reciprocal_binomial_sum(int n, long terms);

}  // namespace mincorr

#endif  // MINCORR_BOUNDS_HPP
