#ifndef MINCORR_QUADRATURE_HPP
#define MINCORR_QUADRATURE_HPP

#include <cstddef>
#include <functional>

namespace mincorr {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  // Maximum number of bisections applied to any one interval.
  int max_refinement = 60;
  // The initial partition of each half of (0,1) is dyadic toward the
  // endpoint: [2^-(j+1), 2^-j] for j = 1..endpoint_levels, plus the remainder.
  int endpoint_levels = 1000;
  std::size_t max_intervals = 400000;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Integrand over (0,1) receiving both u and 1 - u. Whichever of the two is
/// nearer its endpoint is passed exactly, so transforms that blow up at 0 or
/// 1 can be evaluated without cancellation.
using UnitIntegrand = std::function<double(double u, double one_minus_u)>;

/// Adaptive Gauss-Kronrod (7/15) integration over (0,1) with dyadic endpoint
/// grading. Handles integrable endpoint singularities such as log^p and
/// x^{-alpha}. Never throws; check `converged`.
QuadratureResult integrate_unit_interval(const UnitIntegrand& f,
                                         const QuadratureOptions& options = {});

}  // namespace mincorr

#endif  // MINCORR_QUADRATURE_HPP
