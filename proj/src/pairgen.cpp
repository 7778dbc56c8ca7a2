#include "mincorr/pairgen.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mincorr/errors.hpp"

namespace mincorr {
namespace {

double acceptance(double rho, const CorrRange& range) {
  if (rho == 0.0) return 0.0;
  const double ratio = rho > 0.0 ? rho / range.rho_max : rho / range.rho_min;
  return std::clamp(ratio, 0.0, 1.0);
}

}  // namespace

PairSampler::PairSampler(Marginal f, Marginal g, double rho)
    : PairSampler(f, g, rho, corr_range(f, g)) {}

PairSampler::PairSampler(Marginal f, Marginal g, double rho, CorrRange range)
    : f_(f), g_(g), rho_(rho), range_(range) {
  if (!std::isfinite(rho)) throw ParameterError("PairSampler: rho must be finite");
  if (rho < range.rho_min - kRangeTolerance || rho > range.rho_max + kRangeTolerance) {
    std::ostringstream msg;
    msg << "rho = " << rho << " is outside the attainable range ["
        << range.rho_min << ", " << range.rho_max << "] for " << f.describe()
        << " and " << g.describe();
    throw RangeError(msg.str());
  }
  accept_prob_ = acceptance(rho, range);
  if (f.family() == Family::erlang && f.same_shape(g)) sum_terms_ = f.shape_n();
}

std::size_t PairSampler::uniforms_per_draw() const noexcept {
  return 3 * static_cast<std::size_t>(std::max(1, sum_terms_));
}

Pair PairSampler::sample(RngStream& rng) const {
  if (sum_terms_ == 0) {
    const double u = rng.uniform();
    const double v = rng.uniform();
    const double w = rng.uniform();
    const double x = f_.quantile(u);
    double y;
    if (w < accept_prob_) {
      y = rho_ < 0.0 ? g_.quantile_complement(u) : g_.quantile(u);
    } else {
      y = g_.quantile(v);
    }
    return {x, y};
  }

  // Erlang: each term is an exponential pair from the scalar rule above.
  double x = 0.0;
  double y = 0.0;
  for (int k = 0; k < sum_terms_; ++k) {
    const double u = rng.uniform();
    const double v = rng.uniform();
    const double w = rng.uniform();
    x += -std::log1p(-u);
    if (w < accept_prob_) {
      y += rho_ < 0.0 ? -std::log(u) : -std::log1p(-u);
    } else {
      y += -std::log1p(-v);
    }
  }
  return {f_.scale() * x, g_.scale() * y};
}

void PairSampler::sample(RngStream& rng, std::span<double> out) const {
  const Pair p = sample(rng);
  out[0] = p.x;
  out[1] = p.y;
}

Pair sample_erlang_pair(int n, double lambda, double rho, RngStream& rng) {
  const Marginal m = Marginal::erlang(n, lambda);
  return PairSampler(m, m, rho).sample(rng);
}

FrechetBounds frechet_bounds(const Marginal& f, const Marginal& g, double x,
                             double y) {
  const double fx = f.cdf(x);
  const double gy = g.cdf(y);
  return {std::max(0.0, fx + gy - 1.0), std::min(fx, gy)};
}

double joint_cdf(const PairSampler& sampler, double x, double y) {
  if (sampler.sum_construction()) {
    throw ParameterError(
        "joint_cdf: the Erlang sum construction is not an extremal/product mixture");
  }
  const double fx = sampler.f().cdf(x);
  const double gy = sampler.g().cdf(y);
  const FrechetBounds b = frechet_bounds(sampler.f(), sampler.g(), x, y);
  const double extremal = sampler.antithetic() ? b.lower : b.upper;
  const double a = sampler.accept_prob();
  return a * extremal + (1.0 - a) * fx * gy;
}

}  // namespace mincorr
