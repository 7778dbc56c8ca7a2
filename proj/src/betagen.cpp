#include "mincorr/betagen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

#include "mincorr/errors.hpp"

namespace mincorr {

BetaVecTransform::BetaVecTransform(int nu1_, int nu2_) : nu1(nu1_), nu2(nu2_) {
  if (nu1 < 1 || nu2 < 1) {
    throw ParameterError("BetaVecTransform: nu1 and nu2 must be positive integers");
  }
}

double BetaVecTransform::mean() const noexcept {
  return static_cast<double>(nu1) / (nu1 + nu2);
}

double BetaVecTransform::variance() const noexcept {
  const double a = nu1;
  const double b = nu2;
  return a * b / ((a + b) * (a + b) * (a + b + 1.0));
}

double phi_beta(const BetaVecTransform& t, std::span<const double> u) {
  if (u.size() != t.dim_u()) {
    throw ParameterError("phi_beta: source vector must have nu1 + nu2 components");
  }
  for (double x : u) {
    if (!(x > 0.0 && x < 1.0)) {
      throw ParameterError("phi_beta: source components must lie in (0,1)");
    }
  }
  // num is accumulated first and reused so the ratio equals G1 / (G1 + G2)
  // bit for bit.
  double num = 0.0;
  for (int i = 0; i < t.nu1; ++i) num += std::log(u[i]);
  double rest = 0.0;
  for (std::size_t i = static_cast<std::size_t>(t.nu1); i < u.size(); ++i) rest += std::log(u[i]);
  return num / (num + rest);
}

McEstimate c_beta_antithetic(const BetaVecTransform& t, std::size_t mc_draws,
                             RngStream& rng) {
  if (mc_draws < 10000) {
    throw ParameterError("c_beta_antithetic: mc_draws must be at least 10^4");
  }
  const double m = t.mean();
  const double var = t.variance();
  std::vector<double> u(t.dim_u());
  std::vector<double> anti(t.dim_u());
  // Welford accumulation of z = (X - m)(Y - m) / var
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t k = 0; k < mc_draws; ++k) {
    for (std::size_t i = 0; i < u.size(); ++i) {
      u[i] = rng.uniform();
      anti[i] = 1.0 - u[i];
    }
    const double z = (phi_beta(t, u) - m) * (phi_beta(t, anti) - m) / var;
    const double delta = z - mean;
    mean += delta / static_cast<double>(k + 1);
    m2 += delta * (z - mean);
  }
  const double n = static_cast<double>(mc_draws);
  return {mean, std::sqrt(m2 / (n - 1.0) / n), mc_draws};
}

McEstimate cached_c_beta_antithetic(int nu1, int nu2) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, McEstimate> cache;
  const BetaVecTransform t(nu1, nu2);
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({nu1, nu2});
    if (it != cache.end()) return it->second;
  }
  const std::uint64_t seed = 0xC0FFEE5EEDULL ^ (static_cast<std::uint64_t>(nu1) << 32) ^
                             static_cast<std::uint64_t>(nu2);
  RngStream rng(seed);
  const McEstimate est = c_beta_antithetic(t, 1000000, rng);
  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(std::make_pair(nu1, nu2), est);
  return est;
}

BetaTrivariateSampler::BetaTrivariateSampler(int nu1, int nu2, const CorrMatrix& m)
    : BetaTrivariateSampler(nu1, nu2, m, cached_c_beta_antithetic(nu1, nu2)) {}

BetaTrivariateSampler::BetaTrivariateSampler(int nu1, int nu2, const CorrMatrix& m,
                                             McEstimate c_anti)
    : t_(nu1, nu2), c_anti_(c_anti) {
  if (m.dim() != 3) {
    throw ParameterError("BetaTrivariateSampler: correlation matrix must be 3x3");
  }
  if (!is_positive_semidefinite(m)) {
    throw FeasibilityError("stop: matrix not positive semi-definite");
  }
  const double r12 = m(0, 1);
  const double r13 = m(0, 2);
  const double r23 = m(1, 2);
  const int zeros = (r12 == 0.0) + (r13 == 0.0) + (r23 == 0.0);
  const double c = c_anti_.estimate;
  std::ostringstream why;
  if (r12 * r13 * r23 < 0.0) {
    why << "odd number of negative correlations";
  } else if (zeros == 1) {
    why << "exactly one of rho_12, rho_13, rho_23 is zero";
  } else {
    for (double r : {r12, r13, r23}) {
      if (r <= c) {
        why << "entry " << r << " is at or below c(U, 1-U) = " << c;
        break;
      }
    }
  }
  if (!why.str().empty()) {
    throw FeasibilityError("stop: algorithm not applicable (" + why.str() + ")");
  }

  factors_ = factorize(m);
  for (std::size_t i = 0; i < 3; ++i) {
    const double rho = factors_.factors[i];
    if (rho <= c) {
      std::ostringstream msg;
      msg << "factor rho_" << i + 1 << " = " << rho << " is at or below c(U, 1-U) = " << c
          << "; results are only approximate for negative correlations";
      warning_ = msg.str();
    }
    // c(U, U) = 1 for the shared positive branch
    if (rho > 0.0) {
      accept_[i] = std::min(1.0, rho);
    } else if (rho < 0.0) {
      accept_[i] = std::min(1.0, rho / c);
    } else {
      accept_[i] = 0.0;
    }
  }
}

void BetaTrivariateSampler::sample(RngStream& rng, std::span<double> out) const {
  const std::size_t k = t_.dim_u();
  std::vector<double> u(k);
  std::vector<double> anti(k);
  std::vector<double> v(k);
  for (std::size_t i = 0; i < k; ++i) {
    u[i] = rng.uniform();
    anti[i] = 1.0 - u[i];
  }
  for (std::size_t i = 0; i < 3; ++i) {
    for (double& x : v) x = rng.uniform();
    const double w = rng.uniform();
    if (w < accept_[i]) {
      out[i] = phi_beta(t_, factors_.factors[i] > 0.0 ? u : anti);
    } else {
      out[i] = phi_beta(t_, v);
    }
  }
}

std::array<double, 3> sample_beta_trivariate(int nu1, int nu2,
                                             const CorrMatrix& m,
                                             RngStream& rng) {
  const BetaTrivariateSampler sampler(nu1, nu2, m);
  std::array<double, 3> out{};
  sampler.sample(rng, out);
  return out;
}

}  // namespace mincorr
