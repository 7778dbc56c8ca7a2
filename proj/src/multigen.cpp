#include "mincorr/multigen.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mincorr/errors.hpp"
#include "mincorr/pairgen.hpp"

namespace mincorr {
namespace {

constexpr double kResidualTol = 1e-10;

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

std::size_t count_negative(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](double x) { return x < 0.0; }));
}

void fill_uniform(RngStream& rng, std::span<double> out) {
  for (double& x : out) x = rng.uniform();
}

double accept_for(double factor, const CorrRange& range) {
  if (factor == 0.0) return 0.0;
  const double ratio = factor > 0.0 ? factor / range.rho_max : factor / range.rho_min;
  return std::clamp(ratio, 0.0, 1.0);
}

}  // namespace

std::string to_string(SignChoice choice) {
  return choice == SignChoice::as_solved ? "as_solved" : "flipped";
}

std::string to_string(Region3 region) {
  switch (region) {
    case Region3::outside_psd: return "outside_psd";
    case Region3::psd_not_factorizable: return "psd_not_factorizable";
    case Region3::factorizable: return "factorizable";
  }
  return "unknown";
}

FactorVector factorize(const CorrMatrix& m) {
  const std::size_t d = m.dim();
  FactorVector out;
  out.factors.assign(d, 0.0);

  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < d; ++i) {
    bool all_zero = true;
    for (std::size_t j = 0; j < d; ++j) {
      if (j != i && m(i, j) != 0.0) all_zero = false;
    }
    if (!all_zero) active.push_back(i);
  }
  for (std::size_t a = 0; a < active.size(); ++a) {
    for (std::size_t b = a + 1; b < active.size(); ++b) {
      if (m(active[a], active[b]) == 0.0) {
        std::ostringstream msg;
        msg << "zero pattern has no product factorization: rho_" << active[a] + 1
            << active[b] + 1 << " = 0 while both coordinates are correlated with others";
        throw FactorizationError(msg.str());
      }
    }
  }

  if (active.empty()) return out;

  if (active.size() == 2) {
    out.shared_source = active[0];
    out.factors[active[0]] = 1.0;
    out.factors[active[1]] = m(active[0], active[1]);
    out.n_negative = count_negative(out.factors);
    return out;
  }

  // Signs: s_i s_j = sign(rho_ij) must hold on every pair.
  const std::size_t first = active[0];
  std::vector<int> sign(d, 0);
  sign[first] = 1;
  for (std::size_t a = 1; a < active.size(); ++a) sign[active[a]] = sign_of(m(first, active[a]));
  for (std::size_t a = 1; a < active.size(); ++a) {
    for (std::size_t b = a + 1; b < active.size(); ++b) {
      const std::size_t i = active[a];
      const std::size_t j = active[b];
      if (sign[i] * sign[j] != sign_of(m(i, j))) {
        std::ostringstream msg;
        msg << "sign pattern has no product factorization: the triangle ("
            << first + 1 << "," << i + 1 << "," << j + 1
            << ") has an odd number of negative correlations";
        throw FactorizationError(msg.str());
      }
    }
  }

  if (active.size() == 3) {
    const std::size_t i = active[0];
    const std::size_t j = active[1];
    const std::size_t k = active[2];
    const double rij = m(i, j);
    const double rik = m(i, k);
    const double rjk = m(j, k);
    const double mid = std::sqrt(rij * rjk / rik);
    out.factors[j] = mid;
    out.factors[i] = rij / mid;
    out.factors[k] = rjk / mid;
  } else {
    // log|rho_ij| = a_i + a_j, least squares over the active block:
    // a_i = s_i / (n - 2) - T / ((n - 1)(n - 2)).
    const double n = static_cast<double>(active.size());
    std::vector<double> row_sum(active.size(), 0.0);
    double total = 0.0;
    for (std::size_t a = 0; a < active.size(); ++a) {
      for (std::size_t b = a + 1; b < active.size(); ++b) {
        const double l = std::log(std::abs(m(active[a], active[b])));
        row_sum[a] += l;
        row_sum[b] += l;
        total += l;
      }
    }
    for (std::size_t a = 0; a < active.size(); ++a) {
      const double log_mag = row_sum[a] / (n - 2.0) - total / ((n - 1.0) * (n - 2.0));
      out.factors[active[a]] = sign[active[a]] * std::exp(log_mag);
    }
  }

  double worst = 0.0;
  for (std::size_t a = 0; a < active.size(); ++a) {
    for (std::size_t b = a + 1; b < active.size(); ++b) {
      const std::size_t i = active[a];
      const std::size_t j = active[b];
      worst = std::max(worst, std::abs(out.factors[i] * out.factors[j] - m(i, j)));
    }
  }
  if (worst > kResidualTol) {
    std::ostringstream msg;
    msg << "matrix has no product factorization rho_ij = rho_i rho_j (max residual "
        << worst << ")";
    throw FactorizationError(msg.str());
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (std::abs(out.factors[i]) >= 1.0) {
      std::ostringstream msg;
      msg << "factor rho_" << i + 1 << " = " << out.factors[i]
          << " has magnitude >= 1; the target is not attainable by a product factorization";
      throw FactorizationError(msg.str());
    }
  }

  const std::size_t negatives = count_negative(out.factors);
  const std::size_t positives = static_cast<std::size_t>(
      std::count_if(out.factors.begin(), out.factors.end(), [](double x) { return x > 0.0; }));
  if (positives < negatives) {
    for (double& f : out.factors) f = -f;
    out.sign_choice = SignChoice::flipped;
  }
  out.n_negative = count_negative(out.factors);
  return out;
}

EquicorrelatedSampler::EquicorrelatedSampler(Marginal f, double rho, std::size_t dim)
    : f_(f), rho_(rho), dim_(dim) {
  if (!(std::abs(rho) <= 1.0)) {
    throw ParameterError("sample_equicorrelated: |rho| must be <= 1");
  }
  if (dim < 2) throw ParameterError("sample_equicorrelated: dim must be >= 2");
}

void EquicorrelatedSampler::sample(RngStream& rng, std::span<double> out) const {
  const std::size_t s = f_.source_dim();
  const double threshold = std::abs(rho_);
  if (s == 1) {
    const double u = rng.uniform();
    const double shared = f_.quantile(u);
    for (std::size_t i = 0; i < dim_; ++i) {
      const double v = rng.uniform();
      const double w = rng.uniform();
      out[i] = w < threshold ? shared : f_.quantile(v);
    }
    return;
  }
  std::vector<double> u(s);
  std::vector<double> v(s);
  fill_uniform(rng, u);
  const double shared = f_.transform(u);
  for (std::size_t i = 0; i < dim_; ++i) {
    fill_uniform(rng, v);
    const double w = rng.uniform();
    out[i] = w < threshold ? shared : f_.transform(v);
  }
}

std::vector<double> sample_equicorrelated(const Marginal& f, double rho,
                                          std::size_t n, RngStream& rng) {
  const EquicorrelatedSampler sampler(f, rho, n);
  std::vector<double> out(n);
  sampler.sample(rng, out);
  return out;
}

FactorSampler::FactorSampler(Marginal f, FactorVector factors)
    : FactorSampler(f, std::move(factors), corr_range(f, f)) {}

FactorSampler::FactorSampler(Marginal f, FactorVector factors, CorrRange range)
    : f_(f), factors_(std::move(factors)), range_(range) {
  for (std::size_t i = 0; i < factors_.factors.size(); ++i) {
    const double rho = factors_.factors[i];
    if (!std::isfinite(rho) || rho < range_.rho_min - kRangeTolerance ||
        rho > range_.rho_max + kRangeTolerance) {
      std::ostringstream msg;
      msg << "factor rho_" << i + 1 << " = " << rho
          << " is outside the attainable range [" << range_.rho_min << ", "
          << range_.rho_max << "] of " << f_.describe();
      throw RangeError(msg.str());
    }
    accept_.push_back(accept_for(rho, range_));
  }
  factors_.n_negative = count_negative(factors_.factors);
}

std::optional<std::string> FactorSampler::exactness_warning() const {
  if (factors_.n_negative < 2 || range_.rho_min <= -1.0) return std::nullopt;
  std::ostringstream msg;
  msg << factors_.n_negative
      << " negative factors: pairs of negatively loaded coordinates have correlation "
         "(rho_i/rho_min)(rho_j/rho_min) rather than rho_i rho_j";
  return msg.str();
}

void FactorSampler::sample(RngStream& rng, std::span<double> out) const {
  const std::size_t s = f_.source_dim();
  const auto& factors = factors_.factors;
  if (s == 1) {
    const double u = rng.uniform();
    // shared-branch values are computed at most once per draw
    double same = 0.0;
    double anti = 0.0;
    bool have_same = false;
    bool have_anti = false;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const double v = rng.uniform();
      const double w = rng.uniform();
      if (w < accept_[i]) {
        if (factors[i] > 0.0) {
          if (!have_same) same = f_.quantile(u), have_same = true;
          out[i] = same;
        } else {
          if (!have_anti) anti = f_.quantile_complement(u), have_anti = true;
          out[i] = anti;
        }
      } else {
        out[i] = f_.quantile(v);
      }
    }
    return;
  }
  std::vector<double> u(s);
  std::vector<double> v(s);
  fill_uniform(rng, u);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    fill_uniform(rng, v);
    const double w = rng.uniform();
    if (w < accept_[i]) {
      out[i] = factors[i] > 0.0 ? f_.transform(u) : f_.transform_complement(u);
    } else {
      out[i] = f_.transform(v);
    }
  }
}

std::vector<double> sample_multivariate(const Marginal& f,
                                        const FactorVector& factors,
                                        RngStream& rng) {
  const FactorSampler sampler(f, factors);
  std::vector<double> out(sampler.dim());
  sampler.sample(rng, out);
  return out;
}

FeasibilityReport feasibility_check(const Marginal& f, const CorrMatrix& m,
                                    double psd_tol) {
  FeasibilityReport report;
  report.min_eigenvalue = min_eigenvalue(m);
  report.psd = report.min_eigenvalue >= -psd_tol;
  report.leading_minors = leading_principal_minors(m);

  try {
    report.factors = factorize(m);
    report.factorized = true;
  } catch (const FactorizationError& e) {
    report.factorization_error = e.what();
  }

  report.range = corr_range(f, f);
  const std::size_t d = m.dim();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      const double r = m(i, j);
      if (r < report.range.rho_min - kRangeTolerance) {
        report.violations.push_back({"entry", i, j, r, report.range.rho_min});
      } else if (r > report.range.rho_max + kRangeTolerance) {
        report.violations.push_back({"entry", i, j, r, report.range.rho_max});
      }
    }
  }
  if (report.factors) {
    for (std::size_t i = 0; i < d; ++i) {
      const double r = report.factors->factors[i];
      if (r < report.range.rho_min - kRangeTolerance) {
        report.violations.push_back({"factor", i, i, r, report.range.rho_min});
      } else if (r > report.range.rho_max + kRangeTolerance) {
        report.violations.push_back({"factor", i, i, r, report.range.rho_max});
      }
    }
    if (report.factors->n_negative >= 2 && report.range.rho_min > -1.0) {
      report.warnings.push_back(
          "factorization has two or more negative factors; correlations "
          "between negatively loaded coordinates are not exact");
    }
  }

  if (d == 3) {
    report.region = !report.psd ? Region3::outside_psd
                    : report.factorized ? Region3::factorizable
                                        : Region3::psd_not_factorizable;
  }

  if (!report.psd) {
    report.first_failure = "psd";
  } else if (!report.factorized) {
    report.first_failure = "factorization";
  } else if (!report.violations.empty()) {
    report.first_failure = "bounds";
  }
  report.feasible = report.first_failure.empty();
  return report;
}

}  // namespace mincorr
