#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "mincorr/errors.hpp"
#include "mincorr/marginal.hpp"
#include "mincorr/quadrature.hpp"
#include "mincorr/rng.hpp"
#include "mincorr/stats.hpp"

using namespace mincorr;

namespace {

std::vector<Marginal> registry() {
  return {Marginal::uniform01(),       Marginal::arcsine(),
          Marginal::exponential(1.0),  Marginal::exponential(2.5),
          Marginal::weibull(0.5),      Marginal::weibull(2.0),
          Marginal::weibull(4.0),      Marginal::erlang(1, 1.0),
          Marginal::erlang(5, 2.0),    Marginal::beta_pow(0.3),
          Marginal::beta_pow(3.0),     Marginal::beta_int(4, 7),
          Marginal::beta_int(1, 1),    Marginal::gaussian(0.0, 1.0),
          Marginal::gaussian(-3.0, 0.5)};
}

double quantile_at(const Marginal& m, double u, double um) {
  return u <= 0.5 ? m.quantile(u) : m.quantile_complement(um);
}

}  // namespace

TEST(MeanSd, Examples) {
  const auto u = Marginal::uniform01().mean_sd();
  EXPECT_DOUBLE_EQ(u.mean, 0.5);
  EXPECT_NEAR(u.sd, 1.0 / std::sqrt(12.0), 1e-15);

  const auto e = Marginal::exponential(1.0).mean_sd();
  EXPECT_DOUBLE_EQ(e.mean, 1.0);
  EXPECT_DOUBLE_EQ(e.sd, 1.0);

  // density a x^{a-1}: E X = a/(a+1), E X^2 = a/(a+2)
  const double a = 0.5;
  const auto b = Marginal::beta_pow(a).mean_sd();
  EXPECT_NEAR(b.mean, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(b.sd, std::sqrt(a / (a + 2) - (a / (a + 1)) * (a / (a + 1))), 1e-15);
  EXPECT_NEAR(b.sd, 0.29814239699997197, 1e-12);
}

TEST(MeanSd, ParameterDomain) {
  EXPECT_THROW(Marginal::weibull(0.0), ParameterError);
  EXPECT_THROW(Marginal::weibull(-1.0), ParameterError);
  EXPECT_THROW(Marginal::weibull(std::nan("")), ParameterError);
  EXPECT_THROW(Marginal::exponential(0.0), ParameterError);
  EXPECT_THROW(Marginal::erlang(0, 1.0), ParameterError);
  EXPECT_THROW(Marginal::erlang(2, -1.0), ParameterError);
  EXPECT_THROW(Marginal::beta_pow(0.0), ParameterError);
  EXPECT_THROW(Marginal::beta_int(0, 3), ParameterError);
  EXPECT_THROW(Marginal::gaussian(0.0, 0.0), ParameterError);
  EXPECT_THROW(Marginal::gaussian(std::numeric_limits<double>::infinity(), 1.0),
               ParameterError);
}

TEST(Quantile, Examples) {
  EXPECT_DOUBLE_EQ(Marginal::uniform01().quantile(0.3), 0.3);
  EXPECT_NEAR(Marginal::exponential(1.0).quantile(0.5), std::log(2.0), 1e-15);
  EXPECT_NEAR(Marginal::arcsine().quantile(0.5), 0.0, 1e-15);
  EXPECT_NEAR(Marginal::weibull(2.0).quantile(1.0 - std::exp(-1.0)), 1.0, 1e-14);
}

TEST(Quantile, DomainErrors) {
  for (const auto& m : registry()) {
    EXPECT_THROW(m.quantile(0.0), ParameterError) << m.describe();
    EXPECT_THROW(m.quantile(1.0), ParameterError) << m.describe();
    EXPECT_THROW(m.quantile(-0.2), ParameterError) << m.describe();
    EXPECT_THROW(m.quantile(std::nan("")), ParameterError) << m.describe();
  }
}

TEST(Quantile, MonotoneOnDenseGrid) {
  for (const auto& m : registry()) {
    double prev = -std::numeric_limits<double>::infinity();
    for (int i = 1; i < 20000; ++i) {
      const double q = m.quantile(i / 20000.0);
      ASSERT_GE(q, prev) << m.describe() << " at i=" << i;
      prev = q;
    }
    // tails
    EXPECT_LE(m.quantile(1e-15), m.quantile(1e-10)) << m.describe();
    EXPECT_LE(m.quantile(1.0 - 1e-10), m.quantile_complement(1e-15)) << m.describe();
  }
}

TEST(Quantile, InvertsCdf) {
  // u must be bracketed by the cdf a few ulps either side of the quantile;
  // near endpoints such as x = -1 for the arcsine law adjacent doubles are
  // already far apart in probability
  const auto step = [](double x, int k) {
    const double dir = k > 0 ? std::numeric_limits<double>::infinity()
                             : -std::numeric_limits<double>::infinity();
    for (int i = 0; i < std::abs(k); ++i) x = std::nextafter(x, dir);
    return x;
  };
  for (const auto& m : registry()) {
    for (double u : {1e-8, 0.001, 0.1, 0.37, 0.5, 0.81, 0.999}) {
      const double q = m.quantile(u);
      EXPECT_LE(m.cdf(step(q, -4)), u * (1 + 1e-12)) << m.describe() << " u=" << u;
      EXPECT_GE(m.cdf(step(q, 4)), u * (1 - 1e-12)) << m.describe() << " u=" << u;
      const double c = m.quantile_complement(u);
      EXPECT_GE(m.survival(step(c, -4)), u * (1 - 1e-12)) << m.describe() << " u=" << u;
      EXPECT_LE(m.survival(step(c, 4)), u * (1 + 1e-12)) << m.describe() << " u=" << u;
    }
  }
}

TEST(Quantile, ComplementMatchesDirect) {
  for (const auto& m : registry()) {
    for (double q : {0.02, 0.25, 0.5, 0.75}) {
      const double a = m.quantile_complement(q);
      const double b = m.quantile(1.0 - q);
      EXPECT_NEAR(a, b, 1e-9 * std::max(1.0, std::abs(b))) << m.describe();
    }
  }
}

TEST(Cdf, AnalyticOracles) {
  const auto arc = Marginal::arcsine();
  for (double x : {-0.9, -0.3, 0.0, 0.4, 0.99}) {
    EXPECT_NEAR(arc.cdf(x), 0.5 + std::asin(x) / std::numbers::pi, 1e-14);
  }
  // Gamma(2, 1): 1 - e^{-x}(1 + x)
  const auto er2 = Marginal::erlang(2, 1.0);
  for (double x : {0.01, 0.5, 1.0, 3.0, 12.0}) {
    EXPECT_NEAR(er2.cdf(x), 1.0 - std::exp(-x) * (1.0 + x), 1e-14);
    EXPECT_NEAR(er2.survival(x), std::exp(-x) * (1.0 + x), 1e-14 * std::exp(-x) * (1 + x) + 1e-300);
  }
  // Beta(2, 1): x^2
  const auto b21 = Marginal::beta_int(2, 1);
  for (double x : {0.1, 0.5, 0.9}) EXPECT_NEAR(b21.cdf(x), x * x, 1e-14);

  // Beta(4, 7) against Simpson integration of the density
  const auto b47 = Marginal::beta_int(4, 7);
  const double norm = 1.0 / (std::tgamma(4) * std::tgamma(7) / std::tgamma(11));
  for (double x : {0.1, 0.3, 0.5, 0.8}) {
    const int steps = 20000;
    const double h = x / steps;
    double s = 0.0;
    for (int i = 0; i <= steps; ++i) {
      const double t = i * h;
      const double w = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      s += w * norm * std::pow(t, 3) * std::pow(1 - t, 6);
    }
    EXPECT_NEAR(b47.cdf(x), s * h / 3.0, 1e-12);
  }
  EXPECT_EQ(b47.cdf(-1.0), 0.0);
  EXPECT_EQ(b47.cdf(2.0), 1.0);
}

TEST(NormalQuantile, AgainstErfcNewtonStep) {
  // one Newton step on Phi(x) = p with Phi from erfc gives an independent
  // reference to ~1e-15
  const auto phi = [](double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); };
  const auto dens = [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2 * std::numbers::pi); };
  for (double p : {1e-12, 1e-6, 0.001, 0.02425, 0.1, 0.3, 0.5, 0.7, 0.97575, 0.999}) {
    const double q = normal_quantile(p);
    const double ref = q - (phi(q) - p) / dens(q);
    EXPECT_NEAR(q, ref, 1e-9) << "p=" << p;
  }
  EXPECT_NEAR(normal_quantile_complement(1e-12), -normal_quantile(1e-12), 1e-12);
  EXPECT_THROW(normal_quantile(0.0), ParameterError);
}

TEST(Moments, QuadratureOfQuantileReproducesMeanSd) {
  for (const auto& m : registry()) {
    const auto first = integrate_unit_interval(
        [&](double u, double um) { return quantile_at(m, u, um); });
    const auto second = integrate_unit_interval([&](double u, double um) {
      const double q = quantile_at(m, u, um);
      return q * q;
    });
    const auto ms = m.mean_sd();
    EXPECT_NEAR(first.value, ms.mean, 1e-8) << m.describe();
    EXPECT_NEAR(std::sqrt(second.value - first.value * first.value), ms.sd, 1e-8)
        << m.describe();
  }
}

TEST(Transform, KsPassesForEveryFamily) {
  RngStream rng(20240601);
  for (const auto& m : registry()) {
    std::vector<double> xs(100000);
    std::vector<double> u(m.source_dim());
    for (auto& x : xs) {
      for (auto& v : u) v = rng.uniform();
      x = m.transform(u);
    }
    const auto r = ks_test(xs, m, 0.01);
    EXPECT_TRUE(r.pass) << m.describe() << " D=" << r.statistic;
  }
}

TEST(Transform, ErlangIsSumOfExponentials) {
  const auto m = Marginal::erlang(3, 2.0);
  EXPECT_EQ(m.source_dim(), 3u);
  const std::vector<double> u{0.1, 0.5, 0.9};
  const double expect = 2.0 * (-std::log1p(-0.1) - std::log1p(-0.5) - std::log1p(-0.9));
  EXPECT_NEAR(m.transform(u), expect, 1e-14);
  const double anti = 2.0 * (-std::log(0.1) - std::log(0.5) - std::log(0.9));
  EXPECT_NEAR(m.transform_complement(u), anti, 1e-14);
  EXPECT_EQ(Marginal::weibull(2.0).source_dim(), 1u);
}

TEST(Marginal, SameShape) {
  EXPECT_TRUE(Marginal::erlang(3, 1.0).same_shape(Marginal::erlang(3, 5.0)));
  EXPECT_FALSE(Marginal::erlang(3, 1.0).same_shape(Marginal::erlang(2, 1.0)));
  EXPECT_FALSE(Marginal::weibull(2.0).same_shape(Marginal::exponential()));
  EXPECT_TRUE(Marginal::gaussian(0, 1).same_shape(Marginal::gaussian(3, 2)));
}
