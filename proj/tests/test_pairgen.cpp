#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "mincorr/batch.hpp"
#include "mincorr/errors.hpp"
#include "mincorr/pairgen.hpp"
#include "mincorr/stats.hpp"

using namespace mincorr;

namespace {

struct Cols {
  std::vector<double> x;
  std::vector<double> y;
};

Cols draw(const PairSampler& s, std::size_t n, std::uint64_t seed) {
  const auto b = generate_batch(s, n, seed, 4);
  return {b.column(0), b.column(1)};
}

}  // namespace

TEST(SamplePair, ZeroCorrelationIsIndependent) {
  const PairSampler s(Marginal::weibull(0.8), Marginal::beta_pow(2.0), 0.0);
  EXPECT_EQ(s.accept_prob(), 0.0);
  const auto c = draw(s, 1000000, 11);
  EXPECT_NEAR(pearson_corr(c.x, c.y), 0.0, 0.004);
}

TEST(SamplePair, UniformRhoOneIsIdentity) {
  const PairSampler s(Marginal::uniform01(), Marginal::uniform01(), 1.0);
  EXPECT_EQ(s.accept_prob(), 1.0);
  RngStream rng(3);
  for (int i = 0; i < 10000; ++i) {
    const Pair p = sample_pair(s, rng);
    ASSERT_EQ(p.x, p.y);
  }
}

TEST(SamplePair, ExponentialMinusHalf) {
  const auto e = Marginal::exponential();
  const PairSampler s(e, e, -0.5);
  const auto c = draw(s, 1000000, 12);
  EXPECT_NEAR(pearson_corr(c.x, c.y), -0.5, 0.01);
  EXPECT_TRUE(ks_test(c.x, e, 0.01).pass);
  EXPECT_TRUE(ks_test(c.y, e, 0.01).pass);
}

TEST(SamplePair, BelowRangeIsRejected) {
  const auto e = Marginal::exponential();
  EXPECT_THROW(PairSampler(e, e, -0.8), RangeError);
  EXPECT_THROW(PairSampler(e, e, 1.0001), RangeError);
  EXPECT_THROW(PairSampler(e, e, std::nan("")), ParameterError);
}

TEST(SamplePair, ClosedBoundsAccepted) {
  const auto e = Marginal::exponential();
  const PairSampler lo(e, e, 1.0 - std::numbers::pi * std::numbers::pi / 6.0);
  EXPECT_EQ(lo.accept_prob(), 1.0);
  const PairSampler hi(e, e, 1.0);
  EXPECT_EQ(hi.accept_prob(), 1.0);
  // within the 1e-12 tolerance
  const PairSampler near(e, e, lo.rho() - 5e-13);
  EXPECT_EQ(near.accept_prob(), 1.0);
}

TEST(SamplePair, ConsumesThreeUniformsPerDraw) {
  const PairSampler s(Marginal::weibull(2.0), Marginal::weibull(2.0), 0.3);
  EXPECT_EQ(s.uniforms_per_draw(), 3u);
  RngStream a(77);
  RngStream b(77);
  for (int i = 0; i < 100; ++i) {
    s.sample(a);
    for (int k = 0; k < 3; ++k) b.uniform();
    ASSERT_EQ(a.next_u64(), b.next_u64());
    b = a;
  }
}

TEST(SamplePair, ExtremalReproduction) {
  const std::vector<std::pair<Marginal, Marginal>> pairs{
      {Marginal::exponential(), Marginal::exponential()},
      {Marginal::weibull(0.5), Marginal::weibull(0.5)},
      {Marginal::uniform01(), Marginal::exponential()},
      {Marginal::beta_pow(3.0), Marginal::gaussian()}};
  for (const auto& [f, g] : pairs) {
    const auto r = corr_range(f, g);
    const PairSampler top(f, g, r.rho_max);
    const PairSampler bottom(f, g, r.rho_min);
    RngStream rng(8);
    for (int i = 0; i < 20000; ++i) {
      const Pair p = top.sample(rng);
      const double y = g.quantile(f.cdf(p.x));
      ASSERT_NEAR(p.y, y, 1e-9 * std::max(1.0, std::abs(y))) << f.describe();
      const Pair q = bottom.sample(rng);
      const double z = g.quantile_complement(f.cdf(q.x));
      ASSERT_NEAR(q.y, z, 1e-9 * std::max(1.0, std::abs(z))) << f.describe();
    }
  }
}

TEST(SamplePair, Determinism) {
  const PairSampler s(Marginal::arcsine(), Marginal::arcsine(), -0.7);
  const auto a = generate_batch(s, 50000, 2024);
  const auto b = generate_batch(s, 50000, 2024);
  EXPECT_EQ(a.values, b.values);
}

TEST(SamplePair, CorrelationAndMarginsAcrossGrid) {
  const std::vector<Marginal> ms{Marginal::uniform01(), Marginal::arcsine(),
                                 Marginal::exponential(), Marginal::weibull(0.5),
                                 Marginal::beta_pow(0.3), Marginal::beta_int(4, 7),
                                 Marginal::gaussian()};
  std::uint64_t seed = 500;
  for (const auto& m : ms) {
    const auto r = corr_range(m, m);
    for (double t : {0.0, 0.5, 1.0}) {
      const double rho = (r.rho_min + 1e-3) * (1 - t) + r.rho_max * t * 0.999;
      const PairSampler s(m, m, rho);
      const auto c = draw(s, 200000, ++seed);
      EXPECT_NEAR(pearson_corr(c.x, c.y), rho, 0.02) << m.describe() << " rho=" << rho;
      EXPECT_TRUE(ks_test(c.x, m, 0.01).pass) << m.describe();
      EXPECT_TRUE(ks_test(c.y, m, 0.01).pass) << m.describe();
    }
  }
}

TEST(ErlangPair, SingleTermMatchesExponential) {
  const auto e = Marginal::exponential();
  const PairSampler exp_pair(e, e, 0.3);
  RngStream a(4);
  RngStream b(4);
  for (int i = 0; i < 1000; ++i) {
    const Pair p = sample_erlang_pair(1, 1.0, 0.3, a);
    const Pair q = exp_pair.sample(b);
    ASSERT_DOUBLE_EQ(p.x, q.x);
    ASSERT_DOUBLE_EQ(p.y, q.y);
  }
}

TEST(ErlangPair, FiveTermsNegative) {
  const auto m = Marginal::erlang(5, 2.0);
  const PairSampler s(m, m, -0.6);
  EXPECT_TRUE(s.sum_construction());
  EXPECT_EQ(s.uniforms_per_draw(), 15u);
  const auto c = draw(s, 1000000, 31);
  EXPECT_NEAR(pearson_corr(c.x, c.y), -0.6, 0.01);
  EXPECT_TRUE(ks_test(c.x, m, 0.01).pass);
  EXPECT_TRUE(ks_test(c.y, m, 0.01).pass);
}

TEST(ErlangPair, ZeroAndRangeErrors) {
  const auto m = Marginal::erlang(3, 1.0);
  const PairSampler s(m, m, 0.0);
  const auto c = draw(s, 500000, 32);
  EXPECT_NEAR(pearson_corr(c.x, c.y), 0.0, 0.006);
  EXPECT_TRUE(ks_test(c.y, m, 0.01).pass);
  RngStream rng(1);
  EXPECT_THROW(sample_erlang_pair(3, 1.0, -0.65, rng), RangeError);
  EXPECT_THROW(sample_erlang_pair(0, 1.0, 0.1, rng), ParameterError);
}

TEST(Frechet, Examples) {
  const auto u = Marginal::uniform01();
  auto b = frechet_bounds(u, u, 0.5, 0.5);
  EXPECT_DOUBLE_EQ(b.lower, 0.0);
  EXPECT_DOUBLE_EQ(b.upper, 0.5);
  b = frechet_bounds(u, u, 0.3, 0.9);
  EXPECT_NEAR(b.lower, 0.2, 1e-15);
  EXPECT_DOUBLE_EQ(b.upper, 0.3);
  const auto e = Marginal::exponential();
  b = frechet_bounds(u, e, 2.0, std::numeric_limits<double>::infinity());
  EXPECT_DOUBLE_EQ(b.lower, 1.0);
  EXPECT_DOUBLE_EQ(b.upper, 1.0);
}

TEST(JointCdf, Examples) {
  const auto u = Marginal::uniform01();
  const auto e = Marginal::exponential();
  const PairSampler indep(u, e, 0.0);
  for (double x : {0.1, 0.6}) {
    for (double y : {0.2, 2.0}) EXPECT_EQ(joint_cdf(indep, x, y), u.cdf(x) * e.cdf(y));
  }
  const PairSampler top(e, e, 1.0);
  for (double x : {0.1, 1.2}) {
    for (double y : {0.3, 2.0}) {
      EXPECT_DOUBLE_EQ(joint_cdf(top, x, y), std::min(e.cdf(x), e.cdf(y)));
    }
  }
  const PairSampler half(u, u, 0.5);
  EXPECT_NEAR(joint_cdf(half, 0.5, 0.5), 0.375, 1e-15);
  const auto c = draw(half, 1000000, 41);
  EXPECT_NEAR(empirical_joint_cdf(c.x, c.y, 0.5, 0.5), 0.375, 0.005);

  const auto m = Marginal::erlang(2, 1.0);
  EXPECT_THROW(joint_cdf(PairSampler(m, m, 0.2), 1.0, 1.0), ParameterError);
}

TEST(JointCdf, MixtureAgreementOnQuantileGrid) {
  std::uint64_t seed = 900;
  for (const auto& m : {Marginal::uniform01(), Marginal::exponential()}) {
    const double top = corr_range(m, m).rho_max;
    for (double rho : {-0.5, 0.3, 0.9 * top}) {
      const PairSampler s(m, m, rho);
      const auto c = draw(s, 1000000, ++seed);
      for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        for (double q : {0.1, 0.3, 0.5, 0.7, 0.9}) {
          const double x = m.quantile(p);
          const double y = m.quantile(q);
          EXPECT_NEAR(empirical_joint_cdf(c.x, c.y, x, y), joint_cdf(s, x, y), 0.005)
              << m.describe() << " rho=" << rho << " p=" << p << " q=" << q;
        }
      }
    }
  }
}
