#include <gtest/gtest.h>

#include <cmath>

#include "mincorr/batch.hpp"
#include "mincorr/betagen.hpp"
#include "mincorr/errors.hpp"
#include "mincorr/stats.hpp"

using namespace mincorr;

namespace {

std::vector<std::vector<double>> columns(const SampleBatch& b) {
  std::vector<std::vector<double>> out;
  for (std::size_t j = 0; j < b.dim; ++j) out.push_back(b.column(j));
  return out;
}

}  // namespace

TEST(PhiBeta, EqualComponentsGiveMean) {
  const BetaVecTransform t(4, 7);
  for (double u : {1e-9, 0.2, 0.5, 0.9999}) {
    const std::vector<double> v(11, u);
    EXPECT_EQ(phi_beta(t, v), 4.0 / 11.0);
  }
}

TEST(PhiBeta, Errors) {
  const BetaVecTransform t(2, 3);
  EXPECT_THROW(phi_beta(t, std::vector<double>(4, 0.5)), ParameterError);
  EXPECT_THROW(phi_beta(t, std::vector<double>{0.5, 0.5, 0.0, 0.5, 0.5}), ParameterError);
  EXPECT_THROW(phi_beta(t, std::vector<double>{0.5, 1.0, 0.5, 0.5, 0.5}), ParameterError);
  EXPECT_THROW(BetaVecTransform(0, 2), ParameterError);
}

TEST(PhiBeta, GammaRatioOracle) {
  // G1 = -sum log u_i over the first nu1 components, G2 over the rest
  const BetaVecTransform t(2, 3);
  const std::vector<double> u{0.1, 0.7, 0.3, 0.8, 0.05};
  const double g1 = -std::log(0.1) - std::log(0.7);
  const double g2 = -std::log(0.3) - std::log(0.8) - std::log(0.05);
  EXPECT_NEAR(phi_beta(t, u), g1 / (g1 + g2), 1e-15);
}

TEST(PhiBeta, MarginIsBeta) {
  const BetaVecTransform t(4, 7);
  RngStream rng(5);
  std::vector<double> xs(100000);
  std::vector<double> u(t.dim_u());
  for (auto& x : xs) {
    for (auto& v : u) v = rng.uniform();
    x = phi_beta(t, u);
  }
  EXPECT_TRUE(ks_test(xs, Marginal::beta_int(4, 7), 0.01).pass);
}

TEST(CBeta, FourSeven) {
  RngStream rng(71);
  const auto c = c_beta_antithetic(BetaVecTransform(4, 7), 1000000, rng);
  EXPECT_NEAR(c.estimate, -0.71, 0.02);
  EXPECT_LT(c.std_error, 0.002);
  EXPECT_EQ(c.draws, 1000000u);
}

TEST(CBeta, NegativeAndBounded) {
  for (auto [a, b] : {std::pair{1, 1}, std::pair{1, 5}, std::pair{3, 2}, std::pair{6, 6}}) {
    RngStream rng(100 + a * 10 + b);
    const auto c = c_beta_antithetic(BetaVecTransform(a, b), 20000, rng);
    EXPECT_LT(c.estimate, 0.0);
    EXPECT_GT(c.estimate, -1.0);
  }
  RngStream rng(1);
  EXPECT_THROW(c_beta_antithetic(BetaVecTransform(1, 1), 9999, rng), ParameterError);
}

TEST(CBeta, OneOneReproducibleAcrossSeeds) {
  RngStream a(1001);
  RngStream b(2002);
  const auto x = c_beta_antithetic(BetaVecTransform(1, 1), 1000000, a);
  const auto y = c_beta_antithetic(BetaVecTransform(1, 1), 1000000, b);
  const double se = std::hypot(x.std_error, y.std_error);
  EXPECT_LT(std::abs(x.estimate - y.estimate), 3 * se);
  EXPECT_LT(x.estimate, 0.0);
}

TEST(CBeta, CacheIsDeterministic) {
  const auto a = cached_c_beta_antithetic(2, 3);
  const auto b = cached_c_beta_antithetic(2, 3);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(a.draws, 1000000u);
}

TEST(BetaSampler, StopErrors) {
  const McEstimate c{-0.71, 0.001, 1000000};
  EXPECT_THROW(BetaTrivariateSampler(4, 7, CorrMatrix::from_pairs(0.9, 0.9, -0.9), c),
               FeasibilityError);
  try {
    BetaTrivariateSampler(4, 7, CorrMatrix::from_pairs(0.9, 0.9, -0.9), c);
  } catch (const FeasibilityError& e) {
    EXPECT_NE(std::string(e.what()).find("matrix not positive semi-definite"), std::string::npos);
  }
  for (const auto& m : {CorrMatrix::from_pairs(-0.9, 0.5, -0.4),
                        CorrMatrix::from_pairs(-0.4, 0.3, 0.2),
                        CorrMatrix::from_pairs(0.0, 0.3, 0.4)}) {
    try {
      BetaTrivariateSampler(4, 7, m, c);
      ADD_FAILURE() << "expected a stop";
    } catch (const FeasibilityError& e) {
      EXPECT_NE(std::string(e.what()).find("algorithm not applicable"), std::string::npos);
    }
  }
  EXPECT_THROW(BetaTrivariateSampler(4, 7, CorrMatrix::compound_symmetry(4, 0.2), c),
               ParameterError);
}

TEST(BetaSampler, WarningPathStillSamples) {
  const BetaTrivariateSampler s(4, 7, CorrMatrix::from_pairs(-0.6, -0.6, 0.5));
  ASSERT_TRUE(s.warning().has_value());
  EXPECT_LE(s.factors().factors[0], s.c_estimate().estimate);
  EXPECT_EQ(s.accept_probs()[0], 1.0);
  const auto b = generate_batch(s, 1000, 3);
  for (double v : b.values) {
    EXPECT_GT(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
  const BetaTrivariateSampler quiet(4, 7, CorrMatrix::from_pairs(0.4, 0.3, 0.2));
  EXPECT_FALSE(quiet.warning().has_value());
}

TEST(BetaSampler, PositiveExperiment) {
  const BetaTrivariateSampler s(4, 7, CorrMatrix::from_pairs(0.4, 0.3, 0.2));
  const auto c = columns(generate_batch(s, 10000, 404));
  EXPECT_NEAR(pearson_corr(c[0], c[1]), 0.4, 0.03);
  EXPECT_NEAR(pearson_corr(c[0], c[2]), 0.3, 0.03);
  EXPECT_NEAR(pearson_corr(c[1], c[2]), 0.2, 0.03);
  for (const auto& col : c) EXPECT_TRUE(ks_test(col, Marginal::beta_int(4, 7), 0.01).pass);
}

TEST(BetaSampler, NegativeExperiment) {
  const BetaTrivariateSampler s(4, 7, CorrMatrix::from_pairs(-0.4, -0.3, 0.3));
  EXPECT_EQ(s.factors().n_negative, 1u);
  const auto c = columns(generate_batch(s, 10000, 405));
  EXPECT_NEAR(pearson_corr(c[0], c[1]), -0.4, 0.03);
  EXPECT_NEAR(pearson_corr(c[0], c[2]), -0.3, 0.03);
  EXPECT_NEAR(pearson_corr(c[1], c[2]), 0.3, 0.03);
  for (const auto& col : c) EXPECT_TRUE(ks_test(col, Marginal::beta_int(4, 7), 0.01).pass);
}

TEST(BetaSampler, SharedBranchIsBitExact) {
  const BetaTrivariateSampler s(2, 3, CorrMatrix::from_pairs(-0.4, -0.3, 0.3));
  const BetaVecTransform t(2, 3);
  RngStream rng(9);
  for (int draw = 0; draw < 2000; ++draw) {
    RngStream replay = rng;
    std::array<double, 3> out{};
    s.sample(rng, out);
    std::vector<double> u(5);
    std::vector<double> anti(5);
    for (std::size_t i = 0; i < 5; ++i) {
      u[i] = replay.uniform();
      anti[i] = 1.0 - u[i];
    }
    for (std::size_t i = 0; i < 3; ++i) {
      std::vector<double> v(5);
      for (auto& x : v) x = replay.uniform();
      const double w = replay.uniform();
      double expect;
      if (w < s.accept_probs()[i]) {
        expect = phi_beta(t, s.factors().factors[i] > 0 ? u : anti);
      } else {
        expect = phi_beta(t, v);
      }
      ASSERT_EQ(out[i], expect);
    }
    ASSERT_EQ(replay.next_u64(), RngStream(rng).next_u64());
  }
}

TEST(BetaSampler, DeterministicAndInRange) {
  const BetaTrivariateSampler s(4, 7, CorrMatrix::from_pairs(0.4, 0.3, 0.2));
  const auto a = generate_batch(s, 20000, 77, 3);
  const auto b = generate_batch(s, 20000, 77, 1);
  EXPECT_EQ(a.values, b.values);
  for (double v : a.values) {
    ASSERT_GT(v, 0.0);
    ASSERT_LT(v, 1.0);
  }
}

TEST(BetaSampler, VarianceMatchesBetaMoments) {
  const BetaTrivariateSampler s(4, 7, CorrMatrix::from_pairs(-0.4, -0.3, 0.3));
  const auto c = columns(generate_batch(s, 1000000, 88, 4));
  const double target = 4.0 * 7.0 / (121.0 * 12.0);
  for (const auto& col : c) {
    double m = 0.0;
    for (double x : col) m += x;
    m /= col.size();
    double m2 = 0.0;
    double m4 = 0.0;
    for (double x : col) {
      const double d = (x - m) * (x - m);
      m2 += d;
      m4 += d * d;
    }
    m2 /= col.size();
    m4 /= col.size();
    const double se = std::sqrt((m4 - m2 * m2) / col.size());
    EXPECT_NEAR(m2, target, 3 * se);
  }
}
