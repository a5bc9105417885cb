#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <gtest/gtest.h>

#include "pitman/distributions.hpp"
#include "pitman/experiments.hpp"

using namespace pitman;

namespace {

AtomicLaw p1() { return std::get<AtomicLaw>(standard_law("P1").law); }

double boost_phi(double x) { return boost::math::cdf(boost::math::normal(0.0, 1.0), x); }

// Naive inversion: smallest k with c·Σ_{j≤k} j^{-α} ≥ u, scanning up to `limit`.
// Returns 0 when the scan runs past the limit.
std::size_t naive_power_inverse(double alpha, double u, std::size_t limit) {
  const double c = 1.0 / boost::math::zeta(alpha);
  double acc = 0.0;
  for (std::size_t k = 1; k <= limit; ++k) {
    acc += c * std::pow(static_cast<double>(k), -alpha);
    if (acc >= u) return k;
  }
  return 0;
}

// Kolmogorov distance between an integer-valued sample and a law. Between
// observed values the empirical CDF is flat, so the deviation peaks at an
// observed value x or at the integer x-1 just before it.
double ks_integer(std::vector<double> xs, const AtomicLaw& law) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double worst = 0.0;
  double below = 0.0;  // empirical CDF before the current value
  for (std::size_t i = 0; i < xs.size();) {
    std::size_t j = i;
    while (j < xs.size() && xs[j] == xs[i]) ++j;
    const double at = static_cast<double>(j) / n;
    worst = std::max({worst, std::abs(at - law.cdf(xs[i])), std::abs(below - law.cdf(xs[i] - 1.0))});
    below = at;
    i = j;
  }
  return worst;
}

double ks_continuous(std::vector<double> xs, const GaussianLaw& g) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = g.cdf(xs[i]);
    worst = std::max({worst, std::abs(static_cast<double>(i + 1) / n - f), std::abs(static_cast<double>(i) / n - f)});
  }
  return worst;
}

}  // namespace

TEST(Functional, HalfOpenConventionsAtBoundaries) {
  EXPECT_EQ(Functional::indicator_above(2)(2.0), 1.0);
  EXPECT_EQ(Functional::indicator_above(2)(1.999), 0.0);
  EXPECT_EQ(Functional::two_sided(1)(1.0), -1.0);
  EXPECT_EQ(Functional::two_sided(1)(1.0001), 1.0);
  EXPECT_EQ(Functional::interval(2, 4)(2.0), 0.0);
  EXPECT_EQ(Functional::interval(2, 4)(4.0), 1.0);
  EXPECT_THROW(Functional::interval(3, 3), ConfigError);
  EXPECT_FALSE(Functional::identity().bounded());
  EXPECT_TRUE(Functional::two_sided(0).bounded());
}

TEST(FiniteLaw, QuantileOfFirstAtom) {
  EXPECT_EQ(p1().quantile(0.05), 1.0);
  EXPECT_EQ(p1().quantile(0.1), 1.0);
  EXPECT_EQ(p1().quantile(0.15), 2.0);
  EXPECT_EQ(p1().quantile(0.95), 6.0);
}

TEST(FiniteLaw, RejectsInvalidTables) {
  EXPECT_THROW(AtomicLaw::finite({}), ConfigError);
  EXPECT_THROW(AtomicLaw::finite({{1, 0.5}, {2, 0.4}}), ConfigError);
  EXPECT_THROW(AtomicLaw::finite({{1, 0.5}, {1, 0.5}}), ConfigError);
  EXPECT_THROW(AtomicLaw::finite({{1, 1.0}, {2, 0.0}}), ConfigError);
  EXPECT_THROW(AtomicLaw::power_law(1.0), ConfigError);
}

TEST(PowerLaw, SmallUniformGivesFirstAtom) {
  const auto law = AtomicLaw::power_law(2.0);
  EXPECT_EQ(law.quantile(1e-300), 1.0);
  EXPECT_EQ(law.quantile(0.5), 1.0);  // 6/π² ≈ 0.608
}

TEST(PowerLaw, NormalizerMatchesZeta) {
  for (double s : {1.5, 2.0, 3.0, 4.5}) {
    EXPECT_NEAR(detail::zeta(s), boost::math::zeta(s), 1e-12 * boost::math::zeta(s)) << s;
    EXPECT_NEAR(AtomicLaw::power_law(s).normalizer() * boost::math::zeta(s), 1.0, 1e-12) << s;
  }
  EXPECT_NEAR(AtomicLaw::power_law(2.0).normalizer(), 6.0 / (std::numbers::pi * std::numbers::pi), 1e-14);
}

TEST(PowerLaw, TailExpansionMatchesExactTail) {
  for (double s : {1.5, 2.0, 3.0}) {
    for (double k : {100.0, 1000.0, 1e6}) {
      double partial = 0.0;
      for (double j = k; j >= 1.0; j -= 1.0) partial += std::pow(j, -s);
      const double exact = boost::math::zeta(s) - partial;
      EXPECT_NEAR(detail::zeta_tail(s, k), exact, std::max(1e-9 * exact, 4e-15)) << s << " " << k;
    }
  }
}

TEST(PowerLaw, FrequencyOfFirstAtom) {
  const auto law = AtomicLaw::power_law(1.5);
  Rng rng(1);
  std::size_t ones = 0;
  const std::size_t draws = 1'000'000;
  for (std::size_t i = 0; i < draws; ++i) ones += law.sample(rng) == 1.0;
  const double oracle = 1.0 / boost::math::zeta(1.5);
  EXPECT_NEAR(oracle, 0.38279, 1e-5);
  EXPECT_NEAR(static_cast<double>(ones) / draws, oracle, 0.002);
}

TEST(PowerLaw, InversionMatchesNaiveScan) {
  for (double alpha : {1.5, 2.0, 3.0}) {
    const auto law = AtomicLaw::power_law(alpha);
    Rng rng(static_cast<std::uint64_t>(alpha * 100));
    std::size_t checked = 0;
    for (int i = 0; i < 10'000; ++i) {
      const double u = rng.uniform();
      const std::size_t naive = naive_power_inverse(alpha, u, 1'000'000);
      if (naive == 0) continue;
      EXPECT_EQ(law.quantile(u), static_cast<double>(naive)) << alpha << " u=" << u;
      ++checked;
    }
    EXPECT_GT(checked, 9'900u);
  }
}

TEST(PowerLaw, InversionBeyondPrefixTable) {
  const auto law = AtomicLaw::power_law(1.5);
  // u so close to 1 that the answer exceeds the cached prefix range
  for (double tail : {1e-4, 1e-5, 3e-6}) {
    const double k = law.quantile(1.0 - tail);
    EXPECT_GT(k, 1e6);
    // smallest k with survival P(X > k) ≤ tail
    EXPECT_LE(law.prob_greater(k), tail * (1 + 1e-10));
    EXPECT_GT(law.prob_greater(k - 1), tail * (1 - 1e-10));
  }
}

TEST(Integrals, GaussianExamples) {
  const GaussianLaw g(1.0, 1.0);
  EXPECT_NEAR(integral(g, Functional::two_sided(1.0)), 0.0, 1e-15);
  const double oracle = 1.0 - boost_phi(1.0);
  EXPECT_NEAR(integral(g, Functional::indicator_above(2.0)), oracle, 1e-15);
  EXPECT_NEAR(oracle, 0.158655, 1e-6);
  EXPECT_NEAR(integral(g, Functional::interval(0.0, 2.0)), boost_phi(1.0) - boost_phi(-1.0), 1e-15);
  EXPECT_DOUBLE_EQ(integral(g, Functional::identity()), 1.0);
  EXPECT_DOUBLE_EQ(integral_sq(g, Functional::identity()), 2.0);
  for (double p : {1e-10, 0.01, 0.3, 0.5, 0.9, 0.999}) {
    EXPECT_NEAR(normal_quantile(p), boost::math::quantile(boost::math::normal(0.0, 1.0), p), 1e-12);
  }
}

TEST(Integrals, FiniteTableExamples) {
  const auto law = p1();
  EXPECT_NEAR(integral(law, Functional::indicator_above(2.0)), 0.9, 1e-15);
  EXPECT_NEAR(integral(law, Functional::interval(2.0, 4.0)), 0.4, 1e-15);
  EXPECT_NEAR(integral(law, Functional::two_sided(2.0)), 0.8 - 0.2, 1e-15);
  double mean = 0.0, second = 0.0;
  for (std::size_t i = 0; i < law.values().size(); ++i) {
    mean += law.values()[i] * law.weights()[i];
    second += law.values()[i] * law.values()[i] * law.weights()[i];
  }
  EXPECT_NEAR(integral(law, Functional::identity()), mean, 1e-14);
  EXPECT_NEAR(integral_sq(law, Functional::identity()), second, 1e-13);
}

TEST(Integrals, PowerLawIndicatorsAndMoments) {
  const auto law = AtomicLaw::power_law(2.0);
  const double c = 6.0 / (std::numbers::pi * std::numbers::pi);
  EXPECT_NEAR(integral(law, Functional::indicator_above(2.0)), 1.0 - c, 1e-12);
  EXPECT_NEAR(integral(law, Functional::indicator_above(1.5)), 1.0 - c, 1e-12);
  EXPECT_NEAR(integral(law, Functional::two_sided(1.0)), 1.0 - 2.0 * c, 1e-12);
  EXPECT_NEAR(integral(law, Functional::interval(1.0, 3.0)), c * (0.25 + 1.0 / 9.0), 1e-12);
  EXPECT_THROW(integral(law, Functional::identity()), DivergentMomentError);
  EXPECT_THROW(integral_sq(AtomicLaw::power_law(3.0), Functional::identity()), DivergentMomentError);
  const auto light = AtomicLaw::power_law(3.5);
  EXPECT_NEAR(integral_sq(light, Functional::identity()), boost::math::zeta(1.5) / boost::math::zeta(3.5), 1e-10);
}

TEST(Integrals, IndicatorAboveIsNonincreasingProbability) {
  const std::vector<Law> laws{p1(), AtomicLaw::power_law(2.0), AtomicLaw::power_law(1.5), GaussianLaw(1.0, 1.0)};
  for (const auto& law : laws) {
    double prev = 1.0;
    for (double a = -3.0; a <= 12.0; a += 0.25) {
      const double v = integral(law, Functional::indicator_above(a));
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, prev + 1e-15);
      prev = v;
    }
  }
}

TEST(Alpha0, Examples) {
  // direct count over the table weights
  const auto law = p1();
  std::size_t oracle = 0;
  for (double w : law.weights()) oracle += (1.0 / w <= 5.0);
  EXPECT_EQ(oracle, 3u);
  EXPECT_EQ(p1().alpha0(5.0), 3u);
  const auto p2 = AtomicLaw::power_law(2.0);
  EXPECT_EQ(p2.alpha0(1.0), 0u);
  EXPECT_EQ(p2.alpha0(std::numbers::pi * std::numbers::pi / 6.0), 1u);
  EXPECT_THROW(p2.alpha0(0.5), DomainError);
}

TEST(Alpha0, NondecreasingAndRegularlyVarying) {
  for (double alpha : {1.5, 2.0, 3.0}) {
    const auto law = AtomicLaw::power_law(alpha);
    std::size_t prev = 0;
    for (double u = 1.0; u < 1e5; u *= 1.3) {
      EXPECT_GE(law.alpha0(u), prev);
      prev = law.alpha0(u);
    }
    for (double u : {2.0, 4.0}) {
      const double ratio = static_cast<double>(law.alpha0(u * 1e6)) / static_cast<double>(law.alpha0(1e6));
      EXPECT_NEAR(ratio, std::pow(u, 1.0 / alpha), 1e-2) << alpha << " " << u;
    }
  }
  // P2: α₀(n) = ⌊√(6n)/π⌋
  const auto p2 = AtomicLaw::power_law(2.0);
  for (double n : {10.0, 1e3, 1e5}) {
    EXPECT_EQ(p2.alpha0(n), static_cast<std::size_t>(std::floor(std::sqrt(6.0 * n) / std::numbers::pi)));
  }
}

TEST(Sampling, EmpiricalCdfMatchesLaw) {
  const std::size_t n = 100'000;
  Rng rng(7);
  for (const char* name : {"P1", "P2", "P3"}) {
    const auto law = std::get<AtomicLaw>(standard_law(name).law);
    std::vector<double> xs(n);
    for (auto& x : xs) x = law.sample(rng);
    EXPECT_LE(ks_integer(xs, law), 0.01) << name;
  }
  const GaussianLaw g(1.0, 1.0);
  std::vector<double> xs(n);
  for (auto& x : xs) x = g.sample(rng);
  EXPECT_LE(ks_continuous(xs, g), 0.01);
}

TEST(Decomposition, ValidatesParts) {
  EXPECT_THROW(P0Decomposition(0.5, p1(), std::nullopt), ConfigError);
  EXPECT_THROW(P0Decomposition(0.0, std::nullopt, GaussianLaw(0, 1)), ConfigError);
  EXPECT_THROW(P0Decomposition(1.5, p1(), GaussianLaw(0, 1)), ConfigError);
  const P0Decomposition mix(0.25, p1(), GaussianLaw(1, 1));
  const auto f = Functional::indicator_above(2.0);
  EXPECT_NEAR(integral(mix, f), 0.75 * 0.9 + 0.25 * (1.0 - boost_phi(1.0)), 1e-15);
  EXPECT_NEAR(cdf(Law(mix), 1.0), 0.75 * 0.1 + 0.25 * 0.5, 1e-15);
}
