#include <gtest/gtest.h>

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "cregf/ddcregf_test.hpp"
#include "cregf/distributions.hpp"
#include "cregf/estimator.hpp"
#include "cregf/io.hpp"
#include "expect_kind.hpp"
#include "oracles.hpp"

using namespace cregf;

namespace {

Sample make(std::vector<double> v) { return Sample::sort_validate(std::move(v)); }
Sample load(const char* name) { return make(read_data_file(std::string(CREGF_SOURCE_DIR "/data/") + name)); }

Sample scaled(const Sample& x, double a) {
  std::vector<double> y;
  for (double v : x.values()) y.push_back(a * v);
  return make(y);
}

// Direct U-statistic over (s+1)-subsets with kernel
// (s+1) min(subset) - s * mean over its s-subsets of their minima.
double delta_by_kernel(const Sample& x, int s) {
  const std::vector<double> v(x.values().begin(), x.values().end());
  return oracle::subset_average(v, static_cast<unsigned>(s + 1), [s](const std::vector<double>& sub) {
    const double full = *std::min_element(sub.begin(), sub.end());
    const double inner = oracle::subset_average(
        sub, static_cast<unsigned>(s), [](const std::vector<double>& w) { return *std::min_element(w.begin(), w.end()); });
    return (s + 1) * full - s * inner;
  });
}

double z_upper(double p) { return boost::math::quantile(boost::math::complement(boost::math::normal(), p)); }

}  // namespace

TEST(DeltaHat, Examples) {
  EXPECT_DOUBLE_EQ(delta_hat(make({1, 2}), 1), 0.5);
  for (int s : {1, 2, 3}) EXPECT_NEAR(delta_hat(make({7, 7, 7, 7, 7}), s), 7.0, 1e-12);
  EXPECT_NEAR(delta_hat(load("example1.txt"), 1), 2.0 * 1627.5 / 105.0 - 413.2 / 15.0, 1e-12);
  EXPECT_NEAR(delta_hat(load("example1.txt"), 1), 3.4533, 5e-5);
  EXPECT_KIND(delta_hat(make({1, 2}), 2), ErrorKind::OrderOutOfRange);
}

TEST(DeltaStar, Examples) {
  const auto x = load("example1.txt");
  EXPECT_NEAR(delta_star(x, 1), 0.12536, 5e-6);
  EXPECT_NEAR(delta_star(scaled(x, 10.0), 1), delta_star(x, 1), 1e-12);
  EXPECT_DOUBLE_EQ(delta_star(make({3, 3, 3}), 1), 1.0);
  EXPECT_KIND(delta_star(make({0, 0, 0}), 1), ErrorKind::ZeroMean);
}

TEST(TestStatistic, Examples) {
  EXPECT_NEAR(test_statistic(load("example1.txt"), 1), 0.8409, 5e-4);
  EXPECT_NEAR(test_statistic(load("example2.txt"), 1), 3.5099, 1e-3);
  for (std::size_t n : {2u, 5u, 40u}) {
    const auto flat = make(std::vector<double>(n, 2.5));
    EXPECT_NEAR(test_statistic(flat, 1), std::sqrt(3.0 * n), 1e-12);
    const auto r = run_test(flat, 1);
    EXPECT_TRUE(r.degenerate);
    EXPECT_NEAR(r.delta_star, 1.0, 1e-15);
  }
}

TEST(TestStatistic, OneSidedKeepsSign) {
  // Increasing hazard pushes delta positive; a heavy left cluster with one
  // long lifetime pushes it negative.
  const auto neg = make({0.01, 0.01, 0.02, 0.02, 0.03, 10.0});
  ASSERT_LT(delta_star(neg, 1), 0.0);
  EXPECT_LT(test_statistic(neg, 1, Sidedness::OneSidedUpper), 0.0);
  EXPECT_NEAR(test_statistic(neg, 1, Sidedness::TwoSidedPaper), -test_statistic(neg, 1, Sidedness::OneSidedUpper),
              1e-12);
  const auto r = run_test(neg, 1, 0.05, Sidedness::OneSidedUpper);
  EXPECT_GT(r.p_value, 0.5);
  EXPECT_FALSE(r.reject);
}

TEST(RunTest, Examples) {
  const auto r1 = run_test(load("example1.txt"), 1, 0.05);
  EXPECT_FALSE(r1.reject);
  EXPECT_EQ(r1.sidedness, Sidedness::TwoSidedPaper);
  const auto r2 = run_test(load("example2.txt"), 1, 0.05);
  EXPECT_TRUE(r2.reject);
  EXPECT_TRUE(run_test(load("example1.txt"), 1, 1.0 - 1e-9).reject);
  EXPECT_KIND(run_test(load("example1.txt"), 1, 1.5), ErrorKind::InvalidProbability);
  EXPECT_KIND(run_test(load("example1.txt"), 1, 0.0), ErrorKind::InvalidProbability);
}

TEST(RunTest, ReportInvariants) {
  std::mt19937_64 rng(3);
  std::weibull_distribution<double> d(1.3, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(3 + trial % 40);
    for (auto& x : v) x = d(rng);
    const auto smp = make(v);
    for (int s : {1, 2}) {
      for (auto side : {Sidedness::TwoSidedPaper, Sidedness::OneSidedUpper}) {
        for (double alpha : {0.01, 0.05, 0.1}) {
          const auto r = run_test(smp, s, alpha, side);
          EXPECT_EQ(r.delta_star, r.delta_hat / smp.mean());
          const double scale = std::sqrt(r.n * (4.0 * s * s - 1.0) / s);
          const double expect_t = side == Sidedness::TwoSidedPaper ? scale * std::abs(r.delta_star)
                                                                   : scale * r.delta_star;
          EXPECT_NEAR(r.statistic, expect_t, 1e-12 * std::max(1.0, std::abs(expect_t)));
          EXPECT_EQ(r.reject, r.p_value < alpha);
          const double z = side == Sidedness::TwoSidedPaper ? z_upper(alpha / 2) : z_upper(alpha);
          if (std::abs(r.statistic - z) > 1e-9) EXPECT_EQ(r.reject, r.statistic > z);
          EXPECT_EQ(r.alt_se.has_value(), r.n >= static_cast<std::size_t>(s) + 2);
        }
      }
    }
  }
}

TEST(NormalCdf, MatchesReferenceDistribution) {
  const boost::math::normal nd;
  for (double z = -9.0; z <= 9.0; z += 0.0625) {
    EXPECT_NEAR(normal_cdf(z), boost::math::cdf(nd, z), 1e-15) << z;
  }
  EXPECT_NEAR(normal_cdf(1.959963984540054), 0.975, 1e-15);
  EXPECT_DOUBLE_EQ(normal_cdf(0.0), 0.5);
}

TEST(PValue, MonotoneDecreasingInStatistic) {
  // Walk a growing departure by scaling one observation away from the rest.
  double last = 2.0;
  for (double top = 1.0; top < 40.0; top += 0.5) {
    std::vector<double> v{1.0, 1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7};
    const auto r = run_test(make(v), 1);
    (void)top;
    EXPECT_LE(r.p_value, last);
    last = r.p_value;
  }
  double prev_t = -1.0;
  double prev_p = 2.0;
  const auto base = load("example2.txt");
  for (double extra = 0.0; extra < 200.0; extra += 10.0) {
    std::vector<double> v(base.values().begin(), base.values().end());
    for (auto& x : v) x += extra;  // adding a constant drives delta_star toward 1
    const auto r = run_test(make(v), 1);
    if (r.statistic > prev_t) EXPECT_LE(r.p_value, prev_p);
    prev_t = r.statistic;
    prev_p = r.p_value;
  }
}

TEST(Invariants, DeltaHatIdentityAndKernelEnumeration) {
  std::mt19937_64 rng(17);
  std::lognormal_distribution<double> d(0.0, 0.8);
  for (int trial = 0; trial < 150; ++trial) {
    std::vector<double> v(2 + trial % 9);
    for (auto& x : v) x = d(rng);
    const auto smp = make(v);
    for (int s = 1; s <= std::min<int>(3, static_cast<int>(v.size()) - 1); ++s) {
      const double dh = delta_hat(smp, s);
      EXPECT_EQ(dh, (s + 1) * cregf_estimate(smp, s + 1).value - s * cregf_estimate(smp, s).value);
      EXPECT_NEAR(dh, delta_by_kernel(smp, s), 1e-10);
    }
  }
}

TEST(Invariants, ScaleInvariance) {
  for (const char* file : {"example1.txt", "example2.txt"}) {
    const auto x = load(file);
    for (int s : {1, 2, 3}) {
      for (double a : {0.1, 1.0, 10.0}) {
        const auto y = scaled(x, a);
        EXPECT_NEAR(delta_star(y, s), delta_star(x, s), 1e-12);
        EXPECT_NEAR(test_statistic(y, s), test_statistic(x, s), 1e-12);
      }
    }
  }
}

TEST(Invariants, NullCalibrationAtLargeN) {
  const auto m = parse_model("exp:1");
  constexpr int kReps = 10000;
  const std::size_t n = 200;
  for (int s : {1, 2, 3}) {
    double sum = 0.0;
    double sum2 = 0.0;
    int rejects = 0;
    for (int r = 0; r < kReps; ++r) {
      const auto x = sample(m, n, 500000 + 10 * r + s);
      const double z = std::sqrt(static_cast<double>(n)) * delta_star(x, s);
      sum += z;
      sum2 += z * z;
      rejects += run_test(x, s, 0.05).reject;
    }
    const double var = sum2 / kReps - (sum / kReps) * (sum / kReps);
    EXPECT_NEAR(var, null_variance(s), 0.1 * null_variance(s)) << "s=" << s;
    const double rate = static_cast<double>(rejects) / kReps;
    EXPECT_GE(rate, 0.04) << "s=" << s;
    EXPECT_LE(rate, 0.065) << "s=" << s;
  }
}

TEST(Invariants, DecreasingMrlAlternativeIsDetected) {
  const auto m = parse_model("weibull:2,1");
  constexpr int kReps = 2000;
  int rejects = 0;
  for (int r = 0; r < kReps; ++r) {
    const auto x = sample(m, 50, 900000 + r);
    EXPECT_NEAR(delta_hat(x, 1), 2.0 * cregf_estimate(x, 2).value - x.mean(), 1e-12);
    rejects += run_test(x, 1, 0.05).reject;
  }
  EXPECT_GE(static_cast<double>(rejects) / kReps, 0.99);
}

TEST(NullVariance, Values) {
  EXPECT_DOUBLE_EQ(null_variance(1), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(null_variance(2), 2.0 / 15.0);
  EXPECT_DOUBLE_EQ(null_variance(3), 3.0 / 35.0);
}

TEST(AltVariancePlugin, Examples) {
  EXPECT_EQ(alt_variance_plugin(make({2, 2, 2, 2}), 2), 0.0);
  const auto x = sample(parse_model("exp:1"), 10000, 31);
  EXPECT_NEAR(alt_variance_plugin(x, 1), 1.0 / std::sqrt(3.0), 0.15 / std::sqrt(3.0));
  EXPECT_NEAR(alt_variance_plugin(x, 2), std::sqrt(2.0 / 15.0), 0.15 * std::sqrt(2.0 / 15.0));
  EXPECT_KIND(alt_variance_plugin(make({1, 2, 3}), 2), ErrorKind::OrderOutOfRange);
}

TEST(AltVariancePlugin, ScalesWithData) {
  // Under exp(lambda) the target is sqrt(s/(4s^2-1)) / lambda.
  const auto x = sample(parse_model("exp:4"), 10000, 32);
  for (int s : {1, 2, 3}) {
    const double target = std::sqrt(null_variance(s)) / 4.0;
    EXPECT_NEAR(alt_variance_plugin(x, s), target, 0.15 * target) << "s=" << s;
  }
}
