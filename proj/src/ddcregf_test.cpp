#include "cregf/ddcregf_test.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "cregf/error.hpp"
#include "cregf/format.hpp"
#include "cregf/estimator.hpp"

namespace cregf {
namespace {

void require_pairs(const Sample& sample, int s, std::size_t extra) {
  if (s < 1 || sample.size() < static_cast<std::size_t>(s) + extra) {
    fail(ErrorKind::OrderOutOfRange, "s = " + std::to_string(s) + " needs n >= s + " + std::to_string(extra) +
                                         ", n = " + std::to_string(sample.size()));
  }
}

}  // namespace

std::string_view to_string(Sidedness sidedness) {
  return sidedness == Sidedness::TwoSidedPaper ? "two_sided" : "one_sided_upper";
}

double delta_hat(const Sample& sample, int s) {
  require_pairs(sample, s, 1);
  return (s + 1) * cregf_estimate(sample, s + 1).value - s * cregf_estimate(sample, s).value;
}

double delta_star(const Sample& sample, int s) {
  const double d = delta_hat(sample, s);
  const double m = sample.mean();
  if (m == 0.0) fail(ErrorKind::ZeroMean, "sample mean is zero");
  return d / m;
}

double test_statistic(const Sample& sample, int s, Sidedness sidedness) {
  const double d = delta_star(sample, s);
  const double scale = std::sqrt(static_cast<double>(sample.size()) * (4.0 * s * s - 1.0) / s);
  return scale * (sidedness == Sidedness::TwoSidedPaper ? std::abs(d) : d);
}

double null_variance(int s) { return s / (4.0 * s * s - 1.0); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

TestReport run_test(const Sample& sample, int s, double alpha, Sidedness sidedness) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    fail(ErrorKind::InvalidProbability, "alpha must lie in (0, 1), got " + shortest(alpha));
  }
  TestReport r;
  r.s = s;
  r.n = sample.size();
  r.alpha = alpha;
  r.sidedness = sidedness;
  r.delta_hat = delta_hat(sample, s);
  const double m = sample.mean();
  if (m == 0.0) fail(ErrorKind::ZeroMean, "sample mean is zero");
  r.delta_star = r.delta_hat / m;
  const double scale = std::sqrt(static_cast<double>(r.n) * (4.0 * s * s - 1.0) / s);
  r.statistic = scale * (sidedness == Sidedness::TwoSidedPaper ? std::abs(r.delta_star) : r.delta_star);
  // 2(1 - Phi(T)) and 1 - Phi(T), written with erfc to keep the upper tail exact.
  r.p_value = sidedness == Sidedness::TwoSidedPaper ? std::erfc(r.statistic / std::numbers::sqrt2)
                                                     : 0.5 * std::erfc(r.statistic / std::numbers::sqrt2);
  r.reject = r.p_value < alpha;
  r.degenerate = sample.all_equal();
  if (r.n >= static_cast<std::size_t>(s) + 2) {
    r.alt_se = alt_variance_plugin(sample, s) / std::sqrt(static_cast<double>(r.n));
  }
  return r;
}

double alt_variance_plugin(const Sample& sample, int s) {
  require_pairs(sample, s, 2);
  if (sample.all_equal()) return 0.0;
  const std::size_t n = sample.size();
  const auto surv = empirical_survival(sample);
  const auto upper = partial_moment(sample, surv, s - 1);
  const double sp1 = s + 1.0;
  const double shrink = static_cast<double>(s) * s / sp1;
  std::vector<double> phi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = sample[i];
    phi[i] = sp1 * x * std::pow(surv[i], s) + s * sp1 * upper[i] - shrink * x * std::pow(surv[i], s - 1);
  }
  if (s >= 2) {
    const auto lower = partial_moment(sample, surv, s - 2);
    for (std::size_t i = 0; i < n; ++i) phi[i] -= (s - 1) * shrink * lower[i];
  }
  return sp1 * sample_sd(phi);
}

}  // namespace cregf
