#include "cregf/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cregf/error.hpp"
#include "cregf/format.hpp"

namespace cregf {
namespace {

void check_order(std::size_t n, int s) {
  if (s < 1 || static_cast<std::size_t>(s) > n) {
    fail(ErrorKind::OrderOutOfRange,
         "order s = " + std::to_string(s) + " needs 1 <= s <= n = " + std::to_string(n));
  }
}

double binomial(std::size_t n, std::size_t k) {
  double c = 1.0;
  for (std::size_t j = 1; j <= k; ++j) c = c * static_cast<double>(n - k + j) / static_cast<double>(j);
  return c;
}

}  // namespace

Sample Sample::sort_validate(std::span<const double> raw) {
  return sort_validate(std::vector<double>(raw.begin(), raw.end()));
}

Sample Sample::sort_validate(std::vector<double>&& raw) {
  if (raw.empty()) fail(ErrorKind::EmptyInput, "sample has no observations");
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!(raw[i] >= 0.0) || !std::isfinite(raw[i])) {
      fail(ErrorKind::NegativeValue,
           "observation at index " + std::to_string(i) + " is " + shortest(raw[i]) + ", expected a finite value >= 0");
    }
  }
  std::sort(raw.begin(), raw.end());
  return Sample(std::move(raw));
}

// Sums run over offsets from the minimum, so constant samples come out exact.
double Sample::mean() const noexcept {
  const double lo = values_.front();
  double acc = 0.0;
  for (double v : values_) acc += v - lo;
  return lo + acc / static_cast<double>(values_.size());
}

std::vector<double> ustat_weights(std::size_t n, int s) {
  check_order(n, s);
  // C(n-i, s-1) / C(n, s) = (s/n) prod_{k=1}^{s-1} (n-i-k+1) / (n-k):
  // O(s) roundings per weight, independent of n.
  std::vector<double> w(n, 0.0);
  const double lead = static_cast<double>(s) / static_cast<double>(n);
  const std::size_t last = n - static_cast<std::size_t>(s) + 1;
  for (std::size_t i = 1; i <= last; ++i) {
    double v = lead;
    for (int k = 1; k < s; ++k) {
      v *= static_cast<double>(n - i - static_cast<std::size_t>(k) + 1) / static_cast<double>(n - static_cast<std::size_t>(k));
    }
    w[i - 1] = v;
  }
  return w;
}

CregfEstimate cregf_estimate(const Sample& sample, int s, bool want_se) {
  const auto w = ustat_weights(sample.size(), s);
  const auto x = sample.values();
  CregfEstimate est;
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * (x[i] - x[0]);
  est.value = x[0] + acc;
  est.s = s;
  est.n = sample.size();
  if (want_se && sample.size() > static_cast<std::size_t>(s)) {
    const auto se = cregf_stderr(sample, s);
    est.std_error = se.value;
    est.degenerate = se.degenerate;
  }
  return est;
}

double cregf_bruteforce(const Sample& sample, int s) {
  const std::size_t n = sample.size();
  check_order(n, s);
  const auto k = static_cast<std::size_t>(s);
  if (binomial(n, k) > 1e7) {
    fail(ErrorKind::TooManySubsets, "C(" + std::to_string(n) + ", " + std::to_string(s) + ") exceeds 10^7");
  }
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  double sum = 0.0;
  std::size_t count = 0;
  while (true) {
    double m = sample[idx[0]];
    for (std::size_t j = 1; j < k; ++j) m = std::min(m, sample[idx[j]]);
    sum += m;
    ++count;
    // Next combination in lexicographic order.
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return sum / static_cast<double>(count);
}

std::vector<double> empirical_survival(const Sample& sample) {
  const std::size_t n = sample.size();
  std::vector<double> surv(n);
  std::size_t i = n;
  while (i > 0) {
    // [lo, i) is one tie group; everything from i on is strictly greater.
    std::size_t lo = i - 1;
    while (lo > 0 && sample[lo - 1] == sample[i - 1]) --lo;
    const double above = static_cast<double>(n - i) / static_cast<double>(n);
    std::fill(surv.begin() + static_cast<std::ptrdiff_t>(lo), surv.begin() + static_cast<std::ptrdiff_t>(i), above);
    i = lo;
  }
  return surv;
}

std::vector<double> partial_moment(const Sample& sample, std::span<const double> surv, int k) {
  const std::size_t n = sample.size();
  std::vector<double> out(n);
  double running = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t hi = i;
    while (hi < n && sample[hi] == sample[i]) {
      running += sample[hi] * std::pow(surv[hi], k);
      ++hi;
    }
    std::fill(out.begin() + static_cast<std::ptrdiff_t>(i), out.begin() + static_cast<std::ptrdiff_t>(hi),
              running / static_cast<double>(n));
    i = hi;
  }
  return out;
}

double sample_sd(std::span<const double> values) {
  const auto n = static_cast<double>(values.size());
  const double m = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / (n - 1.0));
}

StdError cregf_stderr(const Sample& sample, int s) {
  const std::size_t n = sample.size();
  check_order(n, s);
  if (static_cast<std::size_t>(s) >= n) {
    fail(ErrorKind::OrderOutOfRange, "standard error needs s < n");
  }
  if (sample.all_equal()) return {0.0, true};

  const auto surv = empirical_survival(sample);
  std::vector<double> psi(n);
  for (std::size_t i = 0; i < n; ++i) psi[i] = sample[i] * std::pow(surv[i], s - 1);
  if (s >= 2) {
    const auto inner = partial_moment(sample, surv, s - 2);
    for (std::size_t i = 0; i < n; ++i) psi[i] += (s - 1) * inner[i];
  }
  const double sd = sample_sd(psi);
  return {s * sd / std::sqrt(static_cast<double>(n)), sd == 0.0};
}

CregfEstimate dcregf_estimate(const Sample& sample, int s, double t, bool want_se) {
  if (!(t >= 0.0) || !std::isfinite(t)) fail(ErrorKind::InvalidParameter, "age t must be finite and >= 0");
  if (t == 0.0) return cregf_estimate(sample, s, want_se);

  const auto x = sample.values();
  const auto first = std::upper_bound(x.begin(), x.end(), t);
  std::vector<double> residual;
  residual.reserve(static_cast<std::size_t>(x.end() - first));
  for (auto it = first; it != x.end(); ++it) residual.push_back(*it - t);
  if (s < 1) check_order(residual.size(), s);
  if (residual.size() < static_cast<std::size_t>(s)) {
    fail(ErrorKind::InsufficientSurvivors, std::to_string(residual.size()) + " observation(s) exceed t = " +
                                               std::to_string(t) + ", need s = " + std::to_string(s));
  }
  auto est = cregf_estimate(Sample::sort_validate(std::move(residual)), s, want_se);
  est.residual = true;
  est.t = t;
  return est;
}

}  // namespace cregf
