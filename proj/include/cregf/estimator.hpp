#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cregf/sample.hpp"

namespace cregf {

struct CregfEstimate {
  double value = 0.0;
  int s = 1;
  std::size_t n = 0;
  std::optional<double> std_error;
  /// Standard error requested on a sample with no spread.
  bool degenerate = false;
  /// Estimate of C_s(X; t) from the residual sample {X_i - t : X_i > t}.
  /// Its standard error reuses the complete-sample formula with n = number
  /// of survivors; there is no residual-sample asymptotic theory behind it.
  bool residual = false;
  double t = 0.0;
};

/// Weights w_i = C(n-i, s-1) / C(n, s), i = 1..n, so that the U-statistic of
/// subset minima is sum_i w_i X_(i). Throws OrderOutOfRange unless 1 <= s <= n.
std::vector<double> ustat_weights(std::size_t n, int s);

/// Unbiased U-statistic estimate of C_s(X) = E min(X_1..X_s).
CregfEstimate cregf_estimate(const Sample& sample, int s, bool want_se = false);

/// Mean of the minimum over all C(n, s) subsets, by explicit enumeration.
/// Reference oracle; throws TooManySubsets beyond 10^7 subsets.
double cregf_bruteforce(const Sample& sample, int s);

struct StdError {
  double value = 0.0;
  bool degenerate = false;
};

/// Plug-in asymptotic standard error s * sd(psi) / sqrt(n), where
///   psi_i = X_i S_n(X_i)^(s-1) + (s-1)/n * sum_{X_j <= X_i} X_j S_n(X_j)^(s-2)
/// and S_n(x) = #{X_j > x} / n. Needs 1 <= s < n.
StdError cregf_stderr(const Sample& sample, int s);

/// C_s(X; t) estimated by cregf_estimate on the residual sample. t = 0 uses
/// the full sample. Throws InsufficientSurvivors when fewer than s
/// observations exceed t.
CregfEstimate dcregf_estimate(const Sample& sample, int s, double t, bool want_se = false);

/// S_n(X_(i)) = #{j : X_j > X_(i)} / n for each sorted position.
std::vector<double> empirical_survival(const Sample& sample);

/// (1/n) sum_{j : X_j <= X_(i)} X_j S_n(X_j)^k for each sorted position i.
std::vector<double> partial_moment(const Sample& sample, std::span<const double> surv, int k);

/// Sample standard deviation with the n - 1 divisor.
double sample_sd(std::span<const double> values);

}  // namespace cregf
