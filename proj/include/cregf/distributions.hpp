#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cregf/random.hpp"
#include "cregf/sample.hpp"

namespace cregf {

/// Parametric lifetime families. Parameter order per family:
///
///   Exponential  [lambda]            S(x) = exp(-lambda x)
///   Uniform      [a]                 S(x) = 1 - x/a on [0, a]
///   GPD          [a, b]              S(x) = (1 + a x/b)^-(1 + 1/a),  a > -1, b > 0
///   ParetoI      [k, alpha]          S(x) = (k/x)^alpha,  x >= k
///   ParetoII     [a, b]              S(x) = (1 + x/a)^-b
///   Gamma        [shape, rate]
///   Weibull      [shape, scale]      S(x) = exp(-(x/scale)^shape)
///   Lognormal    [mu, sigma]         log-mean and log-sd
///   Makeham      [a, b]              h(t) = a + b(1 - e^-t)
///   LFR          [theta]             h(t) = 1 + theta t
///
/// GPD with a = 0 is the exponential limit S(x) = exp(-x/b).
enum class Family { Exponential, Uniform, GPD, ParetoI, ParetoII, Gamma, Weibull, Lognormal, Makeham, LFR };

std::string_view family_name(Family family);

/// Immutable once built; construct through make_model or parse_model.
class DistributionModel {
 public:
  Family family() const noexcept { return family_; }
  std::span<const double> params() const noexcept { return params_; }
  double param(std::size_t i) const noexcept { return params_[i]; }
  double support_lower() const noexcept { return lower_; }
  /// +infinity unless the support is bounded (uniform, GPD with a < 0).
  double support_upper() const noexcept { return upper_; }

 private:
  friend DistributionModel make_model(Family family, std::span<const double> params);

  Family family_ = Family::Exponential;
  std::vector<double> params_;
  double lower_ = 0.0;
  double upper_ = 0.0;
};

/// Throws InvalidParameter on wrong parameter count or out-of-range values.
DistributionModel make_model(Family family, std::span<const double> params);
DistributionModel make_model(Family family, std::initializer_list<double> params);

/// Parses `name:p1,p2,...`, e.g. `gamma:2,1` or `exp:1.0`. Accepted names:
/// exp, uniform, gpd, pareto1, pareto2, gamma, weibull, lognormal, makeham, lfr.
DistributionModel parse_model(std::string_view spec);

/// Canonical spec string, round-trips through parse_model.
std::string to_string(const DistributionModel& model);

enum class AnalyticMethod { ClosedForm, NumericIntegration, CentralDifference };

std::string_view to_string(AnalyticMethod method);

struct AnalyticValue {
  double value = 0.0;
  AnalyticMethod method = AnalyticMethod::ClosedForm;
  double abs_err_bound = 0.0;
};

double survival(const DistributionModel& model, double x);
/// log S(x); -infinity past the upper end of the support.
double log_survival(const DistributionModel& model, double x);
double cdf(const DistributionModel& model, double x);

/// f(x)/S(x). Throws OutsideSupport when x is below the support or S(x) = 0.
double hazard(const DistributionModel& model, double x);

/// Throws NonFiniteMean where the mean diverges (Pareto tails with shape <= 1).
double mean(const DistributionModel& model);

/// Inverse CDF for 0 < u < 1; throws InvalidProbability otherwise. Closed form
/// where one exists, Boost incomplete-gamma inverses for gamma, Newton on the
/// cumulative hazard for Makeham.
double quantile(const DistributionModel& model, double u);

/// n inverse-transform draws from `rng`, in generation order.
std::vector<double> draw(const DistributionModel& model, std::size_t n, Rng& rng);

/// n i.i.d. draws on a stream seeded by `seed`; same seed, same bits.
Sample sample(const DistributionModel& model, std::size_t n, std::uint64_t seed);

/// C_s(X) = integral of S(x)^s over the support, in closed form.
/// Families: exponential, uniform, GPD, Pareto I, Pareto II. For the Pareto I
/// family the integral starts at the support minimum k.
/// Throws NoClosedForm for other families, DivergentIntegral when s is too
/// small for the tail to be integrable, InvalidParameter for s <= 0.
AnalyticValue cregf_closed(const DistributionModel& model, double s);

/// Same quantity by adaptive quadrature; works for every family.
AnalyticValue cregf_numeric(const DistributionModel& model, double s);

/// C_s(X; t): the generating function of the residual life X - t | X > t.
/// Exponential: 1/(lambda s). GPD: (b + a t)/((a + 1) s - a).
AnalyticValue dcregf_closed(const DistributionModel& model, double s, double t);

/// Quadrature of (S(x)/S(t))^s over [t, inf). Throws DeadAtT when S(t) = 0.
AnalyticValue dcregf_numeric(const DistributionModel& model, double s, double t);

/// Cumulative residual entropy as -dC_s/ds at s = 1 (central difference,
/// step 1e-4).
AnalyticValue cre_from_generating(const DistributionModel& model);

}  // namespace cregf
