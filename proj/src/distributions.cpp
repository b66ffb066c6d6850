#include "cregf/distributions.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cregf/error.hpp"
#include "cregf/format.hpp"
#include "cregf/quadrature.hpp"

namespace cregf {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct FamilyInfo {
  Family family;
  std::string_view name;
  std::size_t arity;
};

constexpr std::array<FamilyInfo, 10> kFamilies{{
    {Family::Exponential, "exp", 1},
    {Family::Uniform, "uniform", 1},
    {Family::GPD, "gpd", 2},
    {Family::ParetoI, "pareto1", 2},
    {Family::ParetoII, "pareto2", 2},
    {Family::Gamma, "gamma", 2},
    {Family::Weibull, "weibull", 2},
    {Family::Lognormal, "lognormal", 2},
    {Family::Makeham, "makeham", 2},
    {Family::LFR, "lfr", 1},
}};

const FamilyInfo& info(Family family) {
  for (const auto& f : kFamilies) {
    if (f.family == family) return f;
  }
  fail(ErrorKind::InvalidParameter, "unknown family");
}

void require_positive(double v, std::string_view what, Family family) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    fail(ErrorKind::InvalidParameter,
         std::string(family_name(family)) + ": " + std::string(what) + " must be positive and finite, got " +
             shortest(v));
  }
}

double lognormal_z(const DistributionModel& m, double x) { return (std::log(x) - m.param(0)) / m.param(1); }

// Solves H(t) = L for the cumulative hazard H(t) = (a+b)t + b(e^-t - 1).
// H is convex with H(t) >= a t, so Newton started at L/a descends
// monotonically onto the root.
double makeham_quantile(double a, double b, double cum_hazard) {
  double t = cum_hazard / a;
  for (int i = 0; i < 200; ++i) {
    const double h = a - b * std::expm1(-t);
    const double step = ((a + b) * t + b * std::expm1(-t) - cum_hazard) / h;
    t -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * t) break;
  }
  return t;
}

void require_order(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) fail(ErrorKind::InvalidParameter, "order s must be positive");
}

AnalyticValue numeric(const QuadratureResult& q) {
  return {q.value, AnalyticMethod::NumericIntegration, q.abs_err_bound};
}

}  // namespace

std::string_view family_name(Family family) { return info(family).name; }

std::string_view to_string(AnalyticMethod method) {
  switch (method) {
    case AnalyticMethod::ClosedForm: return "closed_form";
    case AnalyticMethod::NumericIntegration: return "numeric_integration";
    case AnalyticMethod::CentralDifference: return "central_difference";
  }
  return "unknown";
}

DistributionModel make_model(Family family, std::span<const double> params) {
  const auto& fi = info(family);
  if (params.size() != fi.arity) {
    fail(ErrorKind::InvalidParameter, std::string(fi.name) + " takes " + std::to_string(fi.arity) +
                                          " parameter(s), got " + std::to_string(params.size()));
  }
  DistributionModel m;
  m.family_ = family;
  m.params_.assign(params.begin(), params.end());
  m.lower_ = 0.0;
  m.upper_ = kInf;

  switch (family) {
    case Family::Exponential:
      require_positive(params[0], "rate", family);
      break;
    case Family::Uniform:
      require_positive(params[0], "upper end a", family);
      m.upper_ = params[0];
      break;
    case Family::GPD:
      if (!(params[0] > -1.0) || !std::isfinite(params[0])) {
        fail(ErrorKind::InvalidParameter, "gpd: shape a must exceed -1, got " + shortest(params[0]));
      }
      require_positive(params[1], "scale b", family);
      if (params[0] < 0.0) m.upper_ = -params[1] / params[0];
      break;
    case Family::ParetoI:
      require_positive(params[0], "minimum k", family);
      require_positive(params[1], "shape alpha", family);
      m.lower_ = params[0];
      break;
    case Family::ParetoII:
      require_positive(params[0], "scale a", family);
      require_positive(params[1], "shape b", family);
      break;
    case Family::Gamma:
      require_positive(params[0], "shape", family);
      require_positive(params[1], "rate", family);
      break;
    case Family::Weibull:
      require_positive(params[0], "shape", family);
      require_positive(params[1], "scale", family);
      break;
    case Family::Lognormal:
      if (!std::isfinite(params[0])) fail(ErrorKind::InvalidParameter, "lognormal: mu must be finite");
      require_positive(params[1], "sigma", family);
      break;
    case Family::Makeham:
      require_positive(params[0], "a", family);
      require_positive(params[1], "b", family);
      break;
    case Family::LFR:
      require_positive(params[0], "theta", family);
      break;
  }
  return m;
}

DistributionModel make_model(Family family, std::initializer_list<double> params) {
  return make_model(family, std::span<const double>(params.begin(), params.size()));
}

DistributionModel parse_model(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    fail(ErrorKind::ParseError, "distribution spec '" + std::string(spec) + "' needs the form name:p1,p2");
  }
  const std::string_view name = spec.substr(0, colon);
  const FamilyInfo* found = nullptr;
  for (const auto& f : kFamilies) {
    if (f.name == name) found = &f;
  }
  if (name == "exponential") found = &kFamilies[0];
  if (found == nullptr) fail(ErrorKind::ParseError, "unknown distribution family '" + std::string(name) + "'");

  std::vector<double> params;
  std::string_view rest = spec.substr(colon + 1);
  while (true) {
    const auto comma = rest.find(',');
    std::string_view tok = rest.substr(0, comma);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      fail(ErrorKind::ParseError, "bad parameter '" + std::string(tok) + "' in '" + std::string(spec) + "'");
    }
    params.push_back(v);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return make_model(found->family, params);
}

std::string to_string(const DistributionModel& model) {
  std::string out(family_name(model.family()));
  out += ':';
  for (std::size_t i = 0; i < model.params().size(); ++i) {
    if (i > 0) out += ',';
    out += shortest(model.param(i));
  }
  return out;
}

double log_survival(const DistributionModel& m, double x) {
  if (x <= m.support_lower()) return 0.0;
  if (x >= m.support_upper()) return -kInf;
  switch (m.family()) {
    case Family::Exponential:
      return -m.param(0) * x;
    case Family::Uniform:
      return std::log1p(-x / m.param(0));
    case Family::GPD: {
      const double a = m.param(0);
      const double b = m.param(1);
      if (a == 0.0) return -x / b;
      return -(1.0 + 1.0 / a) * std::log1p(a * x / b);
    }
    case Family::ParetoI:
      return m.param(1) * std::log(m.param(0) / x);
    case Family::ParetoII:
      return -m.param(1) * std::log1p(x / m.param(0));
    case Family::Gamma:
      return std::log(boost::math::gamma_q(m.param(0), m.param(1) * x));
    case Family::Weibull:
      return -std::pow(x / m.param(1), m.param(0));
    case Family::Lognormal:
      return std::log(0.5 * std::erfc(lognormal_z(m, x) / std::numbers::sqrt2));
    case Family::Makeham:
      return -m.param(0) * x - m.param(1) * (x + std::expm1(-x));
    case Family::LFR:
      return -x - 0.5 * m.param(0) * x * x;
  }
  return 0.0;
}

double survival(const DistributionModel& model, double x) { return std::exp(log_survival(model, x)); }

double cdf(const DistributionModel& model, double x) { return -std::expm1(log_survival(model, x)); }

double hazard(const DistributionModel& m, double x) {
  if (!(x >= m.support_lower()) || !(x < m.support_upper()) || !(survival(m, x) > 0.0)) {
    fail(ErrorKind::OutsideSupport, "hazard undefined at x = " + shortest(x) + " for " + to_string(m));
  }
  switch (m.family()) {
    case Family::Exponential:
      return m.param(0);
    case Family::Uniform:
      return 1.0 / (m.param(0) - x);
    case Family::GPD:
      return (m.param(0) + 1.0) / (m.param(1) + m.param(0) * x);
    case Family::ParetoI:
      return m.param(1) / x;
    case Family::ParetoII:
      return m.param(1) / (m.param(0) + x);
    case Family::Gamma: {
      const double rate = m.param(1);
      return boost::math::gamma_p_derivative(m.param(0), rate * x) * rate /
             boost::math::gamma_q(m.param(0), rate * x);
    }
    case Family::Weibull: {
      const double k = m.param(0);
      const double scale = m.param(1);
      return k / scale * std::pow(x / scale, k - 1.0);
    }
    case Family::Lognormal: {
      if (x == 0.0) return 0.0;
      const double z = lognormal_z(m, x);
      const double pdf = std::exp(-0.5 * z * z) / (x * m.param(1) * std::sqrt(2.0 * std::numbers::pi));
      return pdf / survival(m, x);
    }
    case Family::Makeham:
      return m.param(0) - m.param(1) * std::expm1(-x);
    case Family::LFR:
      return 1.0 + m.param(0) * x;
  }
  return 0.0;
}

double mean(const DistributionModel& m) {
  switch (m.family()) {
    case Family::Exponential:
      return 1.0 / m.param(0);
    case Family::Uniform:
      return 0.5 * m.param(0);
    case Family::GPD:
      return m.param(1);
    case Family::ParetoI: {
      const double alpha = m.param(1);
      if (!(alpha > 1.0)) fail(ErrorKind::NonFiniteMean, "pareto1 mean needs alpha > 1");
      return m.param(0) * alpha / (alpha - 1.0);
    }
    case Family::ParetoII: {
      const double b = m.param(1);
      if (!(b > 1.0)) fail(ErrorKind::NonFiniteMean, "pareto2 mean needs b > 1");
      return m.param(0) / (b - 1.0);
    }
    case Family::Gamma:
      return m.param(0) / m.param(1);
    case Family::Weibull:
      return m.param(1) * std::tgamma(1.0 + 1.0 / m.param(0));
    case Family::Lognormal:
      return std::exp(m.param(0) + 0.5 * m.param(1) * m.param(1));
    case Family::Makeham:
    case Family::LFR:
      return integrate_decreasing([&m](double x) { return survival(m, x); }, 0.0).value;
  }
  return 0.0;
}

double quantile(const DistributionModel& m, double u) {
  if (!(u > 0.0 && u < 1.0)) fail(ErrorKind::InvalidProbability, "quantile needs 0 < u < 1, got " + shortest(u));
  const double log_s = std::log1p(-u);
  switch (m.family()) {
    case Family::Exponential:
      return -log_s / m.param(0);
    case Family::Uniform:
      return u * m.param(0);
    case Family::GPD: {
      const double a = m.param(0);
      const double b = m.param(1);
      if (a == 0.0) return -b * log_s;
      return b / a * std::expm1(-a / (a + 1.0) * log_s);
    }
    case Family::ParetoI:
      return m.param(0) * std::exp(-log_s / m.param(1));
    case Family::ParetoII:
      return m.param(0) * std::expm1(-log_s / m.param(1));
    case Family::Weibull:
      return m.param(1) * std::pow(-log_s, 1.0 / m.param(0));
    case Family::LFR: {
      // Positive root of theta x^2 / 2 + x = L, in the cancellation-free form.
      const double cum_hazard = -log_s;
      return 2.0 * cum_hazard / (1.0 + std::sqrt(1.0 + 2.0 * m.param(0) * cum_hazard));
    }
    case Family::Gamma: {
      // The lower-tail inverse keeps full relative accuracy for small u.
      const double z = u < 0.5 ? boost::math::gamma_p_inv(m.param(0), u) : boost::math::gamma_q_inv(m.param(0), 1.0 - u);
      return z / m.param(1);
    }
    case Family::Lognormal:
      return std::exp(m.param(0) - m.param(1) * std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u));
    case Family::Makeham:
      return makeham_quantile(m.param(0), m.param(1), -log_s);
  }
  return 0.0;
}

std::vector<double> draw(const DistributionModel& model, std::size_t n, Rng& rng) {
  std::vector<double> out(n);
  for (auto& x : out) x = quantile(model, open_unit(rng));
  return out;
}

Sample sample(const DistributionModel& model, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return Sample::sort_validate(draw(model, n, rng));
}

AnalyticValue cregf_closed(const DistributionModel& m, double s) {
  require_order(s);
  auto closed = [](double v) { return AnalyticValue{v, AnalyticMethod::ClosedForm, 0.0}; };
  switch (m.family()) {
    case Family::Exponential:
      return closed(1.0 / (m.param(0) * s));
    case Family::Uniform:
      return closed(m.param(0) / (s + 1.0));
    case Family::GPD: {
      const double denom = (m.param(0) + 1.0) * s - m.param(0);
      if (!(denom > 0.0)) fail(ErrorKind::DivergentIntegral, "gpd needs (a+1)s > a");
      return closed(m.param(1) / denom);
    }
    case Family::ParetoI: {
      const double denom = m.param(1) * s - 1.0;
      if (!(denom > 0.0)) fail(ErrorKind::DivergentIntegral, "pareto1 needs alpha s > 1");
      return closed(m.param(0) / denom);
    }
    case Family::ParetoII: {
      const double denom = m.param(1) * s - 1.0;
      if (!(denom > 0.0)) fail(ErrorKind::DivergentIntegral, "pareto2 needs b s > 1");
      return closed(m.param(0) / denom);
    }
    default:
      fail(ErrorKind::NoClosedForm, "no closed-form C_s for " + std::string(family_name(m.family())));
  }
}

AnalyticValue cregf_numeric(const DistributionModel& m, double s) {
  require_order(s);
  auto integrand = [&m, s](double x) { return std::exp(s * log_survival(m, x)); };
  return numeric(integrate_decreasing(integrand, m.support_lower(), m.support_upper()));
}

AnalyticValue dcregf_closed(const DistributionModel& m, double s, double t) {
  if (!(s >= 1.0) || !std::isfinite(s)) fail(ErrorKind::InvalidParameter, "dynamic order s must be >= 1");
  if (!(t >= 0.0)) fail(ErrorKind::InvalidParameter, "age t must be non-negative");
  switch (m.family()) {
    case Family::Exponential:
      return {1.0 / (m.param(0) * s), AnalyticMethod::ClosedForm, 0.0};
    case Family::GPD: {
      if (t >= m.support_upper()) fail(ErrorKind::DeadAtT, "survival is zero at t");
      const double a = m.param(0);
      return {(m.param(1) + a * t) / ((a + 1.0) * s - a), AnalyticMethod::ClosedForm, 0.0};
    }
    default:
      fail(ErrorKind::NoClosedForm, "no closed-form C_s(X;t) for " + std::string(family_name(m.family())));
  }
}

AnalyticValue dcregf_numeric(const DistributionModel& m, double s, double t) {
  if (!(s >= 1.0) || !std::isfinite(s)) fail(ErrorKind::InvalidParameter, "dynamic order s must be >= 1");
  if (!(t >= 0.0) || !std::isfinite(t)) fail(ErrorKind::InvalidParameter, "age t must be non-negative");
  const double log_s_t = log_survival(m, t);
  if (log_s_t == -kInf) fail(ErrorKind::DeadAtT, "survival is zero at t = " + shortest(t));
  auto integrand = [&m, s, log_s_t](double x) { return std::exp(s * (log_survival(m, x) - log_s_t)); };
  return numeric(integrate_decreasing(integrand, std::max(t, m.support_lower()), m.support_upper()));
}

AnalyticValue cre_from_generating(const DistributionModel& m) {
  constexpr double kStep = 1e-4;
  auto slope = [&m](double h, double& quad_err) {
    const auto up = cregf_numeric(m, 1.0 + h);
    const auto down = cregf_numeric(m, 1.0 - h);
    quad_err = (up.abs_err_bound + down.abs_err_bound) / (2.0 * h);
    return -(up.value - down.value) / (2.0 * h);
  };
  double err = 0.0;
  double err_wide = 0.0;
  const double value = slope(kStep, err);
  // Truncation is O(h^2); doubling the step quadruples it.
  const double wide = slope(2.0 * kStep, err_wide);
  return {value, AnalyticMethod::CentralDifference, err + std::abs(wide - value) / 3.0};
}

}  // namespace cregf
