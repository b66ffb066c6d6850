#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "cregf/ddcregf_test.hpp"
#include "cregf/distributions.hpp"
#include "cregf/estimator.hpp"

namespace cregf {

/// Closed form (when the family has one) next to the quadrature value.
struct AnalyticLookup {
  std::string model;
  double s = 1.0;
  std::optional<double> t;
  std::optional<AnalyticValue> closed;
  AnalyticValue numeric;

  const AnalyticValue& preferred() const { return closed ? *closed : numeric; }
};

/// C_s(X) when t is empty, C_s(X; t) otherwise.
AnalyticLookup analytic_lookup(const DistributionModel& model, double s, std::optional<double> t);

// JSON keeps full double precision; text prints 6 significant digits.
nlohmann::json to_json(const CregfEstimate& est);
nlohmann::json to_json(const TestReport& report);
nlohmann::json to_json(const AnalyticLookup& lookup);

std::string to_text(const CregfEstimate& est);
std::string to_text(const TestReport& report);
std::string to_text(const AnalyticLookup& lookup);

/// printf("%.6g").
std::string format_sig6(double v);

}  // namespace cregf
