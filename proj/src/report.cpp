#include "cregf/report.hpp"

#include <cstdio>
#include <sstream>

#include "cregf/error.hpp"

namespace cregf {
namespace {

nlohmann::json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json to_json(const AnalyticValue& v) {
  return {{"value", v.value}, {"method", std::string(to_string(v.method))}, {"abs_err_bound", v.abs_err_bound}};
}

void line(std::ostringstream& out, const char* key, const std::string& value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%-12s", key);
  out << buf << value << '\n';
}

std::string opt_text(const std::optional<double>& v) { return v ? format_sig6(*v) : "-"; }

}  // namespace

std::string format_sig6(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

AnalyticLookup analytic_lookup(const DistributionModel& model, double s, std::optional<double> t) {
  AnalyticLookup out;
  out.model = to_string(model);
  out.s = s;
  out.t = t;
  try {
    out.closed = t ? dcregf_closed(model, s, *t) : cregf_closed(model, s);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoClosedForm) throw;
  }
  out.numeric = t ? dcregf_numeric(model, s, *t) : cregf_numeric(model, s);
  return out;
}

nlohmann::json to_json(const CregfEstimate& est) {
  return {{"c_s", est.value},
          {"s", est.s},
          {"n", est.n},
          {"t", est.residual ? nlohmann::json(est.t) : nlohmann::json(nullptr)},
          {"se", optional_number(est.std_error)},
          {"residual", est.residual},
          {"degenerate", est.degenerate}};
}

nlohmann::json to_json(const TestReport& r) {
  return {{"s", r.s},
          {"n", r.n},
          {"delta_hat", r.delta_hat},
          {"delta_star", r.delta_star},
          {"statistic", r.statistic},
          {"p_value", r.p_value},
          {"alpha", r.alpha},
          {"sidedness", std::string(to_string(r.sidedness))},
          {"reject", r.reject},
          {"alt_se", optional_number(r.alt_se)},
          {"degenerate", r.degenerate}};
}

nlohmann::json to_json(const AnalyticLookup& a) {
  const auto& best = a.preferred();
  return {{"model", a.model},
          {"s", a.s},
          {"t", optional_number(a.t)},
          {"value", best.value},
          {"method", std::string(to_string(best.method))},
          {"closed", a.closed ? to_json(*a.closed) : nlohmann::json(nullptr)},
          {"numeric", to_json(a.numeric)}};
}

std::string to_text(const CregfEstimate& est) {
  std::ostringstream out;
  line(out, "c_s", format_sig6(est.value));
  line(out, "s", std::to_string(est.s));
  line(out, "n", std::to_string(est.n));
  line(out, "t", est.residual ? format_sig6(est.t) : "-");
  line(out, "se", opt_text(est.std_error));
  if (est.residual) line(out, "note", "residual-sample estimate (survivors past t)");
  if (est.degenerate) line(out, "note", "degenerate sample: all values equal");
  return out.str();
}

std::string to_text(const TestReport& r) {
  std::ostringstream out;
  line(out, "s", std::to_string(r.s));
  line(out, "n", std::to_string(r.n));
  line(out, "delta_hat", format_sig6(r.delta_hat));
  line(out, "delta_star", format_sig6(r.delta_star));
  line(out, "statistic", format_sig6(r.statistic));
  line(out, "p_value", format_sig6(r.p_value));
  line(out, "alpha", format_sig6(r.alpha));
  line(out, "sidedness", std::string(to_string(r.sidedness)));
  line(out, "alt_se", opt_text(r.alt_se));
  line(out, "decision", r.reject ? "reject H0 (exponential)" : "accept H0 (exponential)");
  if (r.degenerate) line(out, "note", "degenerate sample: all values equal");
  return out.str();
}

std::string to_text(const AnalyticLookup& a) {
  std::ostringstream out;
  line(out, "model", a.model);
  line(out, "s", format_sig6(a.s));
  line(out, "t", opt_text(a.t));
  if (a.closed) line(out, "closed", format_sig6(a.closed->value) + "  (" + std::string(to_string(a.closed->method)) + ")");
  line(out, "numeric", format_sig6(a.numeric.value) + "  (" + std::string(to_string(a.numeric.method)) +
                           ", abs_err <= " + format_sig6(a.numeric.abs_err_bound) + ")");
  return out.str();
}

}  // namespace cregf
