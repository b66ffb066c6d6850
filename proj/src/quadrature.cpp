#include "cregf/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <string>

#include "cregf/error.hpp"

namespace cregf {
namespace {

constexpr unsigned kMaxDepth = 12;
constexpr int kGradeLevels = 60;
constexpr double kPanelTol = 1e-13;
constexpr double kStopRel = 1e-16;
constexpr double kRangeLimit = 1e290;
constexpr int kStallPanels = 40;

// The panel is mapped onto [-1, 1] here: Boost 1.74 leaves the local error
// estimate unscaled for other intervals, which stalls refinement on short ones.
QuadratureResult panel(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  auto g = [&](double u) { return f(mid + half * u); };
  double err = 0.0;
  const double v =
      boost::math::quadrature::gauss_kronrod<double, 21>::integrate(g, -1.0, 1.0, kMaxDepth, kPanelTol, &err);
  if (!std::isfinite(v)) fail(ErrorKind::NumericFailure, "non-finite quadrature panel");
  return {half * v, half * err};
}

// [a, b] split into dyadic panels shrinking toward `end` (a or b), which
// absorbs algebraic endpoint behaviour such as 1 - c x^0.7. The sliver left at
// the end is bounded by the larger endpoint value times its width.
QuadratureResult graded_panel(const std::function<double(double)>& f, double a, double b, double end) {
  const double other = end == a ? b : a;
  QuadratureResult total;
  double inner = other;
  for (int j = 0; j < kGradeLevels; ++j) {
    const double next = end + 0.5 * (inner - end);
    if (next == end || next == inner) break;
    if (j > 0 && std::max(std::abs(f(end)), std::abs(f(inner))) * std::abs(inner - end) <=
                     kStopRel * std::abs(total.value)) {
      break;
    }
    const QuadratureResult p = next < inner ? panel(f, next, inner) : panel(f, inner, next);
    total.value += p.value;
    total.abs_err_bound += p.abs_err_bound;
    inner = next;
  }
  const double sliver = std::max(std::abs(f(end)), std::abs(f(inner))) * std::abs(inner - end);
  total.value += 0.5 * sliver;
  total.abs_err_bound += 0.5 * sliver;
  return total;
}

QuadratureResult graded_both(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const QuadratureResult lo = graded_panel(f, a, mid, a);
  const QuadratureResult hi = graded_panel(f, mid, b, b);
  return {lo.value + hi.value, lo.abs_err_bound + hi.abs_err_bound};
}

// Initial panel length: integrand drops to between 1/4 and 1/2 of f(from).
double initial_width(const std::function<double(double)>& f, double from, double f0) {
  double h = 1.0;
  for (int i = 0; i < 2100 && f(from + h) > 0.5 * f0 && h < kRangeLimit; ++i) h *= 2.0;
  for (int i = 0; i < 2100 && f(from + h) < 0.25 * f0 && h > 1e-290; ++i) h *= 0.5;
  return h;
}

}  // namespace

QuadratureResult integrate_decreasing(const std::function<double(double)>& f, double from, double upper) {
  if (!(upper > from)) return {};
  if (std::isfinite(upper)) return graded_both(f, from, upper);

  const double f0 = f(from);
  if (!(f0 > 0.0)) return {};

  double a = from;
  double len = initial_width(f, from, f0);
  QuadratureResult total;
  double prev = 0.0;
  double ratio = 0.0;
  int stalled = 0;

  for (int k = 0;; ++k) {
    const double b = a + len;
    const QuadratureResult p = k == 0 ? graded_panel(f, a, b, a) : panel(f, a, b);
    total.value += p.value;
    total.abs_err_bound += p.abs_err_bound;

    if (k > 0 && prev > 0.0) ratio = p.value / prev;
    const double crude_tail = f(b) * (b - from);
    const double geometric_tail = (ratio > 0.0 && ratio < 1.0) ? p.value * ratio / (1.0 - ratio) : 0.0;
    const double tail = std::max(crude_tail, geometric_tail);

    if (k > 0 && p.value <= kStopRel * total.value && tail <= kStopRel * total.value) {
      total.abs_err_bound += tail;
      return total;
    }

    stalled = (k > 0 && ratio >= 1.0) ? stalled + 1 : 0;
    if (stalled >= kStallPanels) {
      fail(ErrorKind::DivergentIntegral, "panel contributions do not decay (from " + std::to_string(from) + ")");
    }

    if (b > kRangeLimit) {
      if (!(ratio < 1.0 - 1e-9)) fail(ErrorKind::DivergentIntegral, "tail does not decay before range limit");
      // Power-law tail: the remaining panels form a geometric series.
      total.value += geometric_tail;
      total.abs_err_bound += 1e-3 * geometric_tail + crude_tail * 1e-3;
      return total;
    }

    prev = p.value;
    a = b;
    len *= 2.0;
  }
}

}  // namespace cregf
