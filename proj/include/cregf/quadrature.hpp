#pragma once

#include <functional>
#include <limits>

namespace cregf {

struct QuadratureResult {
  double value = 0.0;
  double abs_err_bound = 0.0;
};

/// Integrates a non-negative, non-increasing integrand over [from, upper).
///
/// Finite `upper` is integrated directly with adaptive Gauss-Kronrod. An
/// infinite range is covered by consecutive panels of doubling length; the
/// first panel is sized so the integrand has roughly halved across it. The
/// loop stops once the last panel and the crude tail bound f(T)(T - from) are
/// both negligible. A geometric extrapolation from the ratio of consecutive
/// panel contributions closes slowly decaying (power-law) tails, and a ratio
/// that never drops below one is reported as ErrorKind::DivergentIntegral.
QuadratureResult integrate_decreasing(const std::function<double(double)>& f, double from,
                                      double upper = std::numeric_limits<double>::infinity());

}  // namespace cregf
