#pragma once

#include <span>
#include <vector>

namespace parl {

/// One mutual-information trace sample: value at step t.
struct MiSample {
  double t;
  double value;
};

/// Least-squares quadratic f(t) = a*t^2 + b*t + c over a trace segment,
/// together with the segment bounds and the largest observed sample, which
/// the peak estimate falls back on when the fit is convex.
struct QuadraticFit {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double t_min = 0.0;
  double t_max = 0.0;
  double observed_max = 0.0;

  double eval(double t) const { return (a * t + b) * t + c; }
};

/// Ordinary least squares, degree 2. Exactly interpolates three points with
/// distinct t. Throws std::domain_error with fewer than three samples or a
/// degenerate (duplicate-t) design.
QuadraticFit fit_quadratic(std::span<const MiSample> samples);

/// Peak the trace is heading for: the vertex value for a concave fit (vertex
/// clamped into [0, horizon]), otherwise the larger of the fit's value at the
/// end of the fitted range and the largest observed sample. The result is
/// clamped into [0, cap].
double f_max(const QuadraticFit& fit, double horizon, double cap);

}  // namespace parl
