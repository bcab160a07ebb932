#include "parl/polyfit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace parl {

QuadraticFit fit_quadratic(std::span<const MiSample> samples) {
  const std::size_t n = samples.size();
  if (n < 3) throw std::domain_error("fit_quadratic: need at least 3 samples");

  // Center and scale t before forming the normal equations; raw step indices
  // reach into the thousands and t^4 sums would lose the low-order digits.
  double t_lo = samples[0].t, t_hi = samples[0].t, t_sum = 0.0;
  double v_max = samples[0].value;
  for (const auto& s : samples) {
    t_lo = std::min(t_lo, s.t);
    t_hi = std::max(t_hi, s.t);
    t_sum += s.t;
    v_max = std::max(v_max, s.value);
  }
  if (t_hi == t_lo) throw std::domain_error("fit_quadratic: all samples share one t");
  const double mean = t_sum / static_cast<double>(n);
  const double scale = (t_hi - t_lo) / 2.0;

  // Normal equations for y = A*u^2 + B*u + C with u = (t - mean) / scale.
  double s1 = static_cast<double>(n), su = 0, su2 = 0, su3 = 0, su4 = 0;
  double sy = 0, suy = 0, su2y = 0;
  for (const auto& s : samples) {
    const double u = (s.t - mean) / scale;
    const double u2 = u * u;
    su += u;
    su2 += u2;
    su3 += u2 * u;
    su4 += u2 * u2;
    sy += s.value;
    suy += u * s.value;
    su2y += u2 * s.value;
  }

  double m[3][4] = {{su4, su3, su2, su2y},
                    {su3, su2, su, suy},
                    {su2, su, s1, sy}};
  // Gaussian elimination with partial pivoting on the 3x3 system.
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::fabs(m[r][col]) > std::fabs(m[pivot][col])) pivot = r;
    if (std::fabs(m[pivot][col]) < 1e-300)
      throw std::domain_error("fit_quadratic: singular design (duplicate t values)");
    if (pivot != col) std::swap(m[pivot], m[col]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      for (int k = col; k < 4; ++k) m[r][k] -= f * m[col][k];
    }
  }
  const double A = m[0][3] / m[0][0];
  const double B = m[1][3] / m[1][1];
  const double C = m[2][3] / m[2][2];

  // Expand back to f(t) = a t^2 + b t + c.
  QuadraticFit fit;
  fit.a = A / (scale * scale);
  fit.b = B / scale - 2.0 * A * mean / (scale * scale);
  fit.c = A * mean * mean / (scale * scale) - B * mean / scale + C;
  fit.t_min = t_lo;
  fit.t_max = t_hi;
  fit.observed_max = v_max;
  return fit;
}

double f_max(const QuadraticFit& fit, double horizon, double cap) {
  double peak;
  if (fit.a < 0.0) {
    double t_star = -fit.b / (2.0 * fit.a);
    t_star = std::clamp(t_star, 0.0, horizon);
    peak = fit.eval(t_star);
  } else {
    peak = std::max(fit.eval(fit.t_max), fit.observed_max);
  }
  return std::clamp(peak, 0.0, cap);
}

}  // namespace parl
