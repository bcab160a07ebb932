#include "parl/pmv.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace parl {

double pmv(const PmvInputs& in) {
  if (in.air_temp_c < 0.0 || in.air_temp_c > 50.0)
    throw std::domain_error("pmv: air temperature outside [0,50] degC");
  if (in.metabolic_met < 0.7 || in.metabolic_met > 4.0)
    throw std::domain_error("pmv: metabolic rate outside [0.7,4] met");
  if (in.clothing_clo < 0.0 || in.clothing_clo > 2.0)
    throw std::domain_error("pmv: clothing insulation outside [0,2] clo");
  if (in.rel_humidity_pct < 0.0 || in.rel_humidity_pct > 100.0)
    throw std::domain_error("pmv: relative humidity outside [0,100]%");
  if (in.air_velocity_ms < 0.0)
    throw std::domain_error("pmv: air velocity must be >= 0");

  const double ta = in.air_temp_c;
  const double tr = in.mean_radiant_c;

  // Water vapour pressure, Pa.
  const double pa =
      in.rel_humidity_pct * 10.0 * std::exp(16.6536 - 4030.183 / (ta + 235.0));

  const double icl = 0.155 * in.clothing_clo;  // m2K/W
  const double m = in.metabolic_met * 58.15;   // W/m2
  const double mw = m;                          // no external work

  const double fcl = icl <= 0.078 ? 1.0 + 1.29 * icl : 1.05 + 0.645 * icl;
  const double hcf = 12.1 * std::sqrt(in.air_velocity_ms);
  const double taa = ta + 273.0;
  const double tra = tr + 273.0;

  // Clothing surface temperature by damped fixed-point iteration on
  // x = tcl/100; eps 1e-6 on x is 1e-4 degC on tcl.
  const double p1 = icl * fcl;
  const double p2 = p1 * 3.96;
  const double p3 = p1 * 100.0;
  const double p4 = p1 * taa;
  const double p5 = 308.7 - 0.028 * mw + p2 * std::pow(tra / 100.0, 4);

  double xn = (taa + (35.5 - ta) / (3.5 * icl + 0.1)) / 100.0;
  double xf = xn * 2.0;
  double hc = hcf;
  const double eps = 1e-6;
  int rounds = 0;
  while (std::fabs(xn - xf) > eps) {
    xf = (xf + xn) / 2.0;
    const double hcn = 2.38 * std::pow(std::fabs(100.0 * xf - taa), 0.25);
    hc = std::max(hcf, hcn);
    xn = (p5 + p4 * hc - p2 * std::pow(xf, 4)) / (100.0 + p3 * hc);
    if (++rounds > 200)
      throw std::runtime_error("pmv: clothing temperature solve did not converge");
  }
  const double tcl = 100.0 * xn - 273.0;

  // Heat loss terms: skin diffusion, sweat, latent and dry respiration,
  // radiation, convection.
  const double hl1 = 3.05e-3 * (5733.0 - 6.99 * mw - pa);
  const double hl2 = mw > 58.15 ? 0.42 * (mw - 58.15) : 0.0;
  const double hl3 = 1.7e-5 * m * (5867.0 - pa);
  const double hl4 = 0.0014 * m * (34.0 - ta);
  const double hl5 = 3.96 * fcl * (std::pow(xn, 4) - std::pow(tra / 100.0, 4));
  const double hl6 = fcl * hc * (tcl - ta);

  const double sensitivity = 0.303 * std::exp(-0.036 * m) + 0.028;
  const double vote = sensitivity * (mw - hl1 - hl2 - hl3 - hl4 - hl5 - hl6);
  return std::clamp(vote, -3.0, 3.0);
}

double thermal_reward(double pmv_value) {
  const double ap = std::fabs(pmv_value);
  if (ap <= 0.5) return 10.0 * (1.0 - ap / 0.5);
  return -10.0 * (ap - 0.5);
}

}  // namespace parl
