#pragma once

namespace parl {

/// Fanger comfort-model inputs (ISO 7730 conventions).
struct PmvInputs {
  double air_temp_c;        // dry-bulb air temperature
  double mean_radiant_c;    // mean radiant temperature
  double rel_humidity_pct;  // relative humidity, percent
  double air_velocity_ms;   // relative air velocity
  double metabolic_met;     // metabolic rate, met (1 met = 58.15 W/m2)
  double clothing_clo;      // clothing insulation, clo (1 clo = 0.155 m2K/W)
};

/// Predicted Mean Vote per ISO 7730. The clothing surface temperature is
/// solved iteratively to 1e-4 degC; throws std::runtime_error if the solve
/// fails to converge within 200 rounds, std::domain_error for inputs outside
/// the plausible ranges (air temp [0,50] degC, met [0.7,4], clo [0,2]).
/// The returned vote is clamped to the reporting scale [-3, 3].
double pmv(const PmvInputs& inputs);

/// Comfort reward over the vote: a tent peaking at +10 for PMV = 0, reaching
/// zero at the comfort-band edges |PMV| = 0.5, and descending at -10 per unit
/// vote beyond them.
double thermal_reward(double pmv_value);

}  // namespace parl
