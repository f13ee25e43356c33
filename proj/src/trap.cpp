#include "ionheat/trap.hpp"

#include <cmath>
#include <limits>

#include "ionheat/constants.hpp"

namespace ionheat {

TrapConfig::TrapConfig(double charge_coulomb, double mass_kg, double omega0_rad_s)
    : charge(charge_coulomb), mass(mass_kg), omega0(omega0_rad_s) {
  if (!(charge != 0.0) || !std::isfinite(charge))
    throw std::invalid_argument("trap: charge must be nonzero and finite");
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw std::invalid_argument("trap: mass must be positive and finite");
  if (!(omega0 > 0.0) || !std::isfinite(omega0))
    throw std::invalid_argument("trap: omega0 must be positive and finite");
}

NoiseConfig::NoiseConfig(double mean_square_field_si, double coherence_time_s,
                         SpatialCoherenceModel spatial_model)
    : mean_square_field(mean_square_field_si),
      coherence_time(coherence_time_s),
      spatial(spatial_model) {
  if (!(mean_square_field >= 0.0) || !std::isfinite(mean_square_field))
    throw std::invalid_argument("noise: mean-square field must be >= 0 and finite");
  if (!(coherence_time > 0.0) || !std::isfinite(coherence_time))
    throw std::invalid_argument("noise: coherence time must be positive and finite");
}

double rabi_scale(const TrapConfig& trap, const NoiseConfig& noise) {
  return std::sqrt(trap.charge * trap.charge * noise.mean_square_field /
                   (trap.mass * constants::hbar * trap.omega0));
}

HeatingTime heating_time_tau1(const TrapConfig& trap, const NoiseConfig& noise) {
  if (noise.mean_square_field == 0.0) return HeatingTime::unbounded();
  const double omega = rabi_scale(trap, noise);
  const double wt = trap.omega0 * noise.coherence_time;
  const double rate = omega * omega * noise.coherence_time / (1.0 + wt * wt);
  return HeatingTime::finite(1.0 / rate);
}

double length_scale(const TrapConfig& trap) {
  const double cubed = trap.charge * trap.charge /
                       (4.0 * constants::pi * constants::vacuum_permittivity * trap.mass *
                        trap.omega0 * trap.omega0);
  return std::cbrt(cubed);
}

}  // namespace ionheat
