#pragma once

#include <string>

#include "ionheat/trap.hpp"

#include <json.hpp>

// Key-value configuration ingestion. Schema (JSON object):
//   charge_C  | charge_e     ion charge (coulombs, or multiples of e)
//   mass_kg   | mass_amu     ion mass
//   omega0_rad_s | freq_Hz   axial secular frequency
//   mean_square_field        <E^2> in (V/m)^2
//   coherence_time_s         temporal coherence time T
//   spatial: { model: coherent | incoherent | exponential_distance,
//              coherence_length_m (required for exponential_distance) }
// Either member of each alternative pair is accepted; if both appear they
// must agree to 1e-9 relative, otherwise loading fails.
namespace ionheat {

TrapConfig trap_from_json(const nlohmann::json& j);
NoiseConfig noise_from_json(const nlohmann::json& j);

struct PhysicalConfig {
  TrapConfig trap;
  NoiseConfig noise;
};

PhysicalConfig physical_config_from_json(const nlohmann::json& j);
PhysicalConfig load_physical_config(const std::string& path);
TrapConfig load_trap_config(const std::string& path);

}  // namespace ionheat
