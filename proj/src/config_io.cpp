#include "ionheat/config_io.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <stdexcept>

#include "ionheat/constants.hpp"

namespace ionheat {

namespace {

std::optional<double> maybe_number(const nlohmann::json& j, const std::string& key) {
  if (!j.contains(key)) return std::nullopt;
  if (!j.at(key).is_number())
    throw std::invalid_argument("config: '" + key + "' must be a number");
  return j.at(key).get<double>();
}

// One quantity expressible two ways; both present must agree.
double resolve_pair(const nlohmann::json& j, const std::string& key_a, double scale_a,
                    const std::string& key_b, double scale_b) {
  const auto a = maybe_number(j, key_a);
  const auto b = maybe_number(j, key_b);
  if (!a && !b)
    throw std::invalid_argument("config: one of '" + key_a + "' or '" + key_b + "' is required");
  if (a && b) {
    const double va = *a * scale_a, vb = *b * scale_b;
    if (std::abs(va - vb) > 1e-9 * std::max(std::abs(va), std::abs(vb)))
      throw std::invalid_argument("config: '" + key_a + "' and '" + key_b +
                                  "' are both present and inconsistent");
    return va;
  }
  return a ? *a * scale_a : *b * scale_b;
}

nlohmann::json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

}  // namespace

TrapConfig trap_from_json(const nlohmann::json& j) {
  const double charge =
      resolve_pair(j, "charge_C", 1.0, "charge_e", constants::elementary_charge);
  const double mass = resolve_pair(j, "mass_kg", 1.0, "mass_amu", constants::atomic_mass_unit);
  const double omega0 =
      resolve_pair(j, "omega0_rad_s", 1.0, "freq_Hz", 2.0 * constants::pi);
  return TrapConfig(charge, mass, omega0);
}

NoiseConfig noise_from_json(const nlohmann::json& j) {
  const auto msf = maybe_number(j, "mean_square_field");
  const auto tc = maybe_number(j, "coherence_time_s");
  if (!msf) throw std::invalid_argument("config: 'mean_square_field' is required");
  if (!tc) throw std::invalid_argument("config: 'coherence_time_s' is required");

  SpatialCoherenceModel spatial = SpatialCoherenceModel::coherent();
  if (j.contains("spatial")) {
    const auto& sp = j.at("spatial");
    const std::string model = sp.value("model", "");
    if (model == "coherent") {
      spatial = SpatialCoherenceModel::coherent();
    } else if (model == "incoherent") {
      spatial = SpatialCoherenceModel::incoherent();
    } else if (model == "exponential_distance") {
      const auto len = maybe_number(sp, "coherence_length_m");
      if (!len)
        throw std::invalid_argument(
            "config: spatial model exponential_distance requires 'coherence_length_m'");
      spatial = SpatialCoherenceModel::exponential_distance(*len);
    } else {
      throw std::invalid_argument("config: unknown spatial model '" + model + "'");
    }
  }
  return NoiseConfig(*msf, *tc, spatial);
}

PhysicalConfig physical_config_from_json(const nlohmann::json& j) {
  return {trap_from_json(j), noise_from_json(j)};
}

PhysicalConfig load_physical_config(const std::string& path) {
  return physical_config_from_json(parse_file(path));
}

TrapConfig load_trap_config(const std::string& path) {
  return trap_from_json(parse_file(path));
}

}  // namespace ionheat
