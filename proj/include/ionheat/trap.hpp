#pragma once

#include <limits>
#include <stdexcept>

// Physical configuration and derived scales. Everything downstream works in
// the dimensionless variables omega0*t, t/T and dimensionless amplitude v;
// SI enters and leaves the project through this module only.
namespace ionheat {

struct TrapConfig {
  TrapConfig(double charge_coulomb, double mass_kg, double omega0_rad_s);

  double charge;  // C, nonzero
  double mass;    // kg, positive
  double omega0;  // rad/s, positive (axial secular frequency)
};

struct SpatialCoherenceModel {
  enum class Kind { Coherent, Incoherent, ExponentialDistance };

  static SpatialCoherenceModel coherent() { return {Kind::Coherent, 0.0}; }
  static SpatialCoherenceModel incoherent() { return {Kind::Incoherent, 0.0}; }
  static SpatialCoherenceModel exponential_distance(double coherence_length_m) {
    if (!(coherence_length_m > 0.0))
      throw std::invalid_argument("spatial coherence length must be positive");
    return {Kind::ExponentialDistance, coherence_length_m};
  }

  Kind kind = Kind::Coherent;
  double coherence_length = 0.0;  // m, used by ExponentialDistance only
};

struct NoiseConfig {
  NoiseConfig(double mean_square_field_si, double coherence_time_s,
              SpatialCoherenceModel spatial_model = SpatialCoherenceModel::coherent());

  double mean_square_field;  // <E^2>, (V/m)^2, >= 0
  double coherence_time;     // s, > 0
  SpatialCoherenceModel spatial;
};

// Heating times can be genuinely infinite (zero field, or modes decoupled
// from a coherent field); the unbounded case is an explicit variant so it
// serializes cleanly instead of riding on a floating-point infinity.
class HeatingTime {
 public:
  static HeatingTime finite(double value) {
    if (!(value > 0.0)) throw std::invalid_argument("heating time must be positive");
    return HeatingTime(value, false);
  }
  static HeatingTime unbounded() { return HeatingTime(0.0, true); }

  bool is_unbounded() const { return unbounded_; }
  double value() const {
    if (unbounded_) throw std::logic_error("heating time is unbounded");
    return value_;
  }
  // convenient for ratio arithmetic in tests and plots
  double value_or_infinity() const {
    return unbounded_ ? std::numeric_limits<double>::infinity() : value_;
  }

 private:
  HeatingTime(double v, double u) : value_(v), unbounded_(u) {}
  double value_;
  bool unbounded_;
};

// Characteristic transition rate Omega = sqrt(e^2 <E^2> / (M hbar omega0)).
double rabi_scale(const TrapConfig& trap, const NoiseConfig& noise);

// Single-ion heating time: 1/tau1 = (e^2 <E^2>/(M hbar omega0)) * T/(1 + omega0^2 T^2).
// Unbounded when the mean-square field vanishes.
HeatingTime heating_time_tau1(const TrapConfig& trap, const NoiseConfig& noise);

// Coulomb length scale l with l^3 = e^2/(4 pi eps0 M omega0^2); ion
// separations in meters are l * (u_m - u_n).
double length_scale(const TrapConfig& trap);

}  // namespace ionheat
