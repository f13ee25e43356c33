#pragma once

#include <cstddef>

#include "ionheat/chain.hpp"
#include "ionheat/linalg.hpp"
#include "ionheat/rng.hpp"
#include "ionheat/trap.hpp"

// Stationary Gaussian field synthesis: exponential temporal correlation
// (exact first-order Markov update, no discretization bias at the sample
// times) and configurable equal-time spatial coherence across the chain.
// Fields are unit variance; the physical scale enters through the Rabi rate.
namespace ionheat {

struct NoisePath {
  double dt = 0.0;  // dimensionless omega0 * step
  Matrix samples;   // one row per ion, one column per sample time
};

// Single stationary Ornstein-Uhlenbeck row: mean 0, variance 1, lag-k
// correlation exp(-k dt / (omega0 T)). The first sample is stationary.
NoisePath ou_path(double coherence_ratio, double dt, std::size_t n_samples, SeedSpec seed);

// Equal-time coherence matrix for the chain: all ones (coherent), identity
// (incoherent), or exp(-|z_m - z_n| / l_coh) with z in meters.
Matrix gamma_matrix(const ChainModes& chain, const TrapConfig& trap,
                    const SpatialCoherenceModel& spatial);

// Same, with the coherence length measured in units of the Coulomb length
// scale; this is what the dimensionless CLI paths use.
Matrix gamma_matrix_scaled(const ChainModes& chain, const SpatialCoherenceModel& spatial,
                           double coherence_length_over_scale);

// N jointly Gaussian rows with Cov(E_m(t+tau), E_n(t)) = gamma_mn e^{-|tau|/T}.
// The all-ones gamma is handled as one shared process; otherwise rows are
// mixed through the lower-triangular factor of gamma at every step. A gamma
// with a negative eigenvalue is rejected, naming the offending eigenvalue.
NoisePath correlated_paths(const ChainModes& chain, const Matrix& gamma, double coherence_ratio,
                           double dt, std::size_t n_samples, SeedSpec seed);

}  // namespace ionheat
