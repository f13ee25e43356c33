#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "ionheat/chain.hpp"
#include "ionheat/linalg.hpp"
#include "ionheat/noise.hpp"
#include "ionheat/rng.hpp"

// Monte Carlo engine: exact per-realization evolution of the coherent mode
// amplitudes under a synthesized noise field, plus ensemble estimators with
// standard errors. One realization = one stream index, so ensembles are
// reproducible under any scheduling; sums are reduced over fixed-size blocks
// combined in a pairwise tree, making the floating-point result independent
// of how realizations would be distributed across workers.
namespace ionheat {

struct RealizationAmplitudes {
  std::vector<double> times;                            // omega0 t, uniform from 0
  std::vector<std::vector<std::complex<double>>> v;     // [mode][time], v(0) = 0
};

// Amplitude accumulation for one noise realization: v_p is the cumulative
// trapezoidal integral of mu_p^{-1/4} (sum_n E_n b^(p)_n) e^{i sqrt(mu_p) x}
// times i*omega_tilde/sqrt(2), with x = omega0 t and omega_tilde = Omega/omega0.
RealizationAmplitudes propagate_chain(const NoisePath& path, const ChainModes& chain,
                                      double omega_tilde);

// Single-ion case (a one-row path; identical arithmetic to the N = 1 chain).
RealizationAmplitudes propagate_single(const NoisePath& path, double omega_tilde);

struct EnsembleConfig {
  ChainModes chain;          // N >= 1
  double omega0T = 1.0;      // W
  double omega0_tau1 = 8.5;  // r, single-ion heating time
  Matrix gamma;              // N x N spatial coherence
  double dt_target = 0.02;   // actual dt divides the output spacing and is <= this
};

struct EnsembleEstimate {
  std::vector<double> times;  // omega0 t, j * spacing for j = 1..n_out
  std::vector<double> fidelity, fidelity_se;
  // per-mode occupation <|v_p|^2> and complex second moment <v_p^2>
  std::vector<std::vector<double>> nbar, nbar_se;
  std::vector<std::vector<std::complex<double>>> s;
  std::vector<std::vector<double>> s_re_se, s_im_se;
  std::vector<double> max_abs_v;  // per mode, max over all steps and realizations
  std::size_t realizations = 0;
  SeedSpec seed;
};

// Runs R realizations (stream indices seed.stream .. seed.stream+R-1) and
// estimates fidelity and moments on the grid t_j = j * (t_max/n_out).
EnsembleEstimate run_ensemble(const EnsembleConfig& config, double t_max, std::size_t n_out,
                              std::size_t realizations, SeedSpec seed);

// The two named estimators are views of the same one-pass run; with equal
// seeds they are computed from identical realizations.
inline EnsembleEstimate ensemble_fidelity(const EnsembleConfig& config, double t_max,
                                          std::size_t n_out, std::size_t realizations,
                                          SeedSpec seed) {
  return run_ensemble(config, t_max, n_out, realizations, seed);
}
inline EnsembleEstimate ensemble_moments(const EnsembleConfig& config, double t_max,
                                         std::size_t n_out, std::size_t realizations,
                                         SeedSpec seed) {
  return run_ensemble(config, t_max, n_out, realizations, seed);
}

// Drive-strength mapping used throughout: omega_tilde^2 = (1 + W^2)/(W r).
double omega_tilde_squared(double omega0T, double omega0_tau1);

}  // namespace ionheat
