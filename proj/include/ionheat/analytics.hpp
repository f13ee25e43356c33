#pragma once

#include <complex>
#include <functional>

#include "ionheat/chain.hpp"
#include "ionheat/linalg.hpp"
#include "ionheat/trap.hpp"

// Closed forms and quadratures for ground-state heating under a stationary
// Gaussian drive. Unless a function takes a TrapConfig, its arguments are
// dimensionless: times are omega0*t, coherence is omega0*T, and heating
// times are omega0*tau1.
namespace ionheat {

// The two Gaussian ensemble moments of the coherent displacement amplitude:
// m = <|v|^2> and s = <v^2>. They satisfy m >= 0 and |s| <= m.
struct MomentPair {
  double m = 0.0;
  std::complex<double> s{0.0, 0.0};
};

// Normalized temporal autocorrelation of the drive; gamma(0) = 1, even,
// |gamma| <= 1. Validated by sampling at call sites that integrate it.
using KernelFn = std::function<double(double)>;

struct AsymptoteParams {
  double t0 = 0.0;    // time offset, t0 = T (1 - omega0^2 T^2)/(1 + omega0^2 T^2)
  double tau1 = 0.0;  // linear-growth time constant
};

struct LongTimeAsymptotes {
  double nbar = 0.0;
  double fidelity = 0.0;
  AsymptoteParams params;
};

// Ground-state fidelity of a Gaussian displacement ensemble:
// F = [(1 + m)^2 - |s|^2]^{-1/2}. Throws if the pair violates |s| <= m.
double fidelity_from_moments(const MomentPair& mp);

// Exponential-kernel closed form, gamma(tau) = exp(-|tau|/T), with
// tan(phi) = omega0*T:
//   m(t) = (T/tau1) [e^{-t/T} cos(omega0 t + 2 phi) - cos(2 phi) + t/T]
//   s(t) = -(T/tau1) e^{i omega0 t} [e^{-t/T} + sin(omega0 t)/(omega0 T) - cos(omega0 t)]
// s is the exact evaluation of the correlation integral below; it saturates
// |s| = m at t -> 0 and in the frozen-field limit omega0*T -> infinity.
MomentPair moments_exponential(double omega0T, double omega0_tau1, double omega0_t);

// General-kernel correlation integrals,
//   m = Omega^2 t^2     Int_0^1 (1-x) gamma(x t) cos(x omega0 t) dx
//   s = -(Omega^2 t/omega0) e^{i omega0 t} Int_0^1 gamma(x t) sin((1-x) omega0 t) dx,
// by adaptive quadrature to absolute tolerance 1e-10 on each moment, with
// pre-splits at the half-periods of the oscillating factor.
MomentPair moments_quadrature(const KernelFn& kernel, double omega, double omega0, double t);

// Quadratic short-time law: nbar(t) = (1 + omega0^2 T^2)/(2 T tau1) * t^2.
double short_time_nbar(double omega0T, double omega0_tau1, double omega0_t);

// Long-time laws: nbar ~ (t - t0)/tau1, F ~ tau1/t - tau1^2 (1 - t0/tau1)/t^2.
LongTimeAsymptotes long_time_asymptotes(double omega0T, double omega0_tau1, double omega0_t);

// Thermal-field heating estimate tau1 = 3 c eps0 omega0 M kB / (e^2 sigma Theta^3)
// and its inverse. See the README for the numerical caveat on the associated
// literature example.
double thermal_tau1(const TrapConfig& trap, double theta_kelvin);
double thermal_theta(const TrapConfig& trap, double tau1_seconds);

// N-ion heating time for a spatial coherence matrix gamma:
// tau_N = tau1 [ sum_p b^(p)T gamma b^(p) / sqrt(mu_p) ]^{-1}.
HeatingTime tau_n(const ChainModes& chain, const Matrix& gamma, double tau1);

// Incoherent limit, tau_N = tau1 [ sum_p mu_p^{-1/2} ]^{-1}.
double tau_n_incoherent(const ChainModes& chain, double tau1);

// Heating time of mode p (1-based):
// tau_{N,p} = sqrt(mu_p) tau1 / (b^(p)T gamma b^(p)); unbounded when the
// quadratic form vanishes (every p >= 2 in the coherent limit).
HeatingTime tau_n_mode(const ChainModes& chain, const Matrix& gamma, int p, double tau1);

}  // namespace ionheat
