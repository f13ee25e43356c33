#include "ionheat/analytics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ionheat/constants.hpp"
#include "ionheat/quadrature.hpp"

namespace ionheat {

namespace {

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw std::invalid_argument(std::string(name) + " must be positive and finite");
}

void validate_kernel(const KernelFn& kernel, double t) {
  if (std::abs(kernel(0.0) - 1.0) > 1e-12)
    throw std::invalid_argument("correlation kernel must satisfy gamma(0) = 1");
  const int samples = 16;
  for (int i = 1; i <= samples; ++i) {
    const double tau = t * static_cast<double>(i) / samples;
    const double g = kernel(tau);
    if (!(std::abs(g) <= 1.0 + 1e-12))
      throw std::invalid_argument("correlation kernel must satisfy |gamma| <= 1");
    if (std::abs(g - kernel(-tau)) > 1e-12)
      throw std::invalid_argument("correlation kernel must be even");
  }
}

double mode_quadratic_form(const ChainModes& chain, const Matrix& gamma, int p) {
  const std::size_t n = static_cast<std::size_t>(chain.n);
  const auto b = chain.eigenvectors.row(static_cast<std::size_t>(p - 1));
  double s = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += gamma(m, k) * b[k];
    s += b[m] * acc;
  }
  return s;
}

void validate_gamma(const ChainModes& chain, const Matrix& gamma) {
  const std::size_t n = static_cast<std::size_t>(chain.n);
  if (gamma.rows() != n || gamma.cols() != n)
    throw std::invalid_argument("coherence matrix size does not match chain");
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(gamma(i, i) - 1.0) > 1e-12)
      throw std::invalid_argument("coherence matrix must have unit diagonal");
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(gamma(i, j) - gamma(j, i)) > 1e-12)
        throw std::invalid_argument("coherence matrix must be symmetric");
  }
}

}  // namespace

double fidelity_from_moments(const MomentPair& mp) {
  if (!(mp.m >= 0.0) || !std::isfinite(mp.m))
    throw std::invalid_argument("moment <|v|^2> must be >= 0 and finite");
  const double smag = std::abs(mp.s);
  if (smag > mp.m * (1.0 + 1e-9) + 1e-15)
    throw std::invalid_argument("ensemble inconsistency: |<v^2>| = " + std::to_string(smag) +
                                " exceeds <|v|^2> = " + std::to_string(mp.m));
  const double onem = 1.0 + mp.m;
  const double det = onem * onem - smag * smag;
  return 1.0 / std::sqrt(det);
}

MomentPair moments_exponential(double omega0T, double omega0_tau1, double omega0_t) {
  require_positive(omega0T, "omega0*T");
  require_positive(omega0_tau1, "omega0*tau1");
  if (!(omega0_t >= 0.0)) throw std::invalid_argument("omega0*t must be >= 0");

  const double w = omega0T, r = omega0_tau1, th = omega0_t;
  const double phi = std::atan(w);
  const double decay = std::exp(-th / w);

  MomentPair mp;
  mp.m = (w / r) * (decay * std::cos(th + 2.0 * phi) - std::cos(2.0 * phi) + th / w);
  if (mp.m < 0.0) mp.m = 0.0;  // clip the ~1e-18 cancellation residue near t = 0
  const double bracket = decay + std::sin(th) / w - std::cos(th);
  mp.s = -(w / r) * std::polar(1.0, th) * bracket;
  return mp;
}

MomentPair moments_quadrature(const KernelFn& kernel, double omega, double omega0, double t) {
  if (!(omega >= 0.0)) throw std::invalid_argument("omega must be >= 0");
  require_positive(omega0, "omega0");
  if (!(t >= 0.0)) throw std::invalid_argument("t must be >= 0");
  if (t == 0.0 || omega == 0.0) return {};
  validate_kernel(kernel, t);

  const double theta = omega0 * t;
  // half-period boundaries of the oscillating factors over x in [0, 1]
  std::vector<double> splits;
  const double step = constants::pi / theta;
  for (double x = step; x < 1.0; x += step) splits.push_back(x);

  const double m_prefactor = omega * omega * t * t;
  const double s_prefactor = omega * omega * t / omega0;
  constexpr double kMomentTol = 1e-10;
  constexpr std::size_t kBudget = 10000;

  const auto m_int = integrate_adaptive(
      [&](double x) { return (1.0 - x) * kernel(x * t) * std::cos(x * theta); }, 0.0, 1.0,
      kMomentTol / std::max(1.0, m_prefactor), kBudget, splits);
  const auto s_int = integrate_adaptive(
      [&](double x) { return kernel(x * t) * std::sin((1.0 - x) * theta); }, 0.0, 1.0,
      kMomentTol / std::max(1.0, s_prefactor), kBudget, splits);

  MomentPair mp;
  mp.m = m_prefactor * m_int.value;
  if (mp.m < 0.0) mp.m = 0.0;
  mp.s = -s_prefactor * std::polar(1.0, theta) * s_int.value;
  return mp;
}

double short_time_nbar(double omega0T, double omega0_tau1, double omega0_t) {
  require_positive(omega0T, "omega0*T");
  require_positive(omega0_tau1, "omega0*tau1");
  if (!(omega0_t >= 0.0)) throw std::invalid_argument("omega0*t must be >= 0");
  const double w = omega0T;
  return (1.0 + w * w) / (2.0 * w * omega0_tau1) * omega0_t * omega0_t;
}

LongTimeAsymptotes long_time_asymptotes(double omega0T, double omega0_tau1, double omega0_t) {
  require_positive(omega0T, "omega0*T");
  require_positive(omega0_tau1, "omega0*tau1");
  require_positive(omega0_t, "omega0*t");
  const double w = omega0T, r = omega0_tau1, th = omega0_t;
  LongTimeAsymptotes out;
  out.params.t0 = w * (1.0 - w * w) / (1.0 + w * w);
  out.params.tau1 = r;
  out.nbar = (th - out.params.t0) / r;
  out.fidelity = r / th - r * r * (1.0 - out.params.t0 / r) / (th * th);
  return out;
}

double thermal_tau1(const TrapConfig& trap, double theta_kelvin) {
  require_positive(theta_kelvin, "temperature");
  using namespace constants;
  return 3.0 * speed_of_light * vacuum_permittivity * trap.omega0 * trap.mass * boltzmann /
         (trap.charge * trap.charge * stefan_boltzmann *
          theta_kelvin * theta_kelvin * theta_kelvin);
}

double thermal_theta(const TrapConfig& trap, double tau1_seconds) {
  require_positive(tau1_seconds, "tau1");
  using namespace constants;
  const double cubed = 3.0 * speed_of_light * vacuum_permittivity * trap.omega0 * trap.mass *
                       boltzmann /
                       (trap.charge * trap.charge * stefan_boltzmann * tau1_seconds);
  return std::cbrt(cubed);
}

HeatingTime tau_n(const ChainModes& chain, const Matrix& gamma, double tau1) {
  require_positive(tau1, "tau1");
  validate_gamma(chain, gamma);
  double bracket = 0.0;
  for (int p = 1; p <= chain.n; ++p)
    bracket += mode_quadratic_form(chain, gamma, p) /
               std::sqrt(chain.eigenvalues[static_cast<std::size_t>(p - 1)]);
  if (bracket <= 1e-14 * chain.n) return HeatingTime::unbounded();
  return HeatingTime::finite(tau1 / bracket);
}

double tau_n_incoherent(const ChainModes& chain, double tau1) {
  require_positive(tau1, "tau1");
  double sum = 0.0;
  for (double mu : chain.eigenvalues) sum += 1.0 / std::sqrt(mu);
  return tau1 / sum;
}

HeatingTime tau_n_mode(const ChainModes& chain, const Matrix& gamma, int p, double tau1) {
  require_positive(tau1, "tau1");
  validate_gamma(chain, gamma);
  if (p < 1 || p > chain.n) throw std::invalid_argument("mode index out of range");
  const double denom = mode_quadratic_form(chain, gamma, p);
  if (denom <= 1e-14 * chain.n) return HeatingTime::unbounded();
  return HeatingTime::finite(
      std::sqrt(chain.eigenvalues[static_cast<std::size_t>(p - 1)]) * tau1 / denom);
}

}  // namespace ionheat
