#include "ionheat/validate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "ionheat/analytics.hpp"
#include "ionheat/mc.hpp"
#include "ionheat/noise.hpp"

namespace ionheat {

namespace {

constexpr double kGridTMax = 20.0;
constexpr std::size_t kGridPoints = 40;  // omega0 t = 0.5, 1.0, ..., 20
constexpr double kOmega0T = 1.0;
constexpr double kOmega0Tau1 = 8.5;

void add_check(SuiteResult& out, std::string name, double measured, double bound,
               std::string comparator) {
  const bool pass = comparator == "<=" ? measured <= bound : measured >= bound;
  out.checks.push_back({std::move(name), measured, bound, std::move(comparator), pass});
}

EnsembleConfig single_ion_config() {
  EnsembleConfig cfg;
  cfg.chain = build_chain(1);
  cfg.omega0T = kOmega0T;
  cfg.omega0_tau1 = kOmega0Tau1;
  cfg.gamma = Matrix(1, 1, 1.0);
  return cfg;
}

// delta-method standard error of F(m, s) from the moment standard errors
double fidelity_from_moments_se(const MomentPair& mp, double se_m, double se_re, double se_im) {
  const double f = fidelity_from_moments(mp);
  const double f3 = f * f * f;
  const double dm = f3 * (1.0 + mp.m) * se_m;
  const double dre = f3 * mp.s.real() * se_re;
  const double dim = f3 * mp.s.imag() * se_im;
  return std::sqrt(dm * dm + dre * dre + dim * dim);
}

SuiteResult gaussian_identity(std::size_t realizations, std::uint64_t seed) {
  SuiteResult out{"gaussian-identity", seed, realizations, {}, false};
  const EnsembleEstimate est =
      run_ensemble(single_ion_config(), kGridTMax, kGridPoints, realizations, {seed, 0});

  double max_z = 0.0;
  std::size_t within_two = 0;
  for (std::size_t j = 0; j < est.times.size(); ++j) {
    const MomentPair mp{est.nbar[0][j], est.s[0][j]};
    const double f_from_moments = fidelity_from_moments(mp);
    const double se = std::sqrt(
        est.fidelity_se[j] * est.fidelity_se[j] +
        std::pow(fidelity_from_moments_se(mp, est.nbar_se[0][j], est.s_re_se[0][j],
                                          est.s_im_se[0][j]),
                 2));
    const double z = std::abs(est.fidelity[j] - f_from_moments) / se;
    max_z = std::max(max_z, z);
    if (z <= 2.0) ++within_two;
  }
  add_check(out, "direct fidelity vs moment fidelity, max |z| over grid", max_z, 3.0, "<=");
  add_check(out, "fraction of grid points within 2 combined standard errors",
            static_cast<double>(within_two) / static_cast<double>(est.times.size()), 0.95, ">=");
  out.pass = std::all_of(out.checks.begin(), out.checks.end(),
                         [](const CheckResult& c) { return c.pass; });
  return out;
}

SuiteResult closed_form(std::size_t realizations, std::uint64_t seed) {
  SuiteResult out{"closed-form", seed, realizations, {}, false};
  const EnsembleEstimate est =
      run_ensemble(single_ion_config(), kGridTMax, kGridPoints, realizations, {seed, 0});

  double max_zm = 0.0, max_zs = 0.0;
  for (std::size_t j = 0; j < est.times.size(); ++j) {
    const MomentPair cl = moments_exponential(kOmega0T, kOmega0Tau1, est.times[j]);
    const double zm = std::abs(est.nbar[0][j] - cl.m) / est.nbar_se[0][j];
    const double se_s = std::sqrt(est.s_re_se[0][j] * est.s_re_se[0][j] +
                                  est.s_im_se[0][j] * est.s_im_se[0][j]);
    const double zs = std::abs(est.s[0][j] - cl.s) / se_s;
    max_zm = std::max(max_zm, zm);
    max_zs = std::max(max_zs, zs);
  }
  add_check(out, "occupation vs exponential closed form, max |z| over grid", max_zm, 3.0, "<=");
  add_check(out, "second moment vs exponential closed form, max |z| over grid", max_zs, 3.0,
            "<=");
  out.pass = std::all_of(out.checks.begin(), out.checks.end(),
                         [](const CheckResult& c) { return c.pass; });
  return out;
}

SuiteResult quadrature_crosscheck(std::uint64_t seed) {
  SuiteResult out{"quadrature-crosscheck", seed, 0, {}, false};
  const double w = kOmega0T, r = kOmega0Tau1;
  const double om_tilde = std::sqrt(omega_tilde_squared(w, r));
  const KernelFn kernel = [w](double tau) { return std::exp(-std::abs(tau) / w); };

  double max_dm = 0.0, max_ds = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double th = 30.0 * static_cast<double>(i) / 49.0;
    const MomentPair quad = moments_quadrature(kernel, om_tilde, 1.0, th);
    const MomentPair cl = moments_exponential(w, r, th);
    max_dm = std::max(max_dm, std::abs(quad.m - cl.m));
    max_ds = std::max(max_ds, std::abs(quad.s - cl.s));
  }
  add_check(out, "occupation, max |quadrature - closed form| over 50-point grid", max_dm, 1e-8,
            "<=");
  add_check(out, "second moment, max |quadrature - closed form| over 50-point grid", max_ds,
            1e-8, "<=");
  out.pass = std::all_of(out.checks.begin(), out.checks.end(),
                         [](const CheckResult& c) { return c.pass; });
  return out;
}

SuiteResult mode_selectivity(std::size_t realizations, std::uint64_t seed, int n_ions) {
  SuiteResult out{"mode-selectivity", seed, realizations, {}, false};
  EnsembleConfig cfg;
  cfg.chain = build_chain(n_ions);
  cfg.omega0T = kOmega0T;
  cfg.omega0_tau1 = kOmega0Tau1;
  cfg.gamma = Matrix(static_cast<std::size_t>(n_ions), static_cast<std::size_t>(n_ions), 1.0);

  const EnsembleEstimate est = run_ensemble(cfg, kGridTMax, 20, realizations, {seed, 0});

  double max_higher_mode = 0.0;
  for (std::size_t p = 1; p < est.max_abs_v.size(); ++p)
    max_higher_mode = std::max(max_higher_mode, est.max_abs_v[p]);
  add_check(out, "max |v_p| over modes p >= 2, all realizations and times", max_higher_mode,
            1e-12, "<=");

  // under fully coherent noise the center-of-mass mode heats exactly like a
  // single ion with tau1 -> tau1/N
  double max_z = 0.0;
  for (std::size_t j = 0; j < est.times.size(); ++j) {
    const double expect =
        moments_exponential(kOmega0T, kOmega0Tau1 / n_ions, est.times[j]).m;
    const double z = std::abs(est.nbar[0][j] - expect) / est.nbar_se[0][j];
    max_z = std::max(max_z, z);
  }
  add_check(out, "center-of-mass occupation vs single-ion closed form at tau1/N, max |z|",
            max_z, 3.0, "<=");
  out.pass = std::all_of(out.checks.begin(), out.checks.end(),
                         [](const CheckResult& c) { return c.pass; });
  return out;
}

SuiteResult noise_stats(std::uint64_t seed) {
  SuiteResult out{"noise-stats", seed, 0, {}, false};
  constexpr std::size_t n = 1000000;

  // variance on a weakly correlated series, so the 1% band is many sigma wide
  {
    const NoisePath p = ou_path(0.1, 0.5, n, {seed, 0});
    double sum = 0.0, sq = 0.0;
    for (double x : p.samples.row(0)) {
      sum += x;
      sq += x * x;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    add_check(out, "sample variance error |var - 1| (dt=0.5, omega0T=0.1)", std::abs(var - 1.0),
              0.01, "<=");
  }

  // lag-1 autocorrelation against the exact update coefficient
  {
    const double w = 1.0, dt = 0.05;
    const NoisePath p = ou_path(w, dt, n, {seed, 1});
    const auto row = p.samples.row(0);
    double sum = 0.0;
    for (double x : row) sum += x;
    const double mean = sum / n;
    double c0 = 0.0, c1 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      c0 += (row[k] - mean) * (row[k] - mean);
      if (k + 1 < n) c1 += (row[k] - mean) * (row[k + 1] - mean);
    }
    const double rho = c1 / c0;
    const double a = std::exp(-dt / w);
    const double se = std::sqrt((1.0 - a * a) / static_cast<double>(n));
    add_check(out, "lag-1 autocorrelation |rho - exp(-dt/T)| / se (dt=0.05, omega0T=1)",
              std::abs(rho - a) / se, 3.0, "<=");
  }

  // equal-time cross-correlation of incoherent rows
  {
    const ChainModes chain = build_chain(2);
    const NoisePath p = correlated_paths(chain, Matrix::identity(2), 0.1, 0.5, n, {seed, 2});
    double s1 = 0.0, s2 = 0.0, s11 = 0.0, s22 = 0.0, s12 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double x = p.samples(0, k), y = p.samples(1, k);
      s1 += x;
      s2 += y;
      s11 += x * x;
      s22 += y * y;
      s12 += x * y;
    }
    const double m1 = s1 / n, m2 = s2 / n;
    const double rho =
        (s12 / n - m1 * m2) / std::sqrt((s11 / n - m1 * m1) * (s22 / n - m2 * m2));
    const double se = 1.0 / std::sqrt(static_cast<double>(n));
    add_check(out, "incoherent cross-correlation |rho| / se", std::abs(rho) / se, 3.0, "<=");
  }

  out.pass = std::all_of(out.checks.begin(), out.checks.end(),
                         [](const CheckResult& c) { return c.pass; });
  return out;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"gaussian-identity", "closed-form", "quadrature-crosscheck", "mode-selectivity",
          "noise-stats"};
}

bool is_suite_name(const std::string& name) {
  const auto names = suite_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

SuiteResult run_suite(const std::string& name, std::size_t realizations, std::uint64_t seed,
                      int mode_selectivity_ions) {
  if (name == "gaussian-identity") return gaussian_identity(realizations, seed);
  if (name == "closed-form") return closed_form(realizations, seed);
  if (name == "quadrature-crosscheck") return quadrature_crosscheck(seed);
  if (name == "mode-selectivity")
    return mode_selectivity(realizations, seed, mode_selectivity_ions);
  if (name == "noise-stats") return noise_stats(seed);
  throw std::invalid_argument("unknown validation suite: " + name);
}

}  // namespace ionheat
