#include "ionheat/mc.hpp"

#include <cmath>
#include <stdexcept>

namespace ionheat {

double omega_tilde_squared(double omega0T, double omega0_tau1) {
  if (!(omega0T > 0.0) || !(omega0_tau1 > 0.0))
    throw std::invalid_argument("omega0*T and omega0*tau1 must be positive");
  return (1.0 + omega0T * omega0T) / (omega0T * omega0_tau1);
}

namespace {

using cplx = std::complex<double>;

// Deterministic pairwise tree over per-block partial sums.
double reduce_pairwise(std::vector<double> v) {
  if (v.empty()) return 0.0;
  while (v.size() > 1) {
    std::size_t half = (v.size() + 1) / 2;
    for (std::size_t i = 0; i + half < v.size(); ++i) v[i] += v[i + half];
    v.resize(half);
  }
  return v[0];
}

constexpr std::size_t kBlockSize = 256;

struct Accumulator {
  explicit Accumulator(std::size_t n_blocks) : partial(n_blocks, 0.0) {}
  std::vector<double> partial;
  void add(std::size_t block, double x) { partial[block] += x; }
  double total() const { return reduce_pairwise(partial); }
};

double standard_error(double sum, double sum_sq, std::size_t r) {
  const double mean = sum / static_cast<double>(r);
  double var = (sum_sq - sum * mean) / static_cast<double>(r - 1);
  if (var < 0.0) var = 0.0;
  return std::sqrt(var / static_cast<double>(r));
}

}  // namespace

RealizationAmplitudes propagate_chain(const NoisePath& path, const ChainModes& chain,
                                      double omega_tilde) {
  const std::size_t n = static_cast<std::size_t>(chain.n);
  if (path.samples.rows() != n)
    throw std::invalid_argument("propagate_chain: noise grid mismatch (rows != ion count)");
  if (path.samples.cols() < 1 || !(path.dt > 0.0))
    throw std::invalid_argument("propagate_chain: empty or invalid noise grid");

  const std::size_t n_times = path.samples.cols();
  const double dt = path.dt;
  const cplx pref = cplx(0.0, omega_tilde / std::sqrt(2.0));

  RealizationAmplitudes out;
  out.times.resize(n_times);
  for (std::size_t k = 0; k < n_times; ++k) out.times[k] = dt * static_cast<double>(k);
  out.v.assign(n, std::vector<cplx>(n_times));

  for (std::size_t p = 0; p < n; ++p) {
    const double mu = chain.eigenvalues[p];
    const double freq = std::sqrt(mu);
    const double scale = 1.0 / std::sqrt(freq);  // mu^{-1/4}
    const auto b = chain.eigenvectors.row(p);

    cplx acc(0.0, 0.0);
    auto integrand = [&](std::size_t k) {
      double field = 0.0;
      for (std::size_t i = 0; i < n; ++i) field += path.samples(i, k) * b[i];
      return field * std::polar(scale, freq * out.times[k]);
    };
    cplx prev = integrand(0);
    out.v[p][0] = cplx(0.0, 0.0);
    for (std::size_t k = 1; k < n_times; ++k) {
      const cplx cur = integrand(k);
      acc += (0.5 * dt) * (prev + cur);
      prev = cur;
      out.v[p][k] = pref * acc;
    }
  }
  return out;
}

RealizationAmplitudes propagate_single(const NoisePath& path, double omega_tilde) {
  ChainModes single;
  single.n = 1;
  single.positions = {0.0};
  single.eigenvalues = {1.0};
  single.eigenvectors = Matrix(1, 1, 1.0);
  return propagate_chain(path, single, omega_tilde);
}

EnsembleEstimate run_ensemble(const EnsembleConfig& config, double t_max, std::size_t n_out,
                              std::size_t realizations, SeedSpec seed) {
  if (realizations < 2) throw std::invalid_argument("run_ensemble: need at least 2 realizations");
  if (!(t_max > 0.0) || n_out < 1) throw std::invalid_argument("run_ensemble: bad output grid");
  const std::size_t n_modes = static_cast<std::size_t>(config.chain.n);

  const double spacing = t_max / static_cast<double>(n_out);
  const std::size_t substeps =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(spacing / config.dt_target - 1e-12)));
  const double dt = spacing / static_cast<double>(substeps);
  const std::size_t n_steps = substeps * n_out;  // samples = n_steps + 1

  const double om_tilde = std::sqrt(omega_tilde_squared(config.omega0T, config.omega0_tau1));
  const std::size_t n_blocks = (realizations + kBlockSize - 1) / kBlockSize;

  EnsembleEstimate est;
  est.times.resize(n_out);
  for (std::size_t j = 0; j < n_out; ++j) est.times[j] = spacing * static_cast<double>(j + 1);
  est.realizations = realizations;
  est.seed = seed;
  est.max_abs_v.assign(n_modes, 0.0);

  std::vector<Accumulator> f_sum(n_out, Accumulator(n_blocks));
  std::vector<Accumulator> f_sq(n_out, Accumulator(n_blocks));
  auto grid2 = [&](std::size_t p, std::size_t j) { return p * n_out + j; };
  std::vector<Accumulator> n_sum(n_modes * n_out, Accumulator(n_blocks));
  std::vector<Accumulator> n_sq(n_modes * n_out, Accumulator(n_blocks));
  std::vector<Accumulator> sre_sum(n_modes * n_out, Accumulator(n_blocks));
  std::vector<Accumulator> sre_sq(n_modes * n_out, Accumulator(n_blocks));
  std::vector<Accumulator> sim_sum(n_modes * n_out, Accumulator(n_blocks));
  std::vector<Accumulator> sim_sq(n_modes * n_out, Accumulator(n_blocks));

  for (std::size_t rlz = 0; rlz < realizations; ++rlz) {
    const std::size_t block = rlz / kBlockSize;
    const SeedSpec path_seed{seed.seed, seed.stream + rlz};
    const NoisePath path =
        correlated_paths(config.chain, config.gamma, config.omega0T, dt, n_steps + 1, path_seed);
    const RealizationAmplitudes amp = propagate_chain(path, config.chain, om_tilde);

    for (std::size_t p = 0; p < n_modes; ++p)
      for (const cplx& v : amp.v[p])
        est.max_abs_v[p] = std::max(est.max_abs_v[p], std::abs(v));

    for (std::size_t j = 0; j < n_out; ++j) {
      const std::size_t k = (j + 1) * substeps;
      double total_occ = 0.0;
      for (std::size_t p = 0; p < n_modes; ++p) {
        const cplx v = amp.v[p][k];
        const double occ = std::norm(v);
        total_occ += occ;
        n_sum[grid2(p, j)].add(block, occ);
        n_sq[grid2(p, j)].add(block, occ * occ);
        const cplx v2 = v * v;
        sre_sum[grid2(p, j)].add(block, v2.real());
        sre_sq[grid2(p, j)].add(block, v2.real() * v2.real());
        sim_sum[grid2(p, j)].add(block, v2.imag());
        sim_sq[grid2(p, j)].add(block, v2.imag() * v2.imag());
      }
      const double fid = std::exp(-total_occ);
      f_sum[j].add(block, fid);
      f_sq[j].add(block, fid * fid);
    }
  }

  const double r = static_cast<double>(realizations);
  est.fidelity.resize(n_out);
  est.fidelity_se.resize(n_out);
  est.nbar.assign(n_modes, std::vector<double>(n_out));
  est.nbar_se.assign(n_modes, std::vector<double>(n_out));
  est.s.assign(n_modes, std::vector<cplx>(n_out));
  est.s_re_se.assign(n_modes, std::vector<double>(n_out));
  est.s_im_se.assign(n_modes, std::vector<double>(n_out));

  for (std::size_t j = 0; j < n_out; ++j) {
    const double fs = f_sum[j].total();
    est.fidelity[j] = fs / r;
    est.fidelity_se[j] = standard_error(fs, f_sq[j].total(), realizations);
    for (std::size_t p = 0; p < n_modes; ++p) {
      const double ns = n_sum[grid2(p, j)].total();
      est.nbar[p][j] = ns / r;
      est.nbar_se[p][j] = standard_error(ns, n_sq[grid2(p, j)].total(), realizations);
      const double sre = sre_sum[grid2(p, j)].total();
      const double sim = sim_sum[grid2(p, j)].total();
      est.s[p][j] = cplx(sre / r, sim / r);
      est.s_re_se[p][j] = standard_error(sre, sre_sq[grid2(p, j)].total(), realizations);
      est.s_im_se[p][j] = standard_error(sim, sim_sq[grid2(p, j)].total(), realizations);
    }
  }
  return est;
}

}  // namespace ionheat
