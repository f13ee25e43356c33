#include "ionheat/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace ionheat {

namespace {

void require_args(double coherence_ratio, double dt, std::size_t n_samples) {
  if (!(coherence_ratio > 0.0)) throw std::invalid_argument("coherence ratio must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (n_samples < 1) throw std::invalid_argument("need at least one sample");
}

bool is_all_ones(const Matrix& gamma) {
  for (double v : gamma.data())
    if (v != 1.0) return false;
  return true;
}

}  // namespace

NoisePath ou_path(double coherence_ratio, double dt, std::size_t n_samples, SeedSpec seed) {
  require_args(coherence_ratio, dt, n_samples);
  const double a = std::exp(-dt / coherence_ratio);
  const double b = std::sqrt(1.0 - a * a);
  GaussianStream g(seed);

  NoisePath path;
  path.dt = dt;
  path.samples = Matrix(1, n_samples);
  double x = g.next();
  path.samples(0, 0) = x;
  for (std::size_t k = 1; k < n_samples; ++k) {
    x = a * x + b * g.next();
    path.samples(0, k) = x;
  }
  return path;
}

Matrix gamma_matrix(const ChainModes& chain, const TrapConfig& trap,
                    const SpatialCoherenceModel& spatial) {
  if (spatial.kind == SpatialCoherenceModel::Kind::ExponentialDistance)
    return gamma_matrix_scaled(chain, spatial, spatial.coherence_length / length_scale(trap));
  return gamma_matrix_scaled(chain, spatial, 0.0);
}

Matrix gamma_matrix_scaled(const ChainModes& chain, const SpatialCoherenceModel& spatial,
                           double coherence_length_over_scale) {
  const std::size_t n = static_cast<std::size_t>(chain.n);
  switch (spatial.kind) {
    case SpatialCoherenceModel::Kind::Coherent:
      return Matrix(n, n, 1.0);
    case SpatialCoherenceModel::Kind::Incoherent:
      return Matrix::identity(n);
    case SpatialCoherenceModel::Kind::ExponentialDistance: {
      if (!(coherence_length_over_scale > 0.0))
        throw std::invalid_argument("coherence length must be positive");
      Matrix gamma(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          gamma(i, j) = std::exp(-std::abs(chain.positions[i] - chain.positions[j]) /
                                 coherence_length_over_scale);
      return gamma;
    }
  }
  throw std::logic_error("unknown spatial coherence model");
}

NoisePath correlated_paths(const ChainModes& chain, const Matrix& gamma, double coherence_ratio,
                           double dt, std::size_t n_samples, SeedSpec seed) {
  require_args(coherence_ratio, dt, n_samples);
  const std::size_t n = static_cast<std::size_t>(chain.n);
  if (gamma.rows() != n || gamma.cols() != n)
    throw std::invalid_argument("correlated_paths: coherence matrix size mismatch");

  NoisePath path;
  path.dt = dt;
  path.samples = Matrix(n, n_samples);

  if (is_all_ones(gamma)) {
    // rank one: a single process shared by every ion
    const NoisePath shared = ou_path(coherence_ratio, dt, n_samples, seed);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n_samples; ++k)
        path.samples(i, k) = shared.samples(0, k);
    return path;
  }

  Matrix l;
  try {
    l = cholesky_lower(gamma, 1e-12);
  } catch (const std::runtime_error&) {
    const EigenSystem es = jacobi_eigensystem(gamma);
    throw std::runtime_error(
        "correlated_paths: coherence matrix is not positive semidefinite "
        "(smallest eigenvalue " +
        std::to_string(es.values.front()) + ")");
  }

  const double a = std::exp(-dt / coherence_ratio);
  const double b = std::sqrt(1.0 - a * a);
  GaussianStream g(seed);
  std::vector<double> shock(n), mixed(n);

  auto draw_mixed = [&]() {
    for (std::size_t i = 0; i < n; ++i) shock[i] = g.next();
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j <= i; ++j) s += l(i, j) * shock[j];
      mixed[i] = s;
    }
  };

  draw_mixed();
  for (std::size_t i = 0; i < n; ++i) path.samples(i, 0) = mixed[i];
  for (std::size_t k = 1; k < n_samples; ++k) {
    draw_mixed();
    for (std::size_t i = 0; i < n; ++i)
      path.samples(i, k) = a * path.samples(i, k - 1) + b * mixed[i];
  }
  return path;
}

}  // namespace ionheat
