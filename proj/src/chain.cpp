#include "ionheat/chain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ionheat {

namespace {

std::vector<double> force_residual(std::span<const double> u) {
  const std::size_t n = u.size();
  std::vector<double> f(n);
  for (std::size_t m = 0; m < n; ++m) {
    double s = u[m];
    for (std::size_t k = 0; k < n; ++k) {
      if (k == m) continue;
      const double d = u[m] - u[k];
      s -= (d > 0.0 ? 1.0 : -1.0) / (d * d);
    }
    f[m] = s;
  }
  return f;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

double equilibrium_residual(std::span<const double> positions) {
  return max_abs(force_residual(positions));
}

std::vector<double> equilibrium_positions(int n_ions, int max_iterations) {
  if (n_ions < 1 || n_ions > 50)
    throw std::invalid_argument("equilibrium_positions: ion count must be in [1, 50]");
  if (n_ions == 1) return {0.0};

  const std::size_t n = static_cast<std::size_t>(n_ions);
  std::vector<double> u(n);
  for (std::size_t m = 0; m < n; ++m)
    u[m] = (static_cast<double>(m + 1) - 0.5 * (n_ions + 1)) * 2.0 / std::sqrt(n_ions);

  const double target = 1e-13;
  bool converged = false;
  for (int it = 0; it < max_iterations; ++it) {
    std::vector<double> f = force_residual(u);
    double res = max_abs(f);
    if (res <= target) {
      converged = true;
      break;
    }
    // Newton step; the Jacobian of the force balance is the coupling matrix
    const Matrix jac = coupling_matrix(u);
    for (double& x : f) x = -x;
    const std::vector<double> step = solve_spd(jac, f);

    double alpha = 1.0;
    for (int halvings = 0; halvings < 40; ++halvings) {
      std::vector<double> trial(n);
      for (std::size_t m = 0; m < n; ++m) trial[m] = u[m] + alpha * step[m];
      if (std::is_sorted(trial.begin(), trial.end()) &&
          max_abs(force_residual(trial)) < res) {
        u = std::move(trial);
        break;
      }
      alpha *= 0.5;
    }
  }
  if (!converged && max_abs(force_residual(u)) > target)
    throw std::runtime_error("equilibrium_positions: no convergence for " +
                             std::to_string(n_ions) + " ions within iteration budget");

  // enforce the exact reflection symmetry and zero center of charge, then
  // polish once so the residual stays at solver precision
  std::vector<double> sym(n);
  for (std::size_t m = 0; m < n; ++m) sym[m] = 0.5 * (u[m] - u[n - 1 - m]);
  std::vector<double> f = force_residual(sym);
  const Matrix jac = coupling_matrix(sym);
  for (double& x : f) x = -x;
  const std::vector<double> step = solve_spd(jac, f);
  for (std::size_t m = 0; m < n; ++m) sym[m] += step[m];
  for (std::size_t m = 0; m < n / 2; ++m) {
    const double anti = 0.5 * (sym[m] - sym[n - 1 - m]);
    sym[m] = anti;
    sym[n - 1 - m] = -anti;
  }
  if (n % 2 == 1) sym[n / 2] = 0.0;

  if (max_abs(force_residual(sym)) > 1e-12)
    throw std::runtime_error("equilibrium_positions: residual polish failed for " +
                             std::to_string(n_ions) + " ions");
  return sym;
}

Matrix coupling_matrix(std::span<const double> positions) {
  const std::size_t n = positions.size();
  Matrix a(n, n);
  for (std::size_t m = 0; m < n; ++m) {
    double diag = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == m) continue;
      const double d = std::abs(positions[m] - positions[k]);
      if (d == 0.0)
        throw std::invalid_argument("coupling_matrix: duplicate ion positions");
      const double inv3 = 1.0 / (d * d * d);
      a(m, k) = -2.0 * inv3;
      diag += 2.0 * inv3;
    }
    a(m, m) = diag;
  }
  return a;
}

EigenSystem eigensystem(const Matrix& symmetric) { return jacobi_eigensystem(symmetric); }

ChainModes build_chain(int n_ions) {
  ChainModes chain;
  chain.n = n_ions;
  chain.positions = equilibrium_positions(n_ions);
  EigenSystem es = eigensystem(coupling_matrix(chain.positions));
  chain.eigenvalues = std::move(es.values);
  chain.eigenvectors = std::move(es.vectors);
  return chain;
}

}  // namespace ionheat
