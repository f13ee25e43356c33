#pragma once

#include <span>
#include <vector>

#include "ionheat/linalg.hpp"

// Equilibrium structure and axial normal modes of a linear Coulomb chain in
// a harmonic well. Positions are dimensionless (units of the Coulomb length
// scale); mode frequencies are sqrt(mu_p) * omega0.
namespace ionheat {

struct ChainModes {
  int n = 0;
  std::vector<double> positions;    // ascending, centered (sum = 0)
  std::vector<double> eigenvalues;  // ascending, mu_1 = 1 (center of mass)
  Matrix eigenvectors;              // row p = orthonormal b^(p), sign-fixed
};

// Force balance u_m = sum_{n<m} 1/(u_m-u_n)^2 - sum_{n>m} 1/(u_m-u_n)^2,
// solved by damped Newton from the spread-out initial guess
// u_m = (m - (N+1)/2) * 2/sqrt(N). Converges for every N <= 50.
std::vector<double> equilibrium_positions(int n_ions, int max_iterations = 200);

// A_mm = 1 + 2 sum_{p!=m} 1/|u_m-u_p|^3, A_mn = -2/|u_m-u_n|^3. Rows sum to
// one, which pins the center-of-mass eigenpair (1, (1,..,1)/sqrt(N)) exactly.
Matrix coupling_matrix(std::span<const double> positions);

// Deterministic symmetric eigensolve (cyclic Jacobi), ascending eigenvalues,
// largest-magnitude entry of each eigenvector positive.
EigenSystem eigensystem(const Matrix& symmetric);

ChainModes build_chain(int n_ions);

// Maximum force-balance residual of a position set; exposed for tests.
double equilibrium_residual(std::span<const double> positions);

}  // namespace ionheat
