#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "ionheat/chain.hpp"

using namespace ionheat;

TEST_CASE("jacobi eigensystem basics") {
  const EigenSystem id = jacobi_eigensystem(Matrix::identity(4));
  for (int p = 0; p < 4; ++p) {
    CHECK(id.values[p] == doctest::Approx(1.0).epsilon(1e-14));
    for (int k = 0; k < 4; ++k)
      CHECK(id.vectors(p, k) == doctest::Approx(p == k ? 1.0 : 0.0).epsilon(1e-14));
  }

  Matrix bad(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(jacobi_eigensystem(bad), std::invalid_argument);
}

TEST_CASE("single ion") {
  CHECK(equilibrium_positions(1) == std::vector<double>{0.0});
  const Matrix a = coupling_matrix(std::vector<double>{0.0});
  CHECK(a(0, 0) == 1.0);
  const ChainModes chain = build_chain(1);
  CHECK(chain.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(chain.eigenvectors(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("two ions: algebraic solution") {
  // force balance u = 1/(2u)^2 gives u = (1/4)^(1/3)
  const double u2 = std::cbrt(0.25);
  const auto u = equilibrium_positions(2);
  CHECK(u[0] == doctest::Approx(-u2).epsilon(1e-12));
  CHECK(u[1] == doctest::Approx(u2).epsilon(1e-12));

  // separation d = 2 u2 has d^3 = 2, so the matrix is [[2,-1],[-1,2]]
  const Matrix a = coupling_matrix(u);
  CHECK(a(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(a(0, 1) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(a(1, 0) == doctest::Approx(a(0, 1)).epsilon(1e-14));

  const ChainModes chain = build_chain(2);
  CHECK(chain.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(chain.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-12));
  const double isq2 = 1.0 / std::sqrt(2.0);
  CHECK(chain.eigenvectors(0, 0) == doctest::Approx(isq2).epsilon(1e-12));
  CHECK(chain.eigenvectors(0, 1) == doctest::Approx(isq2).epsilon(1e-12));
  CHECK(chain.eigenvectors(1, 0) == doctest::Approx(isq2).epsilon(1e-12));
  CHECK(chain.eigenvectors(1, 1) == doctest::Approx(-isq2).epsilon(1e-12));
}

TEST_CASE("three ions") {
  // outer ions at (5/4)^(1/3)
  const auto u = equilibrium_positions(3);
  const double outer = std::cbrt(1.25);
  CHECK(u[0] == doctest::Approx(-outer).epsilon(1e-12));
  CHECK(std::abs(u[1]) < 1e-13);
  CHECK(u[2] == doctest::Approx(outer).epsilon(1e-12));

  const ChainModes chain = build_chain(3);
  CHECK(chain.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(chain.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(chain.eigenvalues[2] == doctest::Approx(5.8).epsilon(1e-8));
}

TEST_CASE("ten ions: frozen third eigenvalue and breathing mode") {
  const ChainModes chain = build_chain(10);
  CHECK(chain.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(chain.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-8));
  // frozen from an independent dense eigensolve
  CHECK(chain.eigenvalues[2] == doctest::Approx(5.841126936).epsilon(1e-6));
  for (std::size_t p = 1; p < 10; ++p)
    CHECK(chain.eigenvalues[p] > chain.eigenvalues[p - 1]);
}

TEST_CASE("chain invariants across sizes") {
  for (int n = 1; n <= 20; ++n) {
    const ChainModes chain = build_chain(n);
    CHECK(equilibrium_residual(chain.positions) <= 1e-12);

    double center = 0.0, antisym = 0.0;
    for (int m = 0; m < n; ++m) {
      center += chain.positions[static_cast<std::size_t>(m)];
      antisym = std::max(antisym,
                         std::abs(chain.positions[static_cast<std::size_t>(m)] +
                                  chain.positions[static_cast<std::size_t>(n - 1 - m)]));
    }
    CHECK(std::abs(center) <= 1e-12);
    CHECK(antisym <= 1e-12);

    // rows of the coupling matrix sum to one (Coulomb terms cancel pairwise)
    const Matrix a = coupling_matrix(chain.positions);
    for (int m = 0; m < n; ++m) {
      double row = 0.0;
      for (int k = 0; k < n; ++k) row += a(m, k);
      CHECK(row == doctest::Approx(1.0).epsilon(1e-12));
    }

    CHECK(std::abs(chain.eigenvalues[0] - 1.0) <= 1e-10);
    if (n >= 2) CHECK(std::abs(chain.eigenvalues[1] - 3.0) <= 1e-8);
    for (double mu : chain.eigenvalues) CHECK(mu >= 1.0 - 1e-10);

    // orthonormality and center-of-mass structure
    const double isqn = 1.0 / std::sqrt(static_cast<double>(n));
    for (int p = 0; p < n; ++p) {
      for (int q = p; q < n; ++q) {
        double dot = 0.0;
        for (int k = 0; k < n; ++k) dot += chain.eigenvectors(p, k) * chain.eigenvectors(q, k);
        CHECK(std::abs(dot - (p == q ? 1.0 : 0.0)) <= 1e-10);
      }
      double sum = 0.0, parity = 0.0;
      const double expected_parity = (p % 2 == 0) ? 1.0 : -1.0;  // p = 0 is symmetric
      for (int k = 0; k < n; ++k) {
        sum += chain.eigenvectors(p, k);
        parity = std::max(parity, std::abs(chain.eigenvectors(p, k) -
                                           expected_parity *
                                               chain.eigenvectors(p, n - 1 - k)));
      }
      if (p == 0) {
        for (int k = 0; k < n; ++k)
          CHECK(std::abs(chain.eigenvectors(0, k) - isqn) <= 1e-10);
      } else {
        CHECK(std::abs(sum) <= 1e-10);
      }
      CHECK(parity <= 1e-8);
    }

    // eigen residual ||A b - mu b|| relative to ||A||
    double a_norm = 0.0;
    for (double v : a.data()) a_norm += v * v;
    a_norm = std::sqrt(a_norm);
    for (int p = 0; p < n; ++p) {
      double res = 0.0;
      for (int m = 0; m < n; ++m) {
        double av = 0.0;
        for (int k = 0; k < n; ++k) av += a(m, k) * chain.eigenvectors(p, k);
        const double d = av - chain.eigenvalues[static_cast<std::size_t>(p)] *
                                  chain.eigenvectors(p, m);
        res += d * d;
      }
      CHECK(std::sqrt(res) <= 1e-10 * a_norm);
    }
  }
}

TEST_CASE("error paths") {
  CHECK_THROWS_AS(equilibrium_positions(0), std::invalid_argument);
  CHECK_THROWS_AS(equilibrium_positions(51), std::invalid_argument);
  CHECK_THROWS_WITH_AS(equilibrium_positions(8, 1), doctest::Contains("8"),
                       std::runtime_error);
  CHECK_THROWS_AS(coupling_matrix(std::vector<double>{0.5, 0.5}), std::invalid_argument);
}
