#pragma once

// Independent reference implementations used to cross-check the library.
// Everything here is computed through a different algorithmic route than the
// code under test: closed-form 2x2 eigenvalues instead of the QR solver,
// Taylor series instead of the Pade exponential, explicit index loops instead
// of block operations.

#include <complex>
#include <random>

#include <Eigen/Dense>

namespace oracles {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Roots of the characteristic polynomial of a 2x2 matrix, sorted by
/// (real, imag).
std::pair<Complex, Complex> eig2x2(const Matrix& m);

/// Eigenvalues of a Hermitian 2x2 matrix by the closed quadratic form,
/// returned ascending.
std::pair<double, double> eigh2x2(const Matrix& m);

/// Scaled Taylor-series matrix exponential.
Matrix series_expm(const Matrix& m);

/// exp(A) for a 2x2 with distinct eigenvalues via Lagrange interpolation
/// on the spectrum.
Matrix spectral_expm_2x2(const Matrix& m);

/// Partial trace over the leftmost factor by explicit four-index summation.
Matrix partial_trace_first_loops(const Matrix& m, int dim_first, int dim_second);

/// Bob's reduced state reconstructed from the four Pauli expectation values
/// <psi| theta_tilde (I (x) sigma_k) |psi> / <psi| theta_tilde |psi>.
Matrix rho_from_pauli_expectations(const Matrix& theta_tilde, const Vector& psi);

/// The two-level generator and metric, written out locally so the oracle file
/// does not depend on the library.
Matrix hamiltonian(double s, double alpha);
Matrix metric(double alpha, double a, double u);

/// Dirac-trace signaling magnitude for a Bell pair under Alice's evolution,
/// computed entirely from closed forms.
double naive_evolution_signal(double s, double alpha, double t);

/// Deterministic random complex matrix with entries in the unit square.
Matrix random_matrix(int n, std::mt19937& rng);

/// Deterministic random Hermitian matrix.
Matrix random_hermitian(int n, std::mt19937& rng);

/// Deterministic random state vector, Dirac-normalized.
Vector random_state(int n, std::mt19937& rng);

/// Random diagonalizable matrix with prescribed (well separated) eigenvalues;
/// returns the matrix and writes the eigenvalues to `values`.
Matrix random_with_spectrum(int n, std::mt19937& rng, Eigen::VectorXcd& values);

}  // namespace oracles
