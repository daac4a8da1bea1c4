#pragma once

#include <complex>

#include <Eigen/Dense>

#include "quasih/errors.hpp"
#include "quasih/tolerances.hpp"

namespace quasih {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/// Largest matrix dimension the kernel accepts. Everything in this library
/// lives on two-level systems and small composites of them.
inline constexpr Eigen::Index kMaxDimension = 16;

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

/// Throws DimensionMismatch if m is larger than kMaxDimension or has
/// non-finite entries.
void require_small_and_finite(const ComplexMatrix& m, const char* what);

/// Eigendecomposition with a biorthogonal left/right pair set.
///
/// `values` are sorted by real part, then imaginary part. Columns of `right`
/// are Dirac-normalized right eigenvectors with a fixed phase convention
/// (largest-magnitude component real and positive). Rows of `left` are the
/// matching left eigenvectors, scaled so that left * right = I whenever the
/// spectrum is nondegenerate. `degenerate` is set when the smallest eigenvalue
/// gap falls below the relative degeneracy tolerance; the vector sets are
/// still returned but biorthogonality is then not guaranteed.
struct EigenSystem {
  Eigen::VectorXcd values;
  ComplexMatrix right;
  ComplexMatrix left;
  bool degenerate = false;
};

ComplexMatrix adjoint(const ComplexMatrix& m);

EigenSystem eigensystem(const ComplexMatrix& m,
                        const Tolerances& tol = kDefaultTolerances);

/// Matrix exponential by scaling-and-squaring with a fixed 13/13 Pade
/// approximant. The fixed order keeps the same code path valid for defective
/// inputs, where a spectral evaluation breaks down.
ComplexMatrix expm(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Partial trace over the first (leftmost, slow-index) tensor factor of a
/// (dim_first*dim_second) square matrix. Returns a dim_second x dim_second
/// matrix.
ComplexMatrix partial_trace_first(const ComplexMatrix& m, Eigen::Index dim_first,
                                  Eigen::Index dim_second);

/// Half the sum of absolute eigenvalues of (a - b). Both inputs must be
/// Hermitian to within a relative asymmetry of 1e-8, otherwise NotHermitian
/// is thrown.
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b,
                      const Tolerances& tol = kDefaultTolerances);

}  // namespace quasih
