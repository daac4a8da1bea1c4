#include "quasih/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace quasih {

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

void require_small_and_finite(const ComplexMatrix& m, const char* what) {
  if (m.rows() > kMaxDimension || m.cols() > kMaxDimension) {
    throw DimensionMismatch(std::string(what) + ": dimension exceeds supported maximum of 16");
  }
  if (!m.allFinite()) {
    throw DimensionMismatch(std::string(what) + ": matrix has non-finite entries");
  }
}

ComplexMatrix adjoint(const ComplexMatrix& m) { return m.adjoint(); }

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch(std::string(what) + ": matrix must be square");
  }
}

// Rotate each column so its largest-magnitude component is real positive,
// then scale to unit Dirac norm. Makes solver output deterministic.
void normalize_columns(ComplexMatrix& v) {
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    Eigen::Index imax = 0;
    v.col(j).cwiseAbs().maxCoeff(&imax);
    const Complex pivot = v(imax, j);
    const double norm = v.col(j).norm();
    if (norm == 0.0) continue;
    Complex phase = std::abs(pivot) > 0 ? pivot / std::abs(pivot) : Complex(1, 0);
    v.col(j) /= (phase * norm);
  }
}

}  // namespace

EigenSystem eigensystem(const ComplexMatrix& m, const Tolerances& tol) {
  require_square(m, "eigensystem");
  require_small_and_finite(m, "eigensystem");

  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigensystem: eigensolver failed to converge");
  }

  const Eigen::Index n = m.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const auto& raw = solver.eigenvalues();
  std::sort(order.begin(), order.end(), [&raw](Eigen::Index i, Eigen::Index j) {
    if (raw(i).real() != raw(j).real()) return raw(i).real() < raw(j).real();
    return raw(i).imag() < raw(j).imag();
  });

  EigenSystem out;
  out.values.resize(n);
  out.right.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = raw(order[static_cast<std::size_t>(k)]);
    out.right.col(k) = solver.eigenvectors().col(order[static_cast<std::size_t>(k)]);
  }
  normalize_columns(out.right);

  double min_gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      min_gap = std::min(min_gap, std::abs(out.values(i) - out.values(j)));
    }
  }
  const double scale = std::max(out.values.cwiseAbs().maxCoeff(), m.norm());
  out.degenerate = (n > 1) && (scale == 0.0 || min_gap < tol.degeneracy * scale);

  Eigen::FullPivLU<ComplexMatrix> lu(out.right);
  if (lu.isInvertible()) {
    out.left = lu.inverse();
  } else {
    // Defective eigenvector set: fall back to the Moore-Penrose inverse so the
    // rows stay finite. The degenerate flag tells callers not to rely on
    // biorthogonality.
    out.left = out.right.completeOrthogonalDecomposition().pseudoInverse();
  }
  return out;
}

ComplexMatrix expm(const ComplexMatrix& m) {
  require_square(m, "expm");
  require_small_and_finite(m, "expm");
  const Eigen::Index n = m.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);

  // Pade 13/13 coefficients and its scaling threshold.
  static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                             1187353796428800.0,  129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,       1323241920.0,
                             40840800.0,          960960.0,            16380.0,
                             182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;

  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  }
  const ComplexMatrix a = m / std::pow(2.0, squarings);

  const ComplexMatrix a2 = a * a;
  const ComplexMatrix a4 = a2 * a2;
  const ComplexMatrix a6 = a2 * a4;
  const ComplexMatrix u =
      a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  const ComplexMatrix v =
      a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;

  ComplexMatrix r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace_first(const ComplexMatrix& m, Eigen::Index dim_first,
                                  Eigen::Index dim_second) {
  if (dim_first < 1 || dim_second < 1 || m.rows() != dim_first * dim_second ||
      m.cols() != dim_first * dim_second) {
    throw DimensionMismatch("partial_trace_first: matrix is not (dA*dB) x (dA*dB)");
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_second, dim_second);
  for (Eigen::Index a = 0; a < dim_first; ++a) {
    out += m.block(a * dim_second, a * dim_second, dim_second, dim_second);
  }
  return out;
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol) {
  require_square(a, "trace_distance");
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("trace_distance: operands must have equal dimensions");
  }
  const double scale_a = std::max(a.norm(), 1e-300);
  const double scale_b = std::max(b.norm(), 1e-300);
  if ((a - a.adjoint()).norm() > tol.degeneracy * scale_a ||
      (b - b.adjoint()).norm() > tol.degeneracy * scale_b) {
    throw NotHermitian("trace_distance: operands must be Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a - b);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace quasih
