#include "quasih/space.hpp"

#include <cmath>

namespace quasih {

PhysicalSpace::PhysicalSpace(ComplexMatrix theta, const Tolerances& tol) : theta_(std::move(theta)) {
  if (theta_.rows() != theta_.cols() || theta_.rows() < 1) {
    throw DimensionMismatch("PhysicalSpace: metric must be a square matrix");
  }
  require_small_and_finite(theta_, "PhysicalSpace");
  const double scale = std::max(theta_.norm(), 1e-300);
  if ((theta_ - theta_.adjoint()).norm() > tol.equality * scale) {
    throw NotHermitian("PhysicalSpace: metric must be Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(theta_);
  if (solver.eigenvalues()(0) <= 0.0) {
    throw InvalidMetricParams("PhysicalSpace: metric must be positive definite");
  }
  // Invert through the spectral decomposition; safe because all eigenvalues
  // are strictly positive.
  theta_inverse_ = solver.eigenvectors() *
                   solver.eigenvalues().cwiseInverse().asDiagonal() *
                   solver.eigenvectors().adjoint();
}

PhysicalSpace PhysicalSpace::dirac(Eigen::Index dimension) {
  return PhysicalSpace(ComplexMatrix::Identity(dimension, dimension));
}

Complex inner_product_f(const StateVector& a, const StateVector& b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("inner_product_f: vectors must have equal dimension");
  }
  return a.dot(b);
}

Complex inner_product_s(const PhysicalSpace& space, const StateVector& a, const StateVector& b) {
  if (a.size() != space.dimension() || b.size() != space.dimension()) {
    throw DimensionMismatch("inner_product_s: vector dimension does not match the space");
  }
  return a.dot(space.theta() * b);
}

bool is_admissible_observable(const PhysicalSpace& space, const ComplexMatrix& lambda,
                              const Tolerances& tol) {
  if (lambda.rows() != lambda.cols() || lambda.rows() != space.dimension()) {
    throw DimensionMismatch("is_admissible_observable: operator dimension does not match the space");
  }
  const double scale = std::max(lambda.norm() * space.theta().norm(), 1e-300);
  return (lambda.adjoint() * space.theta() - space.theta() * lambda).norm() <= tol.property * scale;
}

ComplexMatrix s_adjoint(const PhysicalSpace& space, const ComplexMatrix& a) {
  if (a.rows() != a.cols() || a.rows() != space.dimension()) {
    throw DimensionMismatch("s_adjoint: operator dimension does not match the space");
  }
  return space.theta_inverse() * a.adjoint() * space.theta();
}

double expectation(const PhysicalSpace& space, const ComplexMatrix& lambda,
                   const StateVector& psi, const Tolerances& tol) {
  if (!is_admissible_observable(space, lambda, tol)) {
    throw InadmissibleObservable("expectation: observable fails the metric-Hermiticity condition");
  }
  const double norm2 = inner_product_s(space, psi, psi).real();
  if (!(norm2 > 0.0)) {
    throw ZeroState("expectation: state has vanishing metric norm");
  }
  const Complex value = psi.dot(space.theta() * (lambda * psi)) / norm2;
  return value.real();
}

StateVector evolve(const PhysicalSpace& space, const ComplexMatrix& h, const StateVector& psi,
                   double t, const Tolerances& tol) {
  if (psi.size() != space.dimension()) {
    throw DimensionMismatch("evolve: state dimension does not match the space");
  }
  if (!is_admissible_observable(space, h, tol)) {
    throw InadmissibleObservable(
        "evolve: generator fails the intertwining relation for this metric; "
        "evolution would not be unitary in the space");
  }
  return expm(Complex(0, -t) * h) * psi;
}

std::vector<ComplexMatrix> eigenprojectors(const PhysicalSpace& space, const ComplexMatrix& h,
                                           const Tolerances& tol) {
  if (!is_admissible_observable(space, h, tol)) {
    throw InadmissibleObservable("eigenprojectors: operator fails the metric-Hermiticity condition");
  }
  const EigenSystem es = eigensystem(h, tol);
  if (es.degenerate) {
    throw DegenerateSpectrum("eigenprojectors: spectrum is degenerate");
  }
  std::vector<ComplexMatrix> projectors;
  projectors.reserve(static_cast<std::size_t>(es.values.size()));
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    const StateVector v = es.right.col(k);
    const Complex norm = inner_product_s(space, v, v);
    projectors.push_back((v * v.adjoint() * space.theta()) / norm.real());
  }
  return projectors;
}

}  // namespace quasih
