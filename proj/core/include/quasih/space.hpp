#pragma once

#include <vector>

#include "quasih/matrix.hpp"

namespace quasih {

/// A physical Hilbert space: the dimension together with the Hermitian
/// positive-definite metric Theta that defines its inner product
///   <a|b> = a^dag Theta b.
/// Construction validates Hermiticity and positivity; a Dirac space is the
/// special case Theta = I.
class PhysicalSpace {
public:
  explicit PhysicalSpace(ComplexMatrix theta, const Tolerances& tol = kDefaultTolerances);

  static PhysicalSpace dirac(Eigen::Index dimension);

  Eigen::Index dimension() const { return theta_.rows(); }
  const ComplexMatrix& theta() const { return theta_; }
  const ComplexMatrix& theta_inverse() const { return theta_inverse_; }

private:
  ComplexMatrix theta_;
  ComplexMatrix theta_inverse_;
};

/// Plain Dirac inner product sum_i conj(a_i) b_i.
Complex inner_product_f(const StateVector& a, const StateVector& b);

/// Metric inner product a^dag Theta b of the given space.
Complex inner_product_s(const PhysicalSpace& space, const StateVector& a, const StateVector& b);

/// Metric-Hermiticity test: Lambda^dag Theta == Theta Lambda to the property
/// tolerance (scale-free). Observables failing this have no consistent
/// measurement statistics in the space.
bool is_admissible_observable(const PhysicalSpace& space, const ComplexMatrix& lambda,
                              const Tolerances& tol = kDefaultTolerances);

/// Adjoint with respect to the metric inner product: Theta^-1 A^dag Theta.
/// An operator is admissible exactly when it equals its own s-adjoint.
ComplexMatrix s_adjoint(const PhysicalSpace& space, const ComplexMatrix& a);

/// <psi| Theta Lambda |psi> / <psi| Theta |psi>. Real (to tolerance) for
/// admissible observables; inadmissible observables are rejected.
double expectation(const PhysicalSpace& space, const ComplexMatrix& lambda,
                   const StateVector& psi, const Tolerances& tol = kDefaultTolerances);

/// Propagates psi by exp(-i h t). The generator must be admissible for the
/// space; then the metric norm of the state is conserved. A generator that
/// fails the intertwining relation would evolve non-unitarily and is refused.
StateVector evolve(const PhysicalSpace& space, const ComplexMatrix& h, const StateVector& psi,
                   double t, const Tolerances& tol = kDefaultTolerances);

/// Metric-orthogonal eigenprojectors Pi_k = |v_k><v_k| Theta / <v_k|Theta|v_k>
/// of an admissible operator with nondegenerate spectrum. Each projector is
/// idempotent and admissible, and the set resolves the identity.
std::vector<ComplexMatrix> eigenprojectors(const PhysicalSpace& space, const ComplexMatrix& h,
                                           const Tolerances& tol = kDefaultTolerances);

}  // namespace quasih
