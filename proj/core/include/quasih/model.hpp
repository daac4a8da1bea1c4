#pragma once

#include <vector>

#include "quasih/matrix.hpp"

namespace quasih {

/// Parameters of the two-level generator
///   H = s * [[i sin(alpha), 1], [1, -i sin(alpha)]].
/// `s` sets the energy scale (s != 0), `alpha` dials the non-Hermiticity.
/// The spectrum is {-s cos(alpha), +s cos(alpha)}; at alpha = +-pi/2 the two
/// eigenvectors coalesce (exceptional point) and no positive metric exists.
struct ModelParams {
  double s = 1.0;
  double alpha = 0.0;
};

/// Parameters selecting one metric out of the two-parameter family
///   Theta = a^2 * [[1, u - i sin(alpha)], [u + i sin(alpha), 1]].
/// Positivity requires |u| < |cos(alpha)|.
struct MetricParams {
  double a = 1.0;
  double u = 0.0;
};

/// Positive cone of metrics for one operator: every combination
/// sum_i c_i * generator_rays[i] with all c_i > 0 is a positive-definite
/// metric satisfying the intertwining relation  H^dag Theta = Theta H.
struct MetricFamily {
  std::vector<ComplexMatrix> generator_rays;
  Eigen::Index dimension = 0;
};

struct EpDiagnostics {
  double min_metric_eigenvalue = 0.0;
  double metric_condition_number = 0.0;
  double eigenvector_overlap = 0.0;
};

void validate(const ModelParams& p);

/// True when |cos(alpha)| is within the degeneracy tolerance of zero, i.e.
/// the eigenvalues of H coalesce and the metric family is empty.
bool at_exceptional_point(const ModelParams& p, const Tolerances& tol = kDefaultTolerances);

/// True when (a, u) select a positive-definite metric for this alpha.
bool metric_params_valid(const ModelParams& p, const MetricParams& m,
                         const Tolerances& tol = kDefaultTolerances);

ComplexMatrix build_hamiltonian(const ModelParams& p);

/// Antilinear symmetry check: sigma_x * conj(h) * sigma_x == h.
bool check_pt_symmetry(const ComplexMatrix& h, const Tolerances& tol = kDefaultTolerances);

/// The metric selected by (a, u). Throws ExceptionalPoint when cos(alpha)
/// vanishes within tolerance and InvalidMetricParams when |u| >= |cos(alpha)|.
ComplexMatrix build_metric(const ModelParams& p, const MetricParams& m,
                           const Tolerances& tol = kDefaultTolerances);

/// Scale-free size of H^dag Theta - Theta H: Frobenius norm divided by
/// ||H||_F * ||Theta||_F. Zero (to tolerance) exactly when Theta intertwines.
double quasi_hermiticity_residual(const ComplexMatrix& h, const ComplexMatrix& theta);

/// General metric construction for any diagonalizable matrix with a real
/// nondegenerate spectrum: one trace-one rank-1 ray per eigenvalue, built
/// from the normalized left eigenrows. Throws DegenerateSpectrum or
/// ComplexSpectrum when the preconditions fail.
MetricFamily solve_metric_family(const ComplexMatrix& h,
                                 const Tolerances& tol = kDefaultTolerances);

ComplexMatrix combine_rays(const MetricFamily& family, const Eigen::VectorXd& coefficients);

/// Least-squares fit of ray coefficients reproducing `target`. The returned
/// coefficients are positive exactly when the target lies inside the family's
/// positivity cone.
Eigen::VectorXd fit_ray_coefficients(const MetricFamily& family, const ComplexMatrix& target);

/// The unique metric compatible with the charge observable: u = 0 and
/// a^2 = 1/cos(alpha). Requires cos(alpha) > 0.
ComplexMatrix cpt_metric(const ModelParams& p, const Tolerances& tol = kDefaultTolerances);

/// Charge observable C = H / (s cos(alpha)), satisfying C^2 = I, [C, H] = 0
/// and sigma_x * C = cpt_metric. Requires cos(alpha) > 0.
ComplexMatrix charge_operator(const ModelParams& p, const Tolerances& tol = kDefaultTolerances);

/// Diagnostics that remain valid at and beyond the exceptional point:
/// smallest metric eigenvalue, metric condition number (infinite once the
/// metric degenerates), and the Dirac overlap of the two eigenvectors of H
/// (tends to 1 as they coalesce).
EpDiagnostics ep_diagnostics(const ModelParams& p, const MetricParams& m);

}  // namespace quasih
