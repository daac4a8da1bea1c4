#include "quasih/model.hpp"

#include <cmath>
#include <limits>

namespace quasih {

void validate(const ModelParams& p) {
  if (!std::isfinite(p.s) || !std::isfinite(p.alpha)) {
    throw InvalidModelParams("model params must be finite");
  }
  if (p.s == 0.0) {
    throw InvalidModelParams("coupling scale s must be nonzero");
  }
}

bool at_exceptional_point(const ModelParams& p, const Tolerances& tol) {
  return std::abs(std::cos(p.alpha)) <= tol.degeneracy;
}

bool metric_params_valid(const ModelParams& p, const MetricParams& m, const Tolerances& tol) {
  if (!std::isfinite(m.a) || !std::isfinite(m.u) || m.a == 0.0) return false;
  if (at_exceptional_point(p, tol)) return false;
  return std::abs(m.u) < std::abs(std::cos(p.alpha));
}

ComplexMatrix build_hamiltonian(const ModelParams& p) {
  validate(p);
  const double sa = std::sin(p.alpha);
  ComplexMatrix h(2, 2);
  h << Complex(0, sa), 1, 1, Complex(0, -sa);
  return p.s * h;
}

bool check_pt_symmetry(const ComplexMatrix& h, const Tolerances& tol) {
  if (h.rows() != 2 || h.cols() != 2) {
    throw DimensionMismatch("check_pt_symmetry: expected a 2x2 matrix");
  }
  const ComplexMatrix p = pauli_x();
  const ComplexMatrix transformed = p * h.conjugate() * p;
  const double scale = std::max(h.norm(), 1e-300);
  return (transformed - h).norm() <= tol.equality * scale;
}

ComplexMatrix build_metric(const ModelParams& p, const MetricParams& m, const Tolerances& tol) {
  validate(p);
  if (!std::isfinite(m.a) || !std::isfinite(m.u) || m.a == 0.0) {
    throw InvalidMetricParams("metric params must be finite with a != 0");
  }
  const double ca = std::cos(p.alpha);
  if (std::abs(ca) <= tol.degeneracy) {
    throw ExceptionalPoint("no positive metric exists at the exceptional point cos(alpha) = 0");
  }
  if (std::abs(m.u) >= std::abs(ca)) {
    throw InvalidMetricParams("metric positivity requires |u| < |cos(alpha)|");
  }
  const double sa = std::sin(p.alpha);
  ComplexMatrix theta(2, 2);
  theta << 1, Complex(m.u, -sa), Complex(m.u, sa), 1;
  return (m.a * m.a) * theta;
}

double quasi_hermiticity_residual(const ComplexMatrix& h, const ComplexMatrix& theta) {
  if (h.rows() != h.cols() || theta.rows() != theta.cols() || h.rows() != theta.rows()) {
    throw DimensionMismatch("quasi_hermiticity_residual: operands must be square and equal-sized");
  }
  const double scale = std::max(h.norm() * theta.norm(), 1e-300);
  return (h.adjoint() * theta - theta * h).norm() / scale;
}

MetricFamily solve_metric_family(const ComplexMatrix& h, const Tolerances& tol) {
  const EigenSystem es = eigensystem(h, tol);
  if (es.degenerate) {
    throw DegenerateSpectrum("solve_metric_family: spectrum is degenerate (exceptional point)");
  }
  const double scale = std::max(h.norm(), 1e-300);
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    if (std::abs(es.values(k).imag()) > tol.degeneracy * scale) {
      throw ComplexSpectrum("solve_metric_family: spectrum is not real; no positive metric exists");
    }
  }

  MetricFamily family;
  family.dimension = h.rows();
  family.generator_rays.reserve(static_cast<std::size_t>(h.rows()));
  for (Eigen::Index k = 0; k < h.rows(); ++k) {
    Eigen::RowVectorXcd row = es.left.row(k);
    row /= row.norm();
    family.generator_rays.push_back(row.adjoint() * row);
  }
  return family;
}

ComplexMatrix combine_rays(const MetricFamily& family, const Eigen::VectorXd& coefficients) {
  if (coefficients.size() != static_cast<Eigen::Index>(family.generator_rays.size())) {
    throw DimensionMismatch("combine_rays: one coefficient per generator ray required");
  }
  ComplexMatrix theta = ComplexMatrix::Zero(family.dimension, family.dimension);
  for (Eigen::Index k = 0; k < coefficients.size(); ++k) {
    theta += coefficients(k) * family.generator_rays[static_cast<std::size_t>(k)];
  }
  return theta;
}

Eigen::VectorXd fit_ray_coefficients(const MetricFamily& family, const ComplexMatrix& target) {
  const Eigen::Index n = family.dimension;
  if (target.rows() != n || target.cols() != n) {
    throw DimensionMismatch("fit_ray_coefficients: target dimension does not match family");
  }
  const Eigen::Index rays = static_cast<Eigen::Index>(family.generator_rays.size());
  // Real least squares over stacked real and imaginary parts of the entries.
  Eigen::MatrixXd a(2 * n * n, rays);
  Eigen::VectorXd b(2 * n * n);
  for (Eigen::Index k = 0; k < rays; ++k) {
    const ComplexMatrix& ray = family.generator_rays[static_cast<std::size_t>(k)];
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j, ++r) {
        a(2 * r, k) = ray(i, j).real();
        a(2 * r + 1, k) = ray(i, j).imag();
      }
    }
  }
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j, ++r) {
      b(2 * r) = target(i, j).real();
      b(2 * r + 1) = target(i, j).imag();
    }
  }
  return a.colPivHouseholderQr().solve(b);
}

ComplexMatrix cpt_metric(const ModelParams& p, const Tolerances& tol) {
  validate(p);
  const double ca = std::cos(p.alpha);
  if (ca <= tol.degeneracy) {
    throw ExceptionalPoint("cpt_metric requires cos(alpha) > 0");
  }
  const double a2 = 1.0 / ca;
  const double sa = std::sin(p.alpha);
  ComplexMatrix theta(2, 2);
  theta << 1, Complex(0, -sa), Complex(0, sa), 1;
  return a2 * theta;
}

ComplexMatrix charge_operator(const ModelParams& p, const Tolerances& tol) {
  validate(p);
  const double ca = std::cos(p.alpha);
  if (ca <= tol.degeneracy) {
    throw ExceptionalPoint("charge_operator requires cos(alpha) > 0");
  }
  return build_hamiltonian(p) / (p.s * ca);
}

EpDiagnostics ep_diagnostics(const ModelParams& p, const MetricParams& m) {
  validate(p);
  // The metric entries are evaluated directly: the formula is defined for all
  // alpha, positivity or not, which is what lets the diagnostics reach the
  // point where the metric degenerates.
  const double sa = std::sin(p.alpha);
  ComplexMatrix theta(2, 2);
  theta << 1, Complex(m.u, -sa), Complex(m.u, sa), 1;
  theta *= m.a * m.a;

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(theta);
  const double lo = solver.eigenvalues()(0);
  const double hi = solver.eigenvalues()(1);

  EpDiagnostics diag;
  diag.min_metric_eigenvalue = lo;
  diag.metric_condition_number =
      lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();

  const EigenSystem es = eigensystem(build_hamiltonian(p));
  const Complex overlap = es.right.col(0).dot(es.right.col(1));
  diag.eigenvector_overlap = std::abs(overlap);
  return diag;
}

}  // namespace quasih
