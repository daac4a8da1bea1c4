#include "quasih/experiment.hpp"

#include <cmath>
#include <sstream>

namespace quasih {

std::string AliceAction::describe() const {
  switch (kind) {
    case Kind::none:
      return "none";
    case Kind::evolve: {
      std::ostringstream os;
      os << "evolve(t=" << time << ")";
      return os.str();
    }
    case Kind::project:
      return "project(" + std::to_string(projectors.size()) + " outcomes)";
  }
  return "unknown";
}

CompositeSystem build_composite(const ModelParams& p, const MetricParams& m,
                                const Tolerances& tol) {
  const ComplexMatrix h = build_hamiltonian(p);
  const ComplexMatrix theta = build_metric(p, m, tol);
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  return CompositeSystem{kron(h, id2), kron(theta, id2), PhysicalSpace(theta, tol), {2, 2}};
}

StateVector bell_state() {
  StateVector v = StateVector::Zero(4);
  v(0) = 1.0 / std::sqrt(2.0);
  v(3) = 1.0 / std::sqrt(2.0);
  return v;
}

namespace {

void require_state4(const StateVector& psi, const char* what) {
  if (psi.size() != 4) {
    throw DimensionMismatch(std::string(what) + ": expected a 4-component state");
  }
  if (!(psi.norm() > 0.0)) {
    throw ZeroState(std::string(what) + ": state has zero norm");
  }
}

ComplexMatrix reduce(const CompositeSystem& sys, const StateVector& psi, ReductionMode mode) {
  const ComplexMatrix rho = psi * psi.adjoint();
  if (mode == ReductionMode::naive) {
    return partial_trace_first(rho, 2, 2) / psi.squaredNorm();
  }
  const ComplexMatrix weighted = sys.theta_tilde * rho;
  const double norm = weighted.trace().real();
  return partial_trace_first(weighted, 2, 2) / norm;
}

void validate_projectors(const CompositeSystem& sys, const std::vector<ComplexMatrix>& projectors,
                         const Tolerances& tol) {
  if (projectors.empty()) {
    throw InadmissibleProjector("apply_alice: empty projector set");
  }
  ComplexMatrix sum = ComplexMatrix::Zero(2, 2);
  for (const ComplexMatrix& pi : projectors) {
    if (pi.rows() != 2 || pi.cols() != 2) {
      throw InadmissibleProjector("apply_alice: projectors must act on Alice's two-level factor");
    }
    const double scale = std::max(pi.norm(), 1e-300);
    if ((pi * pi - pi).norm() > tol.property * scale) {
      throw InadmissibleProjector("apply_alice: projector is not idempotent");
    }
    if (!is_admissible_observable(sys.alice_space, pi, tol)) {
      throw InadmissibleProjector("apply_alice: projector fails metric admissibility");
    }
    sum += pi;
  }
  if ((sum - ComplexMatrix::Identity(2, 2)).norm() > tol.property) {
    throw InadmissibleProjector("apply_alice: projector set does not resolve the identity");
  }
}

}  // namespace

ComplexMatrix bob_reduced_corrected(const CompositeSystem& sys, const StateVector& psi) {
  require_state4(psi, "bob_reduced_corrected");
  return reduce(sys, psi, ReductionMode::corrected);
}

ComplexMatrix bob_reduced_naive(const StateVector& psi) {
  require_state4(psi, "bob_reduced_naive");
  const ComplexMatrix rho = psi * psi.adjoint();
  return partial_trace_first(rho, 2, 2) / psi.squaredNorm();
}

std::vector<Branch> apply_alice(const CompositeSystem& sys, const StateVector& psi,
                                const AliceAction& action, const Tolerances& tol) {
  require_state4(psi, "apply_alice");
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);

  switch (action.kind) {
    case AliceAction::Kind::none:
      return {Branch{1.0, psi}};

    case AliceAction::Kind::evolve: {
      const StateVector out = expm(Complex(0, -action.time) * sys.h_tot) * psi;
      return {Branch{1.0, out}};
    }

    case AliceAction::Kind::project: {
      validate_projectors(sys, action.projectors, tol);
      const double total = psi.dot(sys.theta_tilde * psi).real();
      std::vector<Branch> branches;
      branches.reserve(action.projectors.size());
      for (const ComplexMatrix& pi : action.projectors) {
        const StateVector out = kron(pi, id2) * psi;
        const double weight = psi.dot(sys.theta_tilde * out).real() / total;
        branches.push_back(Branch{weight, out});
      }
      return branches;
    }
  }
  throw std::logic_error("apply_alice: unhandled action kind");
}

namespace {

ComplexMatrix averaged_marginal(const CompositeSystem& sys, const std::vector<Branch>& branches,
                                ReductionMode mode) {
  ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
  for (const Branch& branch : branches) {
    if (branch.weight <= 0.0 || !(branch.state.norm() > 0.0)) continue;  // null outcome
    rho += branch.weight * reduce(sys, branch.state, mode);
  }
  return rho;
}

}  // namespace

double signaling_magnitude(const CompositeSystem& sys, const StateVector& psi0,
                           const AliceAction& action, ReductionMode mode, const Tolerances& tol) {
  require_state4(psi0, "signaling_magnitude");
  const ComplexMatrix before = reduce(sys, psi0, mode);
  const ComplexMatrix after = averaged_marginal(sys, apply_alice(sys, psi0, action, tol), mode);
  return trace_distance(before, after, tol);
}

ExperimentResult run_experiment(const CompositeSystem& sys, const StateVector& psi0,
                                const AliceAction& action, const ModelParams& p,
                                const MetricParams& m, const Tolerances& tol) {
  require_state4(psi0, "run_experiment");
  const std::vector<Branch> branches = apply_alice(sys, psi0, action, tol);

  ExperimentResult result;
  result.rho_bob_corrected = averaged_marginal(sys, branches, ReductionMode::corrected);
  result.rho_bob_naive = averaged_marginal(sys, branches, ReductionMode::naive);
  result.signaling_corrected =
      trace_distance(reduce(sys, psi0, ReductionMode::corrected), result.rho_bob_corrected, tol);
  result.signaling_naive =
      trace_distance(reduce(sys, psi0, ReductionMode::naive), result.rho_bob_naive, tol);
  result.model = p;
  result.metric = m;
  result.action = action.describe();
  return result;
}

}  // namespace quasih
