#pragma once

#include <string>
#include <utility>
#include <vector>

#include "quasih/model.hpp"
#include "quasih/space.hpp"

namespace quasih {

/// Alice-Bob composite: Alice carries the two-level generator and its metric,
/// Bob carries an identity factor. The shared metric is Theta (x) I, so the
/// intertwining relation lifts to the 4x4 operators unchanged.
struct CompositeSystem {
  ComplexMatrix h_tot;        // H (x) I, 4x4
  ComplexMatrix theta_tilde;  // Theta (x) I, 4x4
  PhysicalSpace alice_space;  // two-level space carrying Theta
  std::pair<Eigen::Index, Eigen::Index> dims{2, 2};
};

/// What Alice does locally before Bob looks at his marginal. Projective
/// measurements keep their outcome unrevealed: the post-action state is the
/// weighted ensemble over outcomes.
struct AliceAction {
  enum class Kind { none, evolve, project };

  Kind kind = Kind::none;
  double time = 0.0;
  std::vector<ComplexMatrix> projectors;  // 2x2, metric-orthogonal, complete

  static AliceAction none() { return {}; }
  static AliceAction evolve(double t) {
    AliceAction a;
    a.kind = Kind::evolve;
    a.time = t;
    return a;
  }
  static AliceAction project(std::vector<ComplexMatrix> projector_set) {
    AliceAction a;
    a.kind = Kind::project;
    a.projectors = std::move(projector_set);
    return a;
  }

  std::string describe() const;
};

/// One branch of a post-action ensemble. Weights are the measurement
/// probabilities computed in the physical (metric) inner product; for
/// deterministic actions there is a single branch of weight 1.
struct Branch {
  double weight = 1.0;
  StateVector state;
};

/// Which reduced-state computation to use for Bob.
///   corrected - metric-weighted partial trace (bra premultiplied by the
///               shared metric); the physically meaningful marginal.
///   naive     - plain Dirac partial trace with Theta replaced by I; the
///               inconsistent computation kept for comparison because it is
///               what produces the spurious signal.
enum class ReductionMode { corrected, naive };

struct ExperimentResult {
  ComplexMatrix rho_bob_corrected;
  ComplexMatrix rho_bob_naive;
  double signaling_corrected = 0.0;
  double signaling_naive = 0.0;
  ModelParams model;
  MetricParams metric;
  std::string action;
};

CompositeSystem build_composite(const ModelParams& p, const MetricParams& m,
                                const Tolerances& tol = kDefaultTolerances);

/// (|00> + |11>)/sqrt(2) in the Alice (x) Bob ordering.
StateVector bell_state();

/// Bob's marginal with the shared metric in place:
///   rho_B = Tr_A[(Theta (x) I) |psi><psi|] / <psi|(Theta (x) I)|psi>.
/// This is the unique operator reproducing every Bob expectation value
/// computed in the physical inner product.
ComplexMatrix bob_reduced_corrected(const CompositeSystem& sys, const StateVector& psi);

/// Bob's marginal by the plain Dirac trace, Tr_A[|psi><psi|] / <psi|psi>.
ComplexMatrix bob_reduced_naive(const StateVector& psi);

/// Runs Alice's local action. Evolutions return one branch; measurements
/// return one branch per outcome with metric-Born-rule weights (they sum to
/// one). Projector sets are validated for idempotence, completeness and
/// admissibility.
std::vector<Branch> apply_alice(const CompositeSystem& sys, const StateVector& psi,
                                const AliceAction& action,
                                const Tolerances& tol = kDefaultTolerances);

/// Trace distance between Bob's marginal before and after Alice's action,
/// with the marginal computed in the requested mode (ensembles are averaged
/// with their branch weights). Identically zero in corrected mode; the
/// nonzero naive values are the artifact under study.
double signaling_magnitude(const CompositeSystem& sys, const StateVector& psi0,
                           const AliceAction& action, ReductionMode mode,
                           const Tolerances& tol = kDefaultTolerances);

/// Runs one scenario in both modes and collects the per-scenario record.
ExperimentResult run_experiment(const CompositeSystem& sys, const StateVector& psi0,
                                const AliceAction& action, const ModelParams& p,
                                const MetricParams& m,
                                const Tolerances& tol = kDefaultTolerances);

}  // namespace quasih
