#pragma once

namespace quasih {

/// Central tolerance settings shared by the whole library.
///
/// `equality` guards exact algebraic identities (intertwining relations,
/// closed-form matrix entries), `property` guards accumulated floating-point
/// checks (admissibility, norm conservation, orthogonality), and `degeneracy`
/// is the relative eigenvalue-gap threshold below which a spectrum is treated
/// as coalesced.
struct Tolerances {
  double equality = 1e-12;
  double property = 1e-10;
  double degeneracy = 1e-8;
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace quasih
