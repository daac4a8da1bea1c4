#pragma once

#include <stdexcept>
#include <string>

namespace quasih {

/// Matrix or vector dimensions incompatible with the requested operation,
/// including dimensions above the supported maximum.
class DimensionMismatch : public std::invalid_argument {
public:
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// A matrix required to be Hermitian deviates from its adjoint beyond tolerance.
class NotHermitian : public std::invalid_argument {
public:
  explicit NotHermitian(const std::string& what) : std::invalid_argument(what) {}
};

/// Eigenvalues coalesce within tolerance where a nondegenerate spectrum is required.
class DegenerateSpectrum : public std::runtime_error {
public:
  explicit DegenerateSpectrum(const std::string& what) : std::runtime_error(what) {}
};

/// The operator has eigenvalues with nonzero imaginary part; no positive metric exists.
class ComplexSpectrum : public std::runtime_error {
public:
  explicit ComplexSpectrum(const std::string& what) : std::runtime_error(what) {}
};

/// Hamiltonian parameters violate their invariants (non-finite, or zero coupling).
class InvalidModelParams : public std::invalid_argument {
public:
  explicit InvalidModelParams(const std::string& what) : std::invalid_argument(what) {}
};

/// Metric parameters outside the positivity domain |u| < |cos(alpha)|.
class InvalidMetricParams : public std::invalid_argument {
public:
  explicit InvalidMetricParams(const std::string& what) : std::invalid_argument(what) {}
};

/// Request made at (or within tolerance of) the parameter value where the
/// metric ceases to exist.
class ExceptionalPoint : public std::runtime_error {
public:
  explicit ExceptionalPoint(const std::string& what) : std::runtime_error(what) {}
};

/// Observable fails the metric-Hermiticity condition for the active space.
class InadmissibleObservable : public std::invalid_argument {
public:
  explicit InadmissibleObservable(const std::string& what) : std::invalid_argument(what) {}
};

/// Projector set fails idempotence, completeness, or metric admissibility.
class InadmissibleProjector : public std::invalid_argument {
public:
  explicit InadmissibleProjector(const std::string& what) : std::invalid_argument(what) {}
};

/// A state vector with zero (or numerically vanishing) norm where a
/// normalizable state is required.
class ZeroState : public std::invalid_argument {
public:
  explicit ZeroState(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace quasih
