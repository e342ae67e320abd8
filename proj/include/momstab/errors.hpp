#ifndef MOMSTAB_ERRORS_HPP
#define MOMSTAB_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace momstab {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad user input: malformed spec files, out-of-range parameters, violated
// preconditions. Maps to CLI exit code 2.
class InvalidInput : public Error {
public:
  using Error::Error;
};

// A user-supplied callback produced NaN/Inf.
class NonFiniteEvaluation : public Error {
public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
public:
  using Error::Error;
};

// Symmetric moment basis would exceed the configured cap.
class BasisTooLarge : public Error {
public:
  BasisTooLarge(const std::string& what, std::size_t required)
      : Error(what), required_size(required) {}
  std::size_t required_size;
};

// Diagonal noise spec whose pair matrix is not the Gram product of its rates.
class InconsistentSpec : public Error {
public:
  using Error::Error;
};

class EigenSolveFailure : public Error {
public:
  using Error::Error;
};

// Eigenvalue fails the isolation gap test; use the degenerate routine.
class DegenerateEigenvalue : public Error {
public:
  using Error::Error;
};

// Left/right pairing <v,u> is numerically zero (near-defective eigenvalue).
class VanishingPairing : public Error {
public:
  using Error::Error;
};

// Clustered eigenvalue with geometric multiplicity below its cluster size.
class NotSemisimple : public Error {
public:
  using Error::Error;
};

class SingularPairing : public Error {
public:
  using Error::Error;
};

// Growth-rate regression hit a non-positive moment value (log undefined).
class NonPositiveMoment : public Error {
public:
  using Error::Error;
};

class InsufficientSamples : public Error {
public:
  using Error::Error;
};

// Bound-state eigenvalue moved by more than the contract tolerance when the
// grid was refined.
class GridTooCoarse : public Error {
public:
  GridTooCoarse(const std::string& what, double change)
      : Error(what), observed_change(change) {}
  double observed_change;
};

// No sign change found for the matching condition; reports the endpoint
// values so the caller can diagnose grid/domain settings.
class BracketNotFound : public Error {
public:
  BracketNotFound(const std::string& what, double g_lo, double g_hi)
      : Error(what), value_lo(g_lo), value_hi(g_hi) {}
  double value_lo;
  double value_hi;
};

}  // namespace momstab

#endif
