// Shared error taxonomy and numeric constants for the ghlab library.
//
// Every precondition violation throws a typed exception so callers (and the
// CLI) can distinguish "bad input" from "computation impossible here".
#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ghlab {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

using Cplx = std::complex<double>;
using CVec = std::vector<Cplx>;

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input fails a documented precondition (CLI exit code 12).
struct PreconditionError : Error {
    explicit PreconditionError(const std::string& what) : Error(what) {}
};

// Config/serialized input cannot be parsed (CLI exit code 11).
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

// Mode ODE has (numerically) no periodic solution: c0 too close to iZ.
struct ResonantModeError : PreconditionError {
    explicit ResonantModeError(const std::string& what) : PreconditionError(what) {}
};

// Galerkin system too ill-conditioned to solve.
struct SingularSystemError : Error {
    explicit SingularSystemError(const std::string& what) : Error(what) {}
};

// Galerkin truncation left a non-negligible spectral tail.
struct TruncationError : Error {
    explicit TruncationError(const std::string& what) : Error(what) {}
};

// Matrix pair fails the commutation requirement of the joint diagonalizer.
struct CommutatorError : PreconditionError {
    explicit CommutatorError(const std::string& what) : PreconditionError(what) {}
};

// A sign-change frame was requested for a coefficient with definite sign.
struct NotSignChangingError : PreconditionError {
    explicit NotSignChangingError(const std::string& what) : PreconditionError(what) {}
};

// Frame construction hit a degenerate extremum (grid cannot certify margins).
struct DegenerateExtremumError : Error {
    explicit DegenerateExtremumError(const std::string& what) : Error(what) {}
};

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace ghlab
