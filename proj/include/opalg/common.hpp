#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace opalg {

using Complex = std::complex<double>;

/// Numeric tolerances used across the toolkit.  Algebraic identity checks,
/// eigenvalue positivity slack and search verdicts deliberately live on
/// different scales so that linear-algebra noise never masquerades as an
/// optimization result.
namespace tol {
inline constexpr double kAlgebraic = 1e-9;      // residuals of exact identities
inline constexpr double kEigenFloor = 1e-9;     // PSD slack on eigenvalues
inline constexpr double kSearch = 1e-6;         // optimization/probe verdicts
inline constexpr double kSupportCutoff = 1e-10; // relative spectral cutoff
inline constexpr double kGramPivot = 1e-10;     // Gram-Schmidt pivot threshold
inline constexpr double kSmoothing = 1e-8;      // singular-value smoothing
}  // namespace tol

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEEULL;

/// Malformed values: shape mismatches, bad parameters, schema violations.
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A well-posed request that provably has no solution.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Data that contradicts a structural hypothesis (usually a tolerance failure).
struct InconsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Numerical degeneracy: iteration caps, failed stabilization.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace opalg
