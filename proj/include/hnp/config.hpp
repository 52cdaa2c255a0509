#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hnp {

/// Numeric tolerances shared by every module.
struct Tolerances {
  /// Minimum |z1 x z2| for a lattice basis to count as non-degenerate.
  double degenerate_cross = 1e-12;
  /// Lattice coordinates this close to an integer are snapped onto it, which
  /// keeps reduce_to_cell idempotent on cell boundaries.
  double lattice_snap = 1e-12;
  /// Default unit-edge tolerance for graphs built from double coordinates.
  double edge = 1e-9;
  /// Relative slack when turning 1/eps into an integer edge bound.
  double integer_snap = 1e-9;
};

inline constexpr Tolerances kTolerances{};

/// Seed used whenever a caller does not supply one. Runs are reproducible by
/// default; nothing in the library reads the clock.
inline constexpr std::uint64_t kDefaultSeed = 0x48'4E'50'2018ULL;

/// Malformed input: bad parameters, unparsable files, unknown names.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A search ran out of its node budget before reaching an answer.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed certificate failed its own exact check.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace hnp
