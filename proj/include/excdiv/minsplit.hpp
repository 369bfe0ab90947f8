#pragma once

#include <cstdint>
#include <optional>

#include "excdiv/lattice.hpp"

namespace excdiv::detail {

// Result of minimizing A.B over the proper decompositions D = A + B into
// non-zero effective parts.
struct SplitResult {
  std::int64_t min_pairing = 0;
  Divisor argmin;  // an A attaining the minimum
};

enum class SplitStrategy {
  Auto,    // naive scan for small coefficient boxes, min-cut otherwise
  Naive,   // odometer over all decompositions
  MinCut,  // staircase max-flow reduction
};

// Exact minimum of A.B. Requires D effective with at least one proper
// decomposition (i.e. not a single reduced component).
//
// The objective is quadratic with non-negative off-diagonal Gram entries,
// which makes it submodular over the coefficient box, so the min-cut
// route is exact; the naive route is the reference implementation.
SplitResult min_proper_split(const ExceptionalLattice& L, const Divisor& D,
                             SplitStrategy strategy = SplitStrategy::Auto);

// Fast search for a proper decomposition with A.B <= target. Tries cheap
// witnesses (support components, multiples of a single component) before
// falling back to the exact minimum. Returns the part A, or nullopt when
// min A.B > target.
std::optional<Divisor> find_split_at_most(const ExceptionalLattice& L, const Divisor& D,
                                          std::int64_t target);

}  // namespace excdiv::detail
