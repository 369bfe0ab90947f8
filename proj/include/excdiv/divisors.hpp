#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "excdiv/lattice.hpp"

namespace excdiv {

// Outcome of an m-connectedness test. `order` is the largest m for which
// the divisor is m-connected, i.e. the minimum of A.B over proper
// decompositions; a single reduced component has no decompositions and is
// reported with the `irreducible` marker instead of a number.
struct DecompositionReport {
  bool m_connected = false;
  bool irreducible = false;
  std::optional<std::pair<Divisor, Divisor>> witness;  // A.B < m when present
  std::optional<std::int64_t> order;                   // empty iff irreducible
};

// 1 + (K.D + D^2)/2. D must be effective and non-zero; the evenness of
// K.D + D^2 is asserted.
std::int64_t arithmetic_genus(const ExceptionalLattice& L, const Divisor& D);

// Forward iteration over the ordered proper decompositions D = A + B with
// A, B effective non-zero: every A with 0 <= A <= D componentwise except
// the two trivial endpoints, in ascending odometer order.
class DecompositionRange {
public:
  explicit DecompositionRange(Divisor d);

  // Number of ordered decompositions: prod(d_i + 1) - 2.
  std::int64_t count() const;

  class iterator {
  public:
    iterator() = default;
    iterator(const Divisor* d, bool at_end);
    std::pair<Divisor, Divisor> operator*() const;
    iterator& operator++();
    bool operator!=(const iterator& o) const { return at_end_ != o.at_end_; }

  private:
    void advance();
    const Divisor* d_ = nullptr;
    Divisor a_;
    bool at_end_ = true;
  };

  iterator begin() const { return iterator(&d_, false); }
  iterator end() const { return iterator(&d_, true); }

private:
  Divisor d_;
};

inline DecompositionRange decompositions(const Divisor& d) { return DecompositionRange(d); }

// Exhaustive m-connectedness check with witness extraction. D effective.
DecompositionReport is_m_connected(const ExceptionalLattice& L, const Divisor& D,
                                   std::int64_t m);

// All effective non-zero divisors with the given canonical degree and
// self-intersection. In the E-basis the form is minus the identity, so
// candidates are the integer vectors of squared length -self_int and
// coordinate sum -k_deg, filtered for effectivity. Output is sorted
// lexicographically by E-coordinates. Requires self_int < 0.
std::vector<Divisor> enumerate_contracted(const ExceptionalLattice& L, std::int64_t k_deg,
                                          std::int64_t self_int);

// Partition of an effective divisor into its connected pieces: support
// indices are adjacent when their Gram entry is positive. Pieces are
// ordered by smallest support index.
std::vector<Divisor> connected_components(const ExceptionalLattice& L, const Divisor& D);

}  // namespace excdiv
