#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "excdiv/divisor.hpp"
#include "excdiv/forest.hpp"

namespace excdiv {

using Matrix = std::vector<std::vector<std::int64_t>>;

// The rank-s lattice spanned by the exceptional curves of a composition
// of s blow-ups, with its two distinguished bases:
//
//   E_i  total transforms   -- orthonormal up to sign: E_i.E_j = -delta_ij,
//                              K.E_i = -1;
//   e_i  strict transforms  -- the irreducible components,
//                              e_i = E_i - sum of E_m over m proximate to i.
//
// Divisors carry e-coordinates. The intersection form (`gram`), the basis
// change and the canonical-degree functional are all exact integers.
// Immutable after construction; safe to share across threads.
class ExceptionalLattice {
public:
  // Builds the lattice and certifies it: the Gram matrix is checked to be
  // negative definite via its leading principal minors, the basis change
  // is checked to invert the strict-transform expansion, and each total
  // transform is checked effective. A failure here is a bug, reported as
  // std::logic_error.
  explicit ExceptionalLattice(const ProximityForest& f);

  int rank() const { return s_; }
  const ProximityForest& forest() const { return forest_; }

  const Matrix& gram() const { return gram_; }
  std::int64_t gram(int i, int j) const { return gram_[i][j]; }
  const std::vector<std::int64_t>& k_degrees() const { return k_deg_; }

  // Strict transforms expanded in the E-basis (column i = e_{i+1}).
  const Matrix& strict_in_E() const { return e_in_E_; }
  // Total transforms expanded in the e-basis (column i = E_{i+1}).
  const Matrix& total_in_e() const { return E_in_e_; }

  // Leading principal minors of the Gram matrix, det of the k x k corner
  // at index k-1. Signs alternate starting negative; this is the
  // negative-definiteness certificate.
  const std::vector<std::int64_t>& leading_minors() const { return minors_; }

  std::int64_t intersect(const Divisor& a, const Divisor& b) const;
  std::int64_t self_intersection(const Divisor& a) const { return intersect(a, a); }
  std::int64_t canonical_degree(const Divisor& d) const;

  // Total transform E_i as a divisor; i is 1-based.
  Divisor total_transform(int i) const;

  std::vector<std::int64_t> to_E_basis(const Divisor& d) const;
  Divisor to_e_basis(std::span<const std::int64_t> e_basis_coords) const;

  // Pairing of a divisor with the i-th (0-based) total transform; O(1)
  // amortized via the proximity structure.
  std::int64_t pair_with_total(const Divisor& d, int i) const;

private:
  void check_dim(const Divisor& d) const;

  ProximityForest forest_;
  int s_ = 0;
  Matrix e_in_E_;  // M: column j = e_{j+1} in E-coordinates
  Matrix E_in_e_;  // M^-1: column j = E_{j+1} in e-coordinates
  Matrix gram_;    // -M^T M
  std::vector<std::int64_t> k_deg_;
  std::vector<std::int64_t> minors_;
};

}  // namespace excdiv
