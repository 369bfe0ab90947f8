#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "excdiv/lattice.hpp"

namespace excdiv {

// Tagged A_n / D_n / E_n classification. Valid ranks: A_n with n >= 1,
// D_n with n >= 4, E_n with n in {6,7,8}.
struct DynkinType {
  enum class Family { A, D, E };
  Family family = Family::A;
  int n = 1;

  DynkinType() = default;
  DynkinType(Family f, int rank);

  std::string str() const;
  static std::optional<DynkinType> parse(const std::string& text);

  bool operator==(const DynkinType&) const = default;
};

// Dual graph of a reduced effective divisor: one vertex per support
// component with its self-intersection, one edge per intersecting pair
// with the intersection number as multiplicity. Vertices are 0-based
// component indices in ascending order.
struct DualGraph {
  std::vector<int> vertices;
  std::vector<std::int64_t> self_int;
  struct Edge {
    int a, b;  // positions into `vertices`, a < b
    std::int64_t multiplicity;
  };
  std::vector<Edge> edges;
};

DualGraph dual_graph(const ExceptionalLattice& L, const Divisor& D);

// DOT rendering with vertex labels `e<i> (self=<n>)`; vertices and edges
// in deterministic index order.
std::string to_dot(const DualGraph& g);

// Recognizes an A-D-E configuration: reduced, connected, every component
// a -2-curve, pairwise intersections 0 or 1, and the dual graph one of
// the Dynkin trees. Returns the type, or nullopt with a diagnostic in
// *reason when the divisor is not such a configuration.
std::optional<DynkinType> classify_ade(const ExceptionalLattice& L, const Divisor& D,
                                       std::string* reason = nullptr);

// Same recognition on a bare symmetric intersection matrix whose rows
// are the components of a reduced divisor.
std::optional<DynkinType> classify_gram(const Matrix& gram, std::string* reason = nullptr);

// Gram matrix of the standard configuration of type t: all diagonal
// entries -2, adjacency the Dynkin tree. Vertex numbering: A_n is the
// path 1..n; D_n has the fork vertex first (neighbours 2, 3 and 4, with
// 4..n the long tail); E_n is the path 1..n-1 with vertex n attached to
// vertex 3.
Matrix abstract_lattice(const DynkinType& t);

// Fundamental cycle of a connected negative-definite configuration of
// -2-curves: starting from the reduced cycle, repeatedly bump the lowest
// component meeting the cycle positively until Z.e_i <= 0 for all i.
// The result satisfies Z >= (1,..,1) and Z^2 = -2.
std::vector<std::int64_t> fundamental_cycle(const Matrix& gram);

// For a contracted A-type configuration: the unique total transform E_j
// with Delta.E_j = 1 and the unique component theta of E_j meeting Delta.
// Both indices 1-based. theta also satisfies theta.E_j = -1, and Delta is
// disjoint from E_j.
struct ThetaResult {
  int j = 0;
  int theta = 0;
};

ThetaResult theta(const ExceptionalLattice& L, const Divisor& D);

// A maximal family of pairwise disjoint contracted A-type configurations
// (disjoint supports and zero mutual intersection), with its component
// budget sum(m_i + 1). Every budget is at most the lattice rank.
struct DisjointFamily {
  std::vector<Divisor> members;
  std::vector<DynkinType> types;
  std::int64_t budget = 0;
};

// Family enumeration alone, no budget assertion.
std::vector<DisjointFamily> disjoint_a_families(const ExceptionalLattice& L);

// Families with the budget bound asserted (std::logic_error on failure).
std::vector<DisjointFamily> disjoint_a_budget(const ExceptionalLattice& L);

}  // namespace excdiv
