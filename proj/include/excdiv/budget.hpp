#pragma once

#include <cstdint>
#include <vector>

#include "excdiv/dynkin.hpp"
#include "excdiv/rational.hpp"

namespace excdiv {

// Topological Euler number of the exceptional configuration of type t:
// a tree of n rational curves has Euler number n + 1.
std::int64_t euler_number(const DynkinType& t);

// Order of the local fundamental group attached to a canonical
// singularity of type t: cyclic n+1 for A_n, binary dihedral 4(n-2) for
// D_n, binary tetrahedral/octahedral/icosahedral 24/48/120 for E_6/7/8.
std::int64_t group_order(const DynkinType& t);

// nu = e - 1/|G|, in closed form per family.
Rational nu(const DynkinType& t);

// 12 chi - (4/3) k2.
Rational bound_miyaoka(std::int64_t chi, std::int64_t k2);

// 12 chi - (4/3) k2 - s/3. Requires s >= 0.
Rational bound_theorem(std::int64_t chi, std::int64_t k2, std::int64_t s);

// 12 chi - (4/3) k2 - s/12; for s > 0 weaker than bound_theorem by s/4.
// Requires s >= 0.
Rational bound_megyesi_langer(std::int64_t chi, std::int64_t k2, std::int64_t s);

// Invariants of a surface with canonical singularities, as fed to the
// budget check: chi(O), K^2, the number of blow-ups separating the
// minimal resolution from the minimal model, and the singularity types.
// The hypotheses behind the inequality (non-negative Kodaira dimension,
// only canonical singularities) are the caller's responsibility.
struct SingularityBudget {
  std::int64_t chi = 0;
  std::int64_t k2 = 0;
  std::int64_t s = 0;
  std::vector<DynkinType> sings;
};

struct BudgetVerdict {
  Rational sum_nu;
  Rational bound;  // the s-inclusive bound of the extended inequality
  bool holds = false;
  Rational slack;  // bound - sum_nu
  // Set when the total meets the plain Miyaoka bound exactly, the case in
  // which equality forces the canonical class of the singular surface to
  // be nef.
  bool equality_implies_nef = false;
};

BudgetVerdict check_budget(const SingularityBudget& b);

}  // namespace excdiv
