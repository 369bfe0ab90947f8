#include "excdiv/budget.hpp"

#include <stdexcept>

namespace excdiv {

std::int64_t euler_number(const DynkinType& t) { return t.n + 1; }

std::int64_t group_order(const DynkinType& t) {
  switch (t.family) {
    case DynkinType::Family::A: return t.n + 1;
    case DynkinType::Family::D: return 4 * (static_cast<std::int64_t>(t.n) - 2);
    case DynkinType::Family::E: return t.n == 6 ? 24 : t.n == 7 ? 48 : 120;
  }
  throw std::invalid_argument("group_order: invalid family");
}

Rational nu(const DynkinType& t) {
  const std::int64_t n = t.n;
  switch (t.family) {
    case DynkinType::Family::A: return Rational(n + 1) - Rational(1, n + 1);
    case DynkinType::Family::D: return Rational(n + 1) - Rational(1, 4 * (n - 2));
    case DynkinType::Family::E:
      return Rational(n + 1) - Rational(1, t.n == 6 ? 24 : t.n == 7 ? 48 : 120);
  }
  throw std::invalid_argument("nu: invalid family");
}

Rational bound_miyaoka(std::int64_t chi, std::int64_t k2) {
  return Rational(12) * Rational(chi) - Rational(4, 3) * Rational(k2);
}

Rational bound_theorem(std::int64_t chi, std::int64_t k2, std::int64_t s) {
  if (s < 0) throw std::invalid_argument("bound_theorem: blow-up count must be non-negative");
  return bound_miyaoka(chi, k2) - Rational(s, 3);
}

Rational bound_megyesi_langer(std::int64_t chi, std::int64_t k2, std::int64_t s) {
  if (s < 0)
    throw std::invalid_argument("bound_megyesi_langer: blow-up count must be non-negative");
  return bound_miyaoka(chi, k2) - Rational(s, 12);
}

BudgetVerdict check_budget(const SingularityBudget& b) {
  if (b.s < 0) throw std::invalid_argument("check_budget: blow-up count must be non-negative");
  BudgetVerdict v;
  v.sum_nu = Rational(0);
  for (const DynkinType& t : b.sings) v.sum_nu += nu(t);
  v.bound = bound_theorem(b.chi, b.k2, b.s);
  v.holds = v.sum_nu <= v.bound;
  v.slack = v.bound - v.sum_nu;
  v.equality_implies_nef = v.holds && v.sum_nu == bound_miyaoka(b.chi, b.k2);
  return v;
}

}  // namespace excdiv
