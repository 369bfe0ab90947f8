#include <random>

#include "doctest.h"

#include "excdiv/budget.hpp"

using namespace excdiv;

namespace {

DynkinType A(int n) { return DynkinType(DynkinType::Family::A, n); }
DynkinType D(int n) { return DynkinType(DynkinType::Family::D, n); }
DynkinType E(int n) { return DynkinType(DynkinType::Family::E, n); }

}  // namespace

TEST_CASE("rational arithmetic") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(4, 6) == Rational(2, 3));
  CHECK(Rational(1, -2) == Rational(-1, 2));
  CHECK(Rational(3, 2) * Rational(2, 3) == Rational(1));
  CHECK(Rational(7, 3) - Rational(1, 3) == Rational(2));
  CHECK(Rational(1, 2) < Rational(2, 3));
  CHECK(Rational(-5, 4) < Rational(0));
  CHECK(Rational(0).str() == "0/1");
  CHECK(Rational(24).str() == "24/1");
  CHECK((Rational(1) / Rational(3)).str() == "1/3");
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("nu closed forms") {
  CHECK(nu(A(1)) == Rational(3, 2));
  CHECK(nu(A(2)) == Rational(8, 3));
  CHECK(nu(D(4)) == Rational(39, 8));
  CHECK(nu(E(6)) == Rational(7) - Rational(1, 24));
  CHECK(nu(E(7)) == Rational(8) - Rational(1, 48));
  CHECK(nu(E(8)) == Rational(1079, 120));
}

TEST_CASE("nu agrees with euler number minus inverse group order") {
  for (int n = 1; n <= 50; ++n)
    CHECK(nu(A(n)) == Rational(euler_number(A(n))) - Rational(1, group_order(A(n))));
  for (int n = 4; n <= 50; ++n)
    CHECK(nu(D(n)) == Rational(euler_number(D(n))) - Rational(1, group_order(D(n))));
  for (int n = 6; n <= 8; ++n)
    CHECK(nu(E(n)) == Rational(euler_number(E(n))) - Rational(1, group_order(E(n))));

  CHECK(group_order(E(6)) == 24);
  CHECK(group_order(E(7)) == 48);
  CHECK(group_order(E(8)) == 120);
  CHECK(group_order(D(4)) == 8);
  CHECK(group_order(A(5)) == 6);
}

TEST_CASE("bounds") {
  CHECK(bound_miyaoka(2, 0) == Rational(24));
  CHECK(bound_miyaoka(0, 0) == Rational(0));
  CHECK(bound_miyaoka(1, 3) == Rational(8));

  CHECK(bound_theorem(1, 1, 1) == Rational(31, 3));
  CHECK(bound_theorem(2, 0, 6) == Rational(22));
  CHECK(bound_theorem(5, -2, 0) == bound_miyaoka(5, -2));

  CHECK(bound_megyesi_langer(1, 1, 12) == Rational(29, 3));
  CHECK(bound_theorem(1, 1, 12) == Rational(20, 3));
  CHECK(bound_megyesi_langer(1, 1, 12) - bound_theorem(1, 1, 12) == Rational(3));
  CHECK(bound_megyesi_langer(2, 0, 4) == Rational(71, 3));
  CHECK(bound_megyesi_langer(3, 1, 0) == bound_miyaoka(3, 1));

  CHECK_THROWS_AS(bound_theorem(1, 1, -1), std::invalid_argument);
  CHECK_THROWS_AS(bound_megyesi_langer(1, 1, -1), std::invalid_argument);
}

TEST_CASE("budget verdicts") {
  SingularityBudget kummer{2, 0, 0, std::vector<DynkinType>(16, A(1))};
  BudgetVerdict v = check_budget(kummer);
  CHECK(v.sum_nu == Rational(24));
  CHECK(v.bound == Rational(24));
  CHECK(v.holds);
  CHECK(v.slack == Rational(0));
  CHECK(v.equality_implies_nef);

  SingularityBudget small{1, 1, 1, {A(2)}};
  BudgetVerdict w = check_budget(small);
  CHECK(w.sum_nu == Rational(8, 3));
  CHECK(w.bound == Rational(31, 3));
  CHECK(w.holds);
  CHECK(w.slack == Rational(23, 3));
  CHECK_FALSE(w.equality_implies_nef);

  SingularityBudget violated{0, 0, 0, {A(1)}};
  BudgetVerdict x = check_budget(violated);
  CHECK(x.sum_nu == Rational(3, 2));
  CHECK_FALSE(x.holds);
  CHECK(x.slack == Rational(-3, 2));
  CHECK_FALSE(x.equality_implies_nef);
}

TEST_CASE("budget monotonicity") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    SingularityBudget b;
    b.chi = static_cast<std::int64_t>(rng() % 9) - 4;
    b.k2 = static_cast<std::int64_t>(rng() % 9) - 4;
    b.s = static_cast<std::int64_t>(rng() % 10);
    int sings = static_cast<int>(rng() % 4);
    for (int i = 0; i < sings; ++i) b.sings.push_back(A(1 + static_cast<int>(rng() % 6)));

    BudgetVerdict base = check_budget(b);

    SingularityBudget more = b;
    more.sings.push_back(D(4 + static_cast<int>(rng() % 4)));
    CHECK(check_budget(more).slack < base.slack);

    SingularityBudget blown = b;
    blown.s += 1;
    CHECK(base.slack - check_budget(blown).slack == Rational(1, 3));
  }
}
