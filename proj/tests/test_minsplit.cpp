#include <random>

#include "doctest.h"

#include "excdiv/minsplit.hpp"
#include "excdiv/propcheck.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace excdiv;
using detail::min_proper_split;
using detail::SplitStrategy;

namespace {

void check_split(const ProximityForest& f, const ExceptionalLattice& L, const Divisor& d) {
  auto expected = oracle::min_split(f, d.e);
  REQUIRE(expected.has_value());

  for (SplitStrategy strat : {SplitStrategy::Naive, SplitStrategy::MinCut}) {
    detail::SplitResult got = min_proper_split(L, d, strat);
    CHECK(got.min_pairing == *expected);
    Divisor b = d - got.argmin;
    CHECK(got.argmin.is_effective());
    CHECK(b.is_effective());
    CHECK(L.intersect(got.argmin, b) == got.min_pairing);
  }
}

}  // namespace

TEST_CASE("both strategies match the reference minimum") {
  std::mt19937_64 rng(7);
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    int s = 2 + static_cast<int>(seed % 4);
    ProximityForest f = random_forest(s, seed * 31);
    ExceptionalLattice L(f);
    for (int trial = 0; trial < 12; ++trial) {
      Divisor d = Divisor::zero(s);
      bool nontrivial = false;
      for (int i = 0; i < s; ++i) {
        d.e[i] = static_cast<std::int64_t>(rng() % 4);
        nontrivial |= d.e[i] > 0;
      }
      if (!nontrivial || d.is_irreducible()) continue;
      check_split(f, L, d);
    }
  }
}

TEST_CASE("fixture splits") {
  ExceptionalLattice chain(fixtures::chain3());
  check_split(fixtures::chain3(), chain, Divisor({1, 1, 1}));
  check_split(fixtures::chain3(), chain, Divisor({2, 1, 0}));
  check_split(fixtures::chain3(), chain, Divisor({3, 3, 3}));

  ExceptionalLattice pair(fixtures::pair4());
  check_split(fixtures::pair4(), pair, Divisor({1, 0, 1, 0}));
  check_split(fixtures::pair4(), pair, Divisor({2, 2, 2, 2}));

  ExceptionalLattice sat(fixtures::sat3());
  check_split(fixtures::sat3(), sat, Divisor({1, 1, 2}));
  check_split(fixtures::sat3(), sat, Divisor({2, 0, 3}));
}

TEST_CASE("single reduced components are rejected") {
  ExceptionalLattice chain(fixtures::chain3());
  CHECK_THROWS_AS(min_proper_split(chain, Divisor({0, 1, 0})), std::invalid_argument);
  CHECK_THROWS_AS(min_proper_split(chain, Divisor({0, -1, 0})), std::invalid_argument);
}

TEST_CASE("witness search with a target") {
  ExceptionalLattice pair(fixtures::pair4());
  auto split = detail::find_split_at_most(pair, Divisor({1, 0, 1, 0}), 0);
  REQUIRE(split.has_value());
  Divisor b = Divisor({1, 0, 1, 0}) - *split;
  CHECK(pair.intersect(*split, b) <= 0);

  // e1 + e2 on the chain is 1-connected: no split with pairing <= 0.
  ExceptionalLattice chain(fixtures::chain3());
  CHECK_FALSE(detail::find_split_at_most(chain, Divisor({1, 1, 0}), 0).has_value());
}

TEST_CASE("large boxes route through the cut solver") {
  // Stacked satellites make total-transform coefficients grow quickly.
  ProximityForest tower;
  tower.s = 6;
  tower.prox = {{}, {0}, {0, 1}, {1, 2}, {2, 3}, {3, 4}};
  validate(tower);
  ExceptionalLattice L(tower);

  Divisor big = Divisor::zero(6);
  for (int i = 0; i < 6; ++i) big.e[i] = 9;
  // Box of 10^6 cells exceeds the naive threshold; Auto must still agree
  // with the reference scan.
  auto expected = oracle::min_split(tower, big.e);
  REQUIRE(expected.has_value());
  detail::SplitResult got = min_proper_split(L, big);
  CHECK(got.min_pairing == *expected);
  CHECK(L.intersect(got.argmin, big - got.argmin) == got.min_pairing);
}
