#include <random>

#include "doctest.h"

#include "excdiv/lattice.hpp"
#include "excdiv/propcheck.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace excdiv;

namespace {

Divisor div_of(std::vector<std::int64_t> v) { return Divisor(std::move(v)); }

}  // namespace

TEST_CASE("rank one lattice") {
  ExceptionalLattice L(fixtures::chain1());
  CHECK(L.rank() == 1);
  CHECK(L.gram(0, 0) == -1);
  CHECK(L.total_transform(1) == div_of({1}));
  CHECK(L.k_degrees()[0] == -1);
  CHECK(L.to_E_basis(div_of({1})) == std::vector<std::int64_t>{1});
}

TEST_CASE("chain of three blow-ups") {
  ExceptionalLattice L(fixtures::chain3());
  Matrix expected = {{-2, 1, 0}, {1, -2, 1}, {0, 1, -1}};
  CHECK(L.gram() == expected);

  CHECK(L.total_transform(1) == div_of({1, 1, 1}));
  CHECK(L.total_transform(2) == div_of({0, 1, 1}));
  CHECK(L.total_transform(3) == div_of({0, 0, 1}));
  CHECK(L.k_degrees() == std::vector<std::int64_t>({0, 0, -1}));

  CHECK(L.intersect(div_of({1, 0, 0}), div_of({0, 1, 0})) == 1);
  CHECK(L.intersect(L.total_transform(2), L.total_transform(3)) == 0);
  CHECK(L.intersect(div_of({1, 0, 0}), div_of({1, 0, 0})) == L.gram(0, 0));

  CHECK(L.canonical_degree(L.total_transform(1)) == -1);
  CHECK(L.canonical_degree(div_of({1, 0, 0})) == 0);

  CHECK(L.to_E_basis(div_of({1, 1, 0})) == std::vector<std::int64_t>({1, 0, -1}));
}

TEST_CASE("satellite point of three blow-ups") {
  ExceptionalLattice L(fixtures::sat3());
  CHECK(L.gram(0, 0) == -3);
  CHECK(L.k_degrees()[0] == 1);
  CHECK(L.canonical_degree(div_of({1, 0, 0})) == 1);
  CHECK(L.total_transform(1) == div_of({1, 1, 2}));
  CHECK(L.gram(0, 1) == 0);  // separated by the satellite blow-up
  CHECK(L.gram(0, 2) == 1);
  CHECK(L.gram(1, 2) == 1);
}

TEST_CASE("leading minors certify negative definiteness") {
  for (const auto& f :
       {fixtures::chain1(), fixtures::chain3(), fixtures::sat3(), fixtures::pair4()}) {
    ExceptionalLattice L(f);
    const auto& minors = L.leading_minors();
    for (int k = 0; k < L.rank(); ++k) {
      if (k % 2 == 0)
        CHECK(minors[k] < 0);
      else
        CHECK(minors[k] > 0);
    }
  }
}

TEST_CASE("basis round trip on both bases") {
  ExceptionalLattice L(fixtures::pair4());
  for (int i = 0; i < 4; ++i) {
    Divisor d = Divisor::unit(4, i);
    CHECK(L.to_e_basis(L.to_E_basis(d)) == d);
  }
  Divisor mixed = div_of({3, -2, 0, 5});
  CHECK(L.to_e_basis(L.to_E_basis(mixed)) == mixed);
}

TEST_CASE("contract violations are reported") {
  ExceptionalLattice L(fixtures::chain3());
  CHECK_THROWS_AS(L.intersect(div_of({1, 0}), div_of({1, 0, 0})), std::invalid_argument);
  CHECK_THROWS_AS(L.total_transform(0), std::invalid_argument);
  CHECK_THROWS_AS(L.total_transform(4), std::invalid_argument);
  CHECK_THROWS_AS((void)L.to_e_basis(std::vector<std::int64_t>{1, 2}), std::invalid_argument);
}

TEST_CASE("total-transform pairing fast path matches the bilinear form") {
  std::mt19937_64 rng(23);
  for (std::uint64_t seed = 50; seed < 62; ++seed) {
    int s = 2 + static_cast<int>(seed % 6);
    ProximityForest f = random_forest(s, seed);
    ExceptionalLattice L(f);
    for (int trial = 0; trial < 8; ++trial) {
      Divisor d = Divisor::zero(s);
      for (int i = 0; i < s; ++i) d.e[i] = static_cast<std::int64_t>(rng() % 7) - 3;
      for (int i = 0; i < s; ++i)
        CHECK(L.pair_with_total(d, i) == L.intersect(d, L.total_transform(i + 1)));
    }
  }
}

TEST_CASE("random lattices agree with the reference pairing") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    int s = 2 + static_cast<int>(seed % 7);
    ProximityForest f = random_forest(s, seed);
    ExceptionalLattice L(f);
    oracle::Pairing p(f);

    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) {
        std::vector<std::int64_t> xi(s, 0), xj(s, 0);
        xi[i] = 1;
        xj[j] = 1;
        CHECK(L.gram(i, j) == p.pair(xi, xj));
      }
    for (int i = 0; i < s; ++i) {
      std::vector<std::int64_t> xi(s, 0);
      xi[i] = 1;
      CHECK(L.k_degrees()[i] == p.k_degree(xi));
      CHECK(L.k_degrees()[i] == -2 - L.gram(i, i));
    }
    for (int i = 1; i <= s; ++i) {
      Divisor E = L.total_transform(i);
      CHECK(E.is_effective());
      CHECK(E.e[i - 1] == 1);
      CHECK(L.canonical_degree(E) == -1);
      for (int j = 1; j <= s; ++j)
        CHECK(L.intersect(E, L.total_transform(j)) == (i == j ? -1 : 0));
    }
  }
}
