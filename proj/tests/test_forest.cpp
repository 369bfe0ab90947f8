#include "doctest.h"

#include "excdiv/forest.hpp"
#include "fixtures.hpp"

using namespace excdiv;

TEST_CASE("single point file") {
  ProximityForest f = parse_forest("points 1\n");
  CHECK(f.s == 1);
  CHECK(f.prox[0].empty());
}

TEST_CASE("chain and satellite files parse") {
  ProximityForest chain = parse_forest("points 3\nprox 2: 1\nprox 3: 2\n");
  CHECK(chain == fixtures::chain3());

  ProximityForest sat = parse_forest("points 3\nprox 2: 1\nprox 3: 1 2\n");
  CHECK(sat == fixtures::sat3());
}

TEST_CASE("comments, blank lines and whitespace are tolerated") {
  ProximityForest f = parse_forest("# header\n\npoints   4\n  prox 2:  1\n# tail\nprox 4: 3\n");
  CHECK(f == fixtures::pair4());
}

TEST_CASE("forward reference is a P1 violation") {
  try {
    parse_forest("points 2\nprox 2: 3\n");
    FAIL("expected a rule violation");
  } catch (const RuleViolation& v) {
    CHECK(v.rule() == 1);
    CHECK(v.index() == 2);
  }
}

TEST_CASE("satellite without supporting chain is a P2 violation") {
  try {
    parse_forest("points 3\nprox 3: 1 2\n");
    FAIL("expected a rule violation");
  } catch (const RuleViolation& v) {
    CHECK(v.rule() == 2);
    CHECK(v.index() == 3);
  }
}

TEST_CASE("a pair can carry only one satellite (P4)") {
  try {
    parse_forest("points 4\nprox 2: 1\nprox 3: 1 2\nprox 4: 1 2\n");
    FAIL("expected a rule violation");
  } catch (const RuleViolation& v) {
    CHECK(v.rule() == 4);
    CHECK(v.index() == 4);
  }
}

TEST_CASE("grammar errors carry positions") {
  CHECK_THROWS_AS(parse_forest(""), ParseError);
  CHECK_THROWS_AS(parse_forest("prox 2: 1\n"), ParseError);
  CHECK_THROWS_AS(parse_forest("points 0\n"), ParseError);
  CHECK_THROWS_AS(parse_forest("points x\n"), ParseError);
  CHECK_THROWS_AS(parse_forest("points 3\nprox 2 1\n"), ParseError);
  CHECK_THROWS_AS(parse_forest("points 3\nprox 3: 2 1\n"), ParseError);   // pair order
  CHECK_THROWS_AS(parse_forest("points 3\nprox 5: 1\n"), ParseError);     // unknown point
  CHECK_THROWS_AS(parse_forest("points 3\nprox 2: 1\nprox 2: 1\n"), ParseError);

  try {
    parse_forest("points 3\nprox 3: 2 1\n");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("serialize round trip is exact") {
  for (const auto& f :
       {fixtures::chain1(), fixtures::chain3(), fixtures::sat3(), fixtures::pair4()}) {
    CHECK(parse_forest(serialize(f)) == f);
  }
}

TEST_CASE("proximity options match local validity") {
  ProximityForest f = fixtures::sat3();
  // After the satellite forest, the pair {1,2} is used and {2,3}, {1,3}
  // need 3's proximities; here prefix has s=3, so extend a copy.
  ProximityForest ext;
  ext.s = 4;
  ext.prox = {{}, {0}, {0, 1}, {}};
  auto options = proximity_options(ext, 3);
  // empty, {1}, {2}, {3}, and the pairs {1,3}, {2,3} (1-based); {1,2} is taken.
  CHECK(options.size() == 6);
  CHECK(options[0].empty());
  bool has_pair_12 = false;
  for (const auto& o : options)
    if (o == std::vector<int>{0, 1}) has_pair_12 = true;
  CHECK_FALSE(has_pair_12);
}
