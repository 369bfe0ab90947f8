#include <set>

#include "doctest.h"
#include "json.hpp"

#include "excdiv/propcheck.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace excdiv;

namespace {

const PropositionResult& entry(const SuiteReport& rep, const std::string& id) {
  for (const auto& p : rep.propositions)
    if (p.id == id) return p;
  static PropositionResult missing;
  FAIL("missing proposition entry ", id);
  return missing;
}

}  // namespace

TEST_CASE("forest enumeration basics") {
  CHECK(enumerate_forests(1).size() == 1);

  auto two = enumerate_forests(2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].prox[1].empty());
  CHECK(two[1].prox[1] == std::vector<int>{0});

  CHECK(enumerate_forests(3).size() == 7);

  CHECK_THROWS_AS(enumerate_forests(0), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_forests(8), std::invalid_argument);
  CHECK(enumerate_forests(8, 8).size() > 0);
}

TEST_CASE("enumeration is deterministic, sound and complete") {
  for (int s = 1; s <= 5; ++s) {
    auto first = enumerate_forests(s);
    auto second = enumerate_forests(s);
    CHECK(first == second);

    std::set<std::string> seen;
    for (const auto& f : first) {
      CHECK(oracle::valid_forest(f.s, f.prox));
      CHECK(seen.insert(serialize(f)).second);  // no duplicates
    }
    CHECK(static_cast<std::int64_t>(first.size()) == oracle::count_valid_forests(s));
  }
}

TEST_CASE("random forests are valid and deterministic") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    ProximityForest f = random_forest(6, seed);
    CHECK(oracle::valid_forest(f.s, f.prox));
    CHECK(serialize(random_forest(6, seed)) == serialize(f));
    CHECK(parse_forest(serialize(f)) == f);
  }
  CHECK(random_forest(1, 99).prox[0].empty());
  CHECK_THROWS_AS(random_forest(0, 1), std::invalid_argument);
}

TEST_CASE("suite passes on the fixtures") {
  SuiteReport chain = run_suite(fixtures::chain3());
  CHECK(chain.violations_total() == 0);
  CHECK(entry(chain, "nodal-class-pivot-indices").instances_checked == 3);
  CHECK(entry(chain, "total-transform-one-connected").instances_checked == 3);

  SuiteReport sat = run_suite(fixtures::sat3());
  CHECK(sat.violations_total() == 0);
  CHECK(entry(sat, "deep-component-saturation").instances_checked == 1);

  SuiteReport pair = run_suite(fixtures::pair4());
  CHECK(pair.violations_total() == 0);
  CHECK(entry(pair, "disjoint-family-budget").instances_checked == 1);

  SuiteReport single = run_suite(fixtures::chain1());
  CHECK(single.violations_total() == 0);
}

TEST_CASE("suite reports are deterministic") {
  SuiteOptions opts;
  std::string a = run_suite(fixtures::sat3(), opts).to_json();
  std::string b = run_suite(fixtures::sat3(), opts).to_json();
  CHECK(a == b);
}

TEST_CASE("cap override is recorded") {
  SuiteOptions opts;
  opts.box_cap_override = 1;
  SuiteReport rep = run_suite(fixtures::chain3(), opts);
  CHECK(rep.box_cap_max_used == 1);
  CHECK(rep.violations_total() == 0);
  CHECK(rep.to_json().find("\"override\": 1") != std::string::npos);
}

TEST_CASE("report schema is stable") {
  nlohmann::json j = nlohmann::json::parse(run_suite(fixtures::chain3()).to_json());

  std::vector<std::string> top;
  for (auto it = j.begin(); it != j.end(); ++it) top.push_back(it.key());
  CHECK(top == std::vector<std::string>{"box_cap", "forests_checked", "generator",
                                        "propositions", "violations_total"});

  std::vector<std::string> ids;
  for (const auto& p : j["propositions"]) {
    ids.push_back(p["id"]);
    CHECK(p.contains("instances_checked"));
    CHECK(p.contains("violations"));
  }
  CHECK(ids == std::vector<std::string>{"ade-numerics",
                                        "ade-recognition-roundtrip",
                                        "artin-cycle",
                                        "basis-roundtrip",
                                        "contracted-ade-is-A",
                                        "contracted-genus-nonpositive",
                                        "deep-component-saturation",
                                        "disjoint-config-nesting",
                                        "disjoint-family-budget",
                                        "e-basis-orthonormal",
                                        "genus-additivity",
                                        "internal-error",
                                        "k-degree-adjunction",
                                        "k-degree-total-transforms",
                                        "minus-one-classes-are-total-transforms",
                                        "neg-definite",
                                        "nested-orthogonality",
                                        "nodal-class-pairings-bounded",
                                        "nodal-class-pivot-indices",
                                        "nodal-classes-one-connected",
                                        "one-connected-bounded-pairing",
                                        "orthogonal-class-pivot-disjoint",
                                        "theta-distinct",
                                        "theta-support-disjoint",
                                        "theta-unique-component",
                                        "total-transform-nesting",
                                        "total-transform-one-connected",
                                        "total-transform-support"});
}

TEST_CASE("canonical form collapses isomorphic forests") {
  // One proximity between two of three points, in every labeling.
  ProximityForest a = parse_forest("points 3\nprox 2: 1\n");
  ProximityForest b = parse_forest("points 3\nprox 3: 1\n");
  ProximityForest c = parse_forest("points 3\nprox 3: 2\n");
  CHECK(canonical_form(a) == canonical_form(b));
  CHECK(canonical_form(b) == canonical_form(c));

  // Chain and satellite stay distinct.
  CHECK_FALSE(canonical_form(fixtures::chain3()) == canonical_form(fixtures::sat3()));

  // A canonical form is a fixed point.
  ProximityForest canon = canonical_form(fixtures::sat3());
  CHECK(canonical_form(canon) == canon);

  // Distinct isomorphism classes among the 7 forests on three points.
  std::set<std::string> classes;
  for (const auto& f : enumerate_forests(3)) classes.insert(serialize(canonical_form(f)));
  CHECK(classes.size() == 5);
}

TEST_CASE("merged runs sum their instance counts") {
  std::vector<ProximityForest> forests = {fixtures::chain3(), fixtures::sat3()};
  SuiteReport merged = run_suite_over(forests, SuiteOptions{}, 2);
  CHECK(merged.forests_checked == 2);
  CHECK(merged.violations_total() == 0);

  SuiteReport a = run_suite(fixtures::chain3());
  SuiteReport b = run_suite(fixtures::sat3());
  CHECK(entry(merged, "contracted-genus-nonpositive").instances_checked ==
        entry(a, "contracted-genus-nonpositive").instances_checked +
            entry(b, "contracted-genus-nonpositive").instances_checked);

  // Merging is deterministic regardless of worker count.
  SuiteReport merged1 = run_suite_over(forests, SuiteOptions{}, 1);
  merged1.mode = merged.mode;
  CHECK(merged.to_json() == merged1.to_json());
}
