#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "excdiv/forest.hpp"

namespace excdiv {

inline constexpr int kDefaultExhaustCap = 7;

// Knobs for the universally-quantified checks. Quantifiers over "all
// effective divisors" are truncated to the coefficient box
// [0, cap]^s, where the default cap is the largest coefficient appearing
// in any total transform plus one; `box_budget` bounds the cell count per
// forest, shrinking the cap when necessary (recorded in the report).
struct SuiteOptions {
  std::optional<std::int64_t> box_cap_override;
  std::int64_t box_budget = std::int64_t{1} << 22;
  std::uint64_t sample_seed = 0;
};

struct Violation {
  std::string forest;  // serialized `.prox`, sufficient to replay
  std::string detail;
};

struct PropositionResult {
  std::string id;
  std::int64_t instances_checked = 0;
  std::vector<Violation> violations;
};

struct SuiteReport {
  std::string mode = "single";  // single | exhaustive | random
  int s_min = 0;
  int s_max = 0;
  std::optional<std::uint64_t> seed;
  std::int64_t count = 0;  // requested forest count (random mode)
  std::int64_t forests_checked = 0;

  std::optional<std::int64_t> box_cap_override;
  std::int64_t box_cap_max_used = 0;
  std::int64_t box_cap_reduced_forests = 0;

  std::vector<PropositionResult> propositions;  // sorted by id

  std::int64_t violations_total() const;
  std::string to_json(int indent = 2) const;  // stable key order
  std::string to_text() const;
};

// Every valid forest on exactly s points, each exactly once, in a fixed
// deterministic order. Throws when s exceeds the cap.
std::vector<ProximityForest> enumerate_forests(int s, int cap = kDefaultExhaustCap);

// Deterministic seeded forest: proximity sets drawn uniformly among the
// locally valid options, point by point.
ProximityForest random_forest(int s, std::uint64_t seed);

// Representative of the relabeling-isomorphism class of a forest: the
// lexicographically smallest serialization over all valid relabelings
// (the topological orders of the proximity relation). Two forests are
// isomorphic exactly when their canonical forms are equal. Intended for
// counting experiments; the generators do not deduplicate. Supported up
// to s = 9.
ProximityForest canonical_form(const ProximityForest& f);

// Runs the full proposition suite against one forest.
SuiteReport run_suite(const ProximityForest& f, const SuiteOptions& opts = {});

// Suite over many forests with deterministic merging; jobs <= 0 picks the
// hardware concurrency.
SuiteReport run_suite_over(const std::vector<ProximityForest>& forests,
                           const SuiteOptions& opts = {}, int jobs = 0);

}  // namespace excdiv
