#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace excdiv {

// Thrown on malformed `.prox` input. Positions are 1-based.
class ParseError : public std::runtime_error {
public:
  ParseError(std::string msg, int line, int column)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(column) + ": " + std::move(msg)),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

// Thrown when a structurally well-formed forest breaks one of the
// proximity rules P1, P2, P4. `rule()` is 1, 2 or 4; `index()` is the
// 1-based point the violation was detected at.
class RuleViolation : public std::runtime_error {
public:
  RuleViolation(int rule, int index, std::string detail)
      : std::runtime_error("proximity rule P" + std::to_string(rule) +
                           " violated at point " + std::to_string(index) +
                           ": " + std::move(detail)),
        rule_(rule),
        index_(index) {}
  int rule() const { return rule_; }
  int index() const { return index_; }

private:
  int rule_;
  int index_;
};

// Combinatorial description of a composition of s point blow-ups: for
// every point q_i the set of earlier points it is proximate to, i.e. the
// earlier exceptional curves it lies on. Points are 1-based in all
// external interfaces; `prox` is indexed 0-based with values 0-based.
//
// Validity rules:
//   P1  every member of prox(i) precedes i, and |prox(i)| <= 2;
//   P2  prox(i) = {j,k}, j < k  implies  j in prox(k);
//   P4  no two points share the same two-element proximity set.
struct ProximityForest {
  int s = 0;
  std::vector<std::vector<int>> prox;  // prox[i]: sorted, 0-based

  bool operator==(const ProximityForest&) const = default;
};

// Parses `.prox` text. Throws ParseError on grammar problems and
// RuleViolation when the described forest breaks P1/P2/P4.
ProximityForest parse_forest(std::string_view text);

// Canonical `.prox` rendering: `points s` then one `prox` line per point
// with a non-empty proximity set, ascending. parse_forest(serialize(f))
// reproduces f exactly.
std::string serialize(const ProximityForest& f);

// Checks P1/P2/P4; throws RuleViolation naming the rule and point.
void validate(const ProximityForest& f);

// All proximity sets point i (0-based) may take given the choices already
// made for points 0..i-1. Deterministic order: empty set, singletons
// ascending, then pairs in lexicographic order. Shared by the exhaustive
// and the random generator.
std::vector<std::vector<int>> proximity_options(const ProximityForest& prefix,
                                                int i);

}  // namespace excdiv
