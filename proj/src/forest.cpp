#include "excdiv/forest.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>

namespace excdiv {

namespace {

// Splits a line into whitespace-separated tokens, remembering the column
// each token starts at.
struct Token {
  std::string text;
  int column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    out.push_back({std::string(line.substr(start, i - start)),
                   static_cast<int>(start) + 1});
  }
  return out;
}

long long parse_int(const Token& tok, int line) {
  const std::string& t = tok.text;
  std::size_t k = 0;
  if (k < t.size() && (t[k] == '+' || t[k] == '-')) ++k;
  if (k == t.size()) throw ParseError("expected an integer, got '" + t + "'", line, tok.column);
  for (; k < t.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(t[k])))
      throw ParseError("expected an integer, got '" + t + "'", line, tok.column);
  try {
    return std::stoll(t);
  } catch (const std::out_of_range&) {
    throw ParseError("integer out of range: '" + t + "'", line, tok.column);
  }
}

}  // namespace

ProximityForest parse_forest(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  bool have_points = false;
  ProximityForest f;
  std::vector<bool> seen;

  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::vector<Token> toks = tokenize(raw);
    if (toks.empty() || toks[0].text[0] == '#') continue;

    if (!have_points) {
      if (toks[0].text != "points")
        throw ParseError("expected 'points <s>'", lineno, toks[0].column);
      if (toks.size() != 2)
        throw ParseError("'points' takes exactly one argument", lineno, toks[0].column);
      long long s = parse_int(toks[1], lineno);
      if (s < 1 || s > 4096)
        throw ParseError("point count must be between 1 and 4096", lineno, toks[1].column);
      f.s = static_cast<int>(s);
      f.prox.assign(f.s, {});
      seen.assign(f.s, false);
      have_points = true;
      continue;
    }

    if (toks[0].text != "prox")
      throw ParseError("expected 'prox <i>: <j> [<k>]'", lineno, toks[0].column);
    if (toks.size() < 3 || toks.size() > 4)
      throw ParseError("'prox' takes an index and one or two points", lineno, toks[0].column);

    Token head = toks[1];
    if (head.text.empty() || head.text.back() != ':')
      throw ParseError("expected '<i>:' after 'prox'", lineno, head.column);
    head.text.pop_back();
    long long i = parse_int(head, lineno);
    if (i < 1 || i > f.s)
      throw ParseError("point index " + std::to_string(i) + " out of range", lineno, head.column);
    if (seen[i - 1])
      throw ParseError("duplicate proximity line for point " + std::to_string(i),
                       lineno, head.column);
    seen[i - 1] = true;

    std::vector<int> ps;
    for (std::size_t t = 2; t < toks.size(); ++t) {
      long long j = parse_int(toks[t], lineno);
      // Anything >= i, including indices beyond s, is a P1 matter caught
      // by validate(); only non-positive names are malformed.
      if (j < 1)
        throw ParseError("point index " + std::to_string(j) + " out of range", lineno,
                         toks[t].column);
      ps.push_back(static_cast<int>(j) - 1);
    }
    if (ps.size() == 2 && ps[0] >= ps[1])
      throw ParseError("pair must be given in increasing order", lineno, toks[2].column);
    f.prox[i - 1] = ps;
  }

  if (!have_points) throw ParseError("missing 'points <s>' line", lineno + 1, 1);
  validate(f);
  return f;
}

std::string serialize(const ProximityForest& f) {
  std::ostringstream out;
  out << "points " << f.s << "\n";
  for (int i = 0; i < f.s; ++i) {
    if (f.prox[i].empty()) continue;
    out << "prox " << i + 1 << ":";
    for (int j : f.prox[i]) out << " " << j + 1;
    out << "\n";
  }
  return out.str();
}

void validate(const ProximityForest& f) {
  if (f.s < 1) throw RuleViolation(1, 1, "forest must contain at least one point");
  if (static_cast<int>(f.prox.size()) != f.s)
    throw RuleViolation(1, f.s, "proximity table size does not match point count");

  for (int i = 0; i < f.s; ++i) {
    const auto& ps = f.prox[i];
    if (ps.size() > 2)
      throw RuleViolation(1, i + 1, "a point is proximate to at most two earlier points");
    for (int j : ps)
      if (j < 0 || j >= i)
        throw RuleViolation(1, i + 1,
                            "proximate point " + std::to_string(j + 1) +
                                " does not precede point " + std::to_string(i + 1));
    if (ps.size() == 2 && ps[0] == ps[1])
      throw RuleViolation(1, i + 1, "duplicate entry in proximity set");
  }

  // P2: a satellite point sits on the meeting of two exceptional curves,
  // which exists only if the later of the two was centred on the earlier.
  for (int i = 0; i < f.s; ++i) {
    const auto& ps = f.prox[i];
    if (ps.size() != 2) continue;
    int j = std::min(ps[0], ps[1]);
    int k = std::max(ps[0], ps[1]);
    const auto& pk = f.prox[k];
    if (std::find(pk.begin(), pk.end(), j) == pk.end())
      throw RuleViolation(2, i + 1,
                          "pair {" + std::to_string(j + 1) + "," + std::to_string(k + 1) +
                              "} requires " + std::to_string(j + 1) + " in prox(" +
                              std::to_string(k + 1) + ")");
  }

  // P4: blowing up the meeting point separates the two curves, so a pair
  // can carry at most one satellite.
  std::map<std::pair<int, int>, int> pair_user;
  for (int i = 0; i < f.s; ++i) {
    const auto& ps = f.prox[i];
    if (ps.size() != 2) continue;
    auto key = std::make_pair(std::min(ps[0], ps[1]), std::max(ps[0], ps[1]));
    auto [it, inserted] = pair_user.emplace(key, i);
    if (!inserted)
      throw RuleViolation(4, i + 1,
                          "pair {" + std::to_string(key.first + 1) + "," +
                              std::to_string(key.second + 1) + "} already used by point " +
                              std::to_string(it->second + 1));
  }
}

std::vector<std::vector<int>> proximity_options(const ProximityForest& prefix, int i) {
  std::vector<std::vector<int>> options;
  options.push_back({});
  for (int j = 0; j < i; ++j) options.push_back({j});

  // Valid pairs {j,k}: the curves of j and k still meet right before the
  // i-th blow-up, i.e. j in prox(k) and no earlier point used the pair.
  for (int k = 0; k < i; ++k) {
    for (int j : prefix.prox[k]) {
      bool used = false;
      for (int m = k + 1; m < i && !used; ++m)
        used = prefix.prox[m].size() == 2 && std::min(prefix.prox[m][0], prefix.prox[m][1]) == j &&
               std::max(prefix.prox[m][0], prefix.prox[m][1]) == k;
      if (!used) options.push_back({j, k});
    }
  }

  std::sort(options.begin() + 1 + i, options.end());
  return options;
}

}  // namespace excdiv
