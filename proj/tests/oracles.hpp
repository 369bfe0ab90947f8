#pragma once

// Reference implementations used by the tests only. They compute straight
// from the model definition (total-transform expansions and the
// orthonormal-up-to-sign pairing), bypassing the library's Gram matrix,
// basis inversion and decomposition machinery, so agreement is a real
// cross-check and not a tautology.

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "excdiv/divisor.hpp"
#include "excdiv/forest.hpp"

namespace oracle {

using excdiv::Divisor;
using excdiv::ProximityForest;

// Pairing via E-coordinates only: y(D) with e_j = E_j - sum of E_m over
// m proximate to j, and D1.D2 = -<y1, y2>.
class Pairing {
public:
  explicit Pairing(const ProximityForest& f) : s_(f.s) {
    cols_.assign(s_, std::vector<std::int64_t>(s_, 0));
    for (int j = 0; j < s_; ++j) cols_[j][j] = 1;
    for (int m = 0; m < s_; ++m)
      for (int j : f.prox[m]) cols_[j][m] = -1;
  }

  std::vector<std::int64_t> to_E(const std::vector<std::int64_t>& x) const {
    std::vector<std::int64_t> y(s_, 0);
    for (int j = 0; j < s_; ++j)
      for (int a = 0; a < s_; ++a) y[a] += cols_[j][a] * x[j];
    return y;
  }

  std::int64_t pair(const std::vector<std::int64_t>& x1,
                    const std::vector<std::int64_t>& x2) const {
    std::vector<std::int64_t> y1 = to_E(x1), y2 = to_E(x2);
    std::int64_t acc = 0;
    for (int a = 0; a < s_; ++a) acc -= y1[a] * y2[a];
    return acc;
  }

  std::int64_t k_degree(const std::vector<std::int64_t>& x) const {
    std::vector<std::int64_t> y = to_E(x);
    std::int64_t acc = 0;
    for (int a = 0; a < s_; ++a) acc -= y[a];
    return acc;
  }

private:
  int s_;
  std::vector<std::vector<std::int64_t>> cols_;  // cols_[j][a]: E_a coeff of e_j
};

// Minimum of A.B over proper decompositions, by plain iteration.
inline std::optional<std::int64_t> min_split(const ProximityForest& f,
                                             const std::vector<std::int64_t>& d) {
  Pairing p(f);
  const int s = f.s;
  std::vector<std::int64_t> a(s, 0);
  std::optional<std::int64_t> best;
  for (;;) {
    int i = s - 1;
    while (i >= 0 && a[i] == d[i]) {
      a[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++a[i];
    bool zero = true, full = true;
    for (int c = 0; c < s; ++c) {
      zero = zero && a[c] == 0;
      full = full && a[c] == d[c];
    }
    if (zero || full) continue;
    std::vector<std::int64_t> b(s);
    for (int c = 0; c < s; ++c) b[c] = d[c] - a[c];
    std::int64_t v = p.pair(a, b);
    if (!best || v < *best) best = v;
  }
  return best;  // empty when no proper decomposition exists
}

// Effective vectors with coordinates <= cap matching (k_deg, self_int).
inline std::set<std::vector<std::int64_t>> enumerate_classes(const ProximityForest& f,
                                                             std::int64_t k_deg,
                                                             std::int64_t self_int,
                                                             std::int64_t cap) {
  Pairing p(f);
  const int s = f.s;
  std::set<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> x(s, 0);
  for (;;) {
    int i = s - 1;
    while (i >= 0 && x[i] == cap) {
      x[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++x[i];
    if (p.pair(x, x) == self_int && p.k_degree(x) == k_deg) out.insert(x);
  }
  return out;
}

// Validity of a candidate proximity assignment, restated directly from
// the three rules.
inline bool valid_forest(int s, const std::vector<std::vector<int>>& prox) {
  for (int i = 0; i < s; ++i) {
    if (prox[i].size() > 2) return false;
    for (int j : prox[i])
      if (j < 0 || j >= i) return false;  // P1
    if (prox[i].size() == 2 && prox[i][0] == prox[i][1]) return false;
  }
  for (int i = 0; i < s; ++i) {
    if (prox[i].size() != 2) continue;
    int j = std::min(prox[i][0], prox[i][1]);
    int k = std::max(prox[i][0], prox[i][1]);
    bool found = false;
    for (int t : prox[k]) found |= t == j;
    if (!found) return false;  // P2
  }
  for (int i = 0; i < s; ++i)
    for (int i2 = i + 1; i2 < s; ++i2) {
      if (prox[i].size() != 2 || prox[i2].size() != 2) continue;
      int a1 = std::min(prox[i][0], prox[i][1]), b1 = std::max(prox[i][0], prox[i][1]);
      int a2 = std::min(prox[i2][0], prox[i2][1]), b2 = std::max(prox[i2][0], prox[i2][1]);
      if (a1 == a2 && b1 == b2) return false;  // P4
    }
  return true;
}

// Every subset-of-earlier-points assignment with |prox(i)| <= 2, filtered
// by valid_forest. Returns the number of valid forests on s points.
inline std::int64_t count_valid_forests(int s) {
  std::vector<std::vector<std::vector<int>>> all_sets(s);
  for (int i = 0; i < s; ++i) {
    all_sets[i].push_back({});
    for (int j = 0; j < i; ++j) all_sets[i].push_back({j});
    for (int j = 0; j < i; ++j)
      for (int k = j + 1; k < i; ++k) all_sets[i].push_back({j, k});
  }
  std::vector<std::vector<int>> prox(s);
  std::int64_t count = 0;
  auto rec = [&](auto&& self, int i) -> void {
    if (i == s) {
      if (valid_forest(s, prox)) ++count;
      return;
    }
    for (const auto& choice : all_sets[i]) {
      prox[i] = choice;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return count;
}

}  // namespace oracle
