#include "excdiv/propcheck.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <random>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "json.hpp"

#include "excdiv/divisors.hpp"
#include "excdiv/dynkin.hpp"
#include "excdiv/lattice.hpp"
#include "excdiv/minsplit.hpp"

namespace excdiv {

namespace {

// Canonical proposition order; merged reports follow it.
const std::vector<std::string>& proposition_ids() {
  static const std::vector<std::string> ids = {
      "ade-numerics",
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
      "total-transform-support",
  };
  return ids;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  std::uint64_t threshold = (-n) % n;  // 2^64 mod n
  for (;;) {
    std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

// ---------------------------------------------------------------------
// Per-forest suite runner.
class SuiteRunner {
public:
  SuiteRunner(const ProximityForest& f, const SuiteOptions& opts)
      : forest_(f), opts_(opts), text_(serialize(f)), lattice_(f) {
    for (const std::string& id : proposition_ids()) results_[id];  // fixed set
  }

  SuiteReport run() {
    try {
      prepare();
      check_lattice_basics();
      check_genus_additivity();
      check_total_transform_connectedness();
      check_box_quantified();
      check_nesting();
      check_minus_one_classes();
      check_nodal_classes();
      check_deep_components();
      check_ade_configurations();
      check_theta_and_families();
      check_ade_roundtrip();
    } catch (const std::exception& ex) {
      add_violation("internal-error", std::string("unhandled: ") + ex.what());
    }

    SuiteReport rep;
    rep.mode = "single";
    rep.s_min = rep.s_max = forest_.s;
    rep.forests_checked = 1;
    rep.box_cap_override = opts_.box_cap_override;
    rep.box_cap_max_used = cap_;
    rep.box_cap_reduced_forests = cap_reduced_ ? 1 : 0;
    for (const std::string& id : proposition_ids()) {
      PropositionResult pr = results_[id];
      pr.id = id;
      rep.propositions.push_back(std::move(pr));
    }
    return rep;
  }

private:
  void count(const std::string& id, std::int64_t n = 1) { results_[id].instances_checked += n; }

  void add_violation(const std::string& id, const std::string& detail) {
    results_[id].violations.push_back({text_, detail});
  }

  void require(const std::string& id, bool ok, const std::string& detail) {
    if (!ok) add_violation(id, detail);
  }

  void prepare() {
    const int s = lattice_.rank();
    for (int i = 1; i <= s; ++i) totals_.push_back(lattice_.total_transform(i));

    nodal_classes_ = enumerate_contracted(lattice_, 0, -2);
    for (const Divisor& d : nodal_classes_) {
      std::optional<DynkinType> t = classify_ade(lattice_, d);
      nodal_types_.push_back(t);
    }

    std::int64_t max_coeff = 1;
    for (const Divisor& t : totals_)
      for (auto c : t.e) max_coeff = std::max(max_coeff, c);
    cap_ = opts_.box_cap_override.value_or(max_coeff + 1);
    // Shrink to the cell budget if necessary. Cap 0 leaves only the zero
    // vector, i.e. the box checks are skipped; the report shows it.
    while (cap_ > 0) {
      __int128 cells = 1;
      bool fits = true;
      for (int i = 0; i < s && fits; ++i) {
        cells *= cap_ + 1;
        if (cells > opts_.box_budget) fits = false;
      }
      if (fits) break;
      --cap_;
      cap_reduced_ = true;
    }
  }

  // --- lattice-level facts -------------------------------------------
  void check_lattice_basics() {
    const int s = lattice_.rank();

    count("neg-definite");
    const auto& minors = lattice_.leading_minors();
    for (int k = 0; k < s; ++k) {
      bool ok = (k % 2 == 0) ? minors[k] < 0 : minors[k] > 0;
      require("neg-definite", ok,
              "leading minor " + std::to_string(k + 1) + " = " + std::to_string(minors[k]) +
                  " has the wrong sign");
    }

    for (int i = 0; i < s; ++i)
      for (int j = i; j < s; ++j) {
        count("e-basis-orthonormal");
        std::int64_t v = lattice_.intersect(totals_[i], totals_[j]);
        require("e-basis-orthonormal", v == (i == j ? -1 : 0),
                "E" + std::to_string(i + 1) + ".E" + std::to_string(j + 1) + " = " +
                    std::to_string(v));
      }

    for (int i = 0; i < s; ++i) {
      count("k-degree-total-transforms");
      std::int64_t v = lattice_.canonical_degree(totals_[i]);
      require("k-degree-total-transforms", v == -1,
              "K.E" + std::to_string(i + 1) + " = " + std::to_string(v));
    }

    for (int i = 0; i < s; ++i) {
      count("k-degree-adjunction");
      require("k-degree-adjunction",
              lattice_.k_degrees()[i] == -2 - lattice_.gram(i, i),
              "component " + std::to_string(i + 1) + " breaks K.e = -2 - e^2");
    }

    for (int i = 0; i < s; ++i) {
      count("total-transform-support");
      const Divisor& E = totals_[i];
      bool ok = E.is_effective() && E.e[i] == 1;
      int negatives = 0;
      for (int c : E.support()) {
        std::int64_t p = lattice_.intersect(Divisor::unit(s, c), E);
        if (p > 0) ok = false;
        if (p < 0) {
          ++negatives;
          ok = ok && p == -1 && E.e[c] == 1 && c == i;
        }
      }
      require("total-transform-support", ok && negatives == 1,
              "E" + std::to_string(i + 1) +
                  " misses the unique multiplicity-one component pairing to -1");
    }

    for (int i = 0; i < s; ++i) {
      count("basis-roundtrip");
      Divisor d = Divisor::unit(s, i);
      require("basis-roundtrip", lattice_.to_e_basis(lattice_.to_E_basis(d)) == d,
              "round trip failed on e" + std::to_string(i + 1));
    }
    std::mt19937_64 rng(opts_.sample_seed ^ fnv1a(text_));
    for (int t = 0; t < 4; ++t) {
      count("basis-roundtrip");
      Divisor d = Divisor::zero(s);
      for (int i = 0; i < s; ++i) d.e[i] = static_cast<std::int64_t>(bounded(rng, 9)) - 4;
      require("basis-roundtrip", lattice_.to_e_basis(lattice_.to_E_basis(d)) == d,
              "round trip failed on " + d.str());
    }
  }

  // --- genus additivity ----------------------------------------------
  void check_genus_additivity() {
    const int s = lattice_.rank();
    auto check_pair = [&](const Divisor& a, const Divisor& b) {
      count("genus-additivity");
      std::int64_t lhs = arithmetic_genus(lattice_, a + b);
      std::int64_t rhs = arithmetic_genus(lattice_, a) + arithmetic_genus(lattice_, b) - 1 +
                         lattice_.intersect(a, b);
      require("genus-additivity", lhs == rhs,
              "p_a(" + a.str() + " + " + b.str() + ") = " + std::to_string(lhs) +
                  ", additivity gives " + std::to_string(rhs));
    };

    if (s <= 5) {
      // All pairs of reduced effective divisors.
      std::vector<Divisor> reduced;
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << s); ++mask) {
        Divisor d = Divisor::zero(s);
        for (int i = 0; i < s; ++i)
          if (mask & (std::uint64_t{1} << i)) d.e[i] = 1;
        reduced.push_back(d);
      }
      for (const Divisor& a : reduced)
        for (const Divisor& b : reduced) check_pair(a, b);
    }
    // Sampled non-reduced pairs.
    std::mt19937_64 rng(opts_.sample_seed ^ fnv1a(text_) ^ 0x67656e7573ull);
    for (int t = 0; t < 64; ++t) {
      Divisor a = Divisor::zero(s), b = Divisor::zero(s);
      for (int i = 0; i < s; ++i) {
        a.e[i] = static_cast<std::int64_t>(bounded(rng, 4));
        b.e[i] = static_cast<std::int64_t>(bounded(rng, 4));
      }
      if (a.is_zero() || b.is_zero()) continue;
      check_pair(a, b);
    }
  }

  // --- total transforms are 1-connected ------------------------------
  void check_total_transform_connectedness() {
    for (int i = 0; i < lattice_.rank(); ++i) {
      count("total-transform-one-connected");
      DecompositionReport rep = is_m_connected(lattice_, totals_[i], 1);
      require("total-transform-one-connected", rep.m_connected,
              "E" + std::to_string(i + 1) + " splits with pairing " +
                  (rep.order ? std::to_string(*rep.order) : std::string("?")));
    }
  }

  // --- box-quantified checks ------------------------------------------
  // One pass over [0,cap]^s: non-positive genus, and the bounded-pairing
  // consequence of 1-connectedness.
  void check_box_quantified() {
    const int s = lattice_.rank();
    const auto& gram = lattice_.gram();
    const auto& kdeg = lattice_.k_degrees();

    // children[c]: points proximate to c (bump x_c -> D.E_m rises).
    std::vector<std::vector<int>> children(s);
    for (int m = 0; m < s; ++m)
      for (int j : forest_.prox[m]) children[j].push_back(m);

    Divisor x = Divisor::zero(s);
    std::vector<std::int64_t> gx(s, 0), de(s, 0);
    std::int64_t xgx = 0, ksum = 0;
    int saturated = 0;  // #indices with D.E_i >= 2

    auto adjust_de = [&](int idx, std::int64_t delta) {
      bool was = de[idx] >= 2;
      de[idx] += delta;
      bool now = de[idx] >= 2;
      saturated += static_cast<int>(now) - static_cast<int>(was);
    };
    auto bump = [&](int c) {
      ksum += kdeg[c];
      xgx += 2 * gx[c] + gram[c][c];
      for (int r = 0; r < s; ++r) gx[r] += gram[r][c];
      adjust_de(c, -1);
      for (int m : children[c]) adjust_de(m, +1);
      ++x.e[c];
    };
    auto unbump = [&](int c) {
      --x.e[c];
      adjust_de(c, +1);
      for (int m : children[c]) adjust_de(m, -1);
      for (int r = 0; r < s; ++r) gx[r] -= gram[r][c];
      xgx -= 2 * gx[c] + gram[c][c];
      ksum -= kdeg[c];
    };

    std::int64_t visited = 0;
    auto visit = [&]() {
      if (x.is_zero()) return;
      ++visited;

      std::int64_t pa = 1 + (ksum + xgx) / 2;
      if (pa > 0)
        add_violation("contracted-genus-nonpositive",
                      "p_a(" + x.str() + ") = " + std::to_string(pa));

      if (saturated > 0) {
        // Some D.E_i >= 2, so D must fail to be 1-connected.
        std::optional<Divisor> split = detail::find_split_at_most(lattice_, x, 0);
        if (!split) {
          int bad = 0;
          for (int i = 0; i < s; ++i)
            if (de[i] >= 2) bad = i;
          add_violation("one-connected-bounded-pairing",
                        x.str() + " is 1-connected but pairs with E" + std::to_string(bad + 1) +
                            " to " + std::to_string(de[bad]));
        }
      }
    };

    auto rec = [&](auto&& self, int c) -> void {
      if (c == s) {
        visit();
        return;
      }
      self(self, c + 1);
      for (std::int64_t v = 1; v <= cap_; ++v) {
        bump(c);
        self(self, c + 1);
      }
      for (std::int64_t v = 0; v < cap_; ++v) unbump(c);
    };
    rec(rec, 0);

    count("contracted-genus-nonpositive", visited);
    count("one-connected-bounded-pairing", visited);
  }

  // --- nesting of total transforms ------------------------------------
  void check_nesting() {
    const int s = lattice_.rank();
    for (int i = 0; i < s; ++i)
      for (int j = i + 1; j < s; ++j) {
        count("total-transform-nesting");
        bool overlap = false;
        for (int c = 0; c < s; ++c) overlap |= totals_[i].e[c] != 0 && totals_[j].e[c] != 0;
        if (!overlap) continue;
        bool nested =
            strictly_below(totals_[i], totals_[j]) || strictly_below(totals_[j], totals_[i]);
        require("total-transform-nesting", nested,
                "E" + std::to_string(i + 1) + " and E" + std::to_string(j + 1) +
                    " overlap without nesting");
      }

    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) {
        if (i == j || !strictly_below(totals_[i], totals_[j])) continue;
        count("nested-orthogonality");
        for (int c : totals_[i].support()) {
          std::int64_t p = lattice_.intersect(Divisor::unit(s, c), totals_[j]);
          require("nested-orthogonality", p == 0,
                  "component e" + std::to_string(c + 1) + " of E" + std::to_string(i + 1) +
                      " pairs with E" + std::to_string(j + 1) + " to " + std::to_string(p));
        }
      }
  }

  // --- the (-1,-1) classes are exactly the total transforms ------------
  void check_minus_one_classes() {
    count("minus-one-classes-are-total-transforms");
    std::vector<Divisor> found = enumerate_contracted(lattice_, -1, -1);
    std::vector<Divisor> expected = totals_;
    std::sort(found.begin(), found.end());
    std::sort(expected.begin(), expected.end());
    require("minus-one-classes-are-total-transforms", found == expected,
            "(-1,-1) enumeration returned " + std::to_string(found.size()) +
                " classes, expected the " + std::to_string(expected.size()) +
                " total transforms");
  }

  // --- the (0,-2) classes ----------------------------------------------
  void check_nodal_classes() {
    const int s = lattice_.rank();
    const auto& L = nodal_classes_;

    for (const Divisor& d : L) {
      count("nodal-classes-one-connected");
      DecompositionReport rep = is_m_connected(lattice_, d, 1);
      require("nodal-classes-one-connected", rep.m_connected,
              d.str() + " is a (0,-2) class but splits with pairing " +
                  (rep.order ? std::to_string(*rep.order) : std::string("?")));
    }

    for (std::size_t a = 0; a < L.size(); ++a)
      for (std::size_t b = a + 1; b < L.size(); ++b) {
        count("nodal-class-pairings-bounded");
        std::int64_t p = lattice_.intersect(L[a], L[b]);
        require("nodal-class-pairings-bounded", p >= -1 && p <= 1,
                L[a].str() + " . " + L[b].str() + " = " + std::to_string(p));
      }

    pivots_.assign(L.size(), -1);
    for (std::size_t a = 0; a < L.size(); ++a) {
      count("nodal-class-pivot-indices");
      int jpos = -1, jneg = -1;
      bool ok = true;
      for (int i = 0; i < s; ++i) {
        std::int64_t p = lattice_.pair_with_total(L[a], i);
        if (p == 1 && jpos < 0)
          jpos = i;
        else if (p == -1 && jneg < 0)
          jneg = i;
        else if (p != 0)
          ok = false;
      }
      ok = ok && jpos >= 0 && jneg >= 0 && totals_[jneg] == totals_[jpos] + L[a];
      require("nodal-class-pivot-indices", ok,
              L[a].str() + " lacks the unique (+1,-1) pivot pair of total transforms");
      pivots_[a] = jpos;
    }

    for (std::size_t a = 0; a < L.size(); ++a)
      for (std::size_t b = 0; b < L.size(); ++b) {
        if (a == b || lattice_.intersect(L[a], L[b]) != 0 || pivots_[a] < 0) continue;
        count("orthogonal-class-pivot-disjoint");
        std::int64_t p = lattice_.pair_with_total(L[b], pivots_[a]);
        require("orthogonal-class-pivot-disjoint", p == 0,
                L[b].str() + " pairs with the pivot E" + std::to_string(pivots_[a] + 1) +
                    " of orthogonal " + L[a].str() + " to " + std::to_string(p));
      }
  }

  // --- components with self-intersection <= -3 -------------------------
  void check_deep_components() {
    const int s = lattice_.rank();
    for (int i = 0; i < s; ++i) {
      std::int64_t m = -lattice_.gram(i, i);
      if (m < 3) continue;
      count("deep-component-saturation");
      Divisor n = Divisor::unit(s, i);
      std::vector<int> J;
      bool ok = true;
      for (int j = 0; j < s; ++j) {
        std::int64_t p = lattice_.intersect(n, totals_[j]);
        if (p == 1)
          J.push_back(j);
        else if (p != 0 && !(p == -1 && j == i))
          ok = false;
      }
      ok = ok && static_cast<std::int64_t>(J.size()) == m - 1;
      Divisor gamma = n;
      for (int j : J) gamma = gamma + totals_[j];
      bool is_total = false;
      for (int h = 0; h < s; ++h) is_total |= gamma == totals_[h];
      ok = ok && is_total && gamma.e[i] == 1;
      require("deep-component-saturation", ok,
              "e" + std::to_string(i + 1) + " (self " + std::to_string(-m) +
                  ") fails the saturation identity, |J| = " + std::to_string(J.size()));
    }
  }

  // --- A-D-E configurations inside the lattice --------------------------
  void check_ade_configurations() {
    const int s = lattice_.rank();
    std::vector<int> nodal_components;
    for (int i = 0; i < s; ++i)
      if (lattice_.gram(i, i) == -2) nodal_components.push_back(i);

    // Connected subsets of the -2 components, by breadth-first closure
    // over bitmasks.
    std::vector<std::uint64_t> configs;
    if (nodal_components.size() <= 63) {
      std::unordered_set<std::uint64_t> seen;
      std::vector<std::uint64_t> queue;
      for (std::size_t a = 0; a < nodal_components.size(); ++a) {
        std::uint64_t mask = std::uint64_t{1} << a;
        seen.insert(mask);
        queue.push_back(mask);
      }
      while (!queue.empty()) {
        std::uint64_t mask = queue.back();
        queue.pop_back();
        configs.push_back(mask);
        if (seen.size() > 100000)
          throw std::logic_error("connected -2 configuration enumeration exceeded its budget");
        for (std::size_t b = 0; b < nodal_components.size(); ++b) {
          if (mask & (std::uint64_t{1} << b)) continue;
          bool adjacent = false;
          for (std::size_t a = 0; a < nodal_components.size() && !adjacent; ++a)
            adjacent = (mask & (std::uint64_t{1} << a)) &&
                       lattice_.gram(nodal_components[a], nodal_components[b]) > 0;
          if (!adjacent) continue;
          std::uint64_t next = mask | (std::uint64_t{1} << b);
          if (seen.insert(next).second) queue.push_back(next);
        }
      }
      std::sort(configs.begin(), configs.end());
    }

    for (std::uint64_t mask : configs) {
      Divisor d = Divisor::zero(s);
      for (std::size_t a = 0; a < nodal_components.size(); ++a)
        if (mask & (std::uint64_t{1} << a)) d.e[nodal_components[a]] = 1;

      count("contracted-ade-is-A");
      std::string reason;
      std::optional<DynkinType> t = classify_ade(lattice_, d, &reason);
      require("contracted-ade-is-A", t && t->family == DynkinType::Family::A,
              d.str() + " classifies as " + (t ? t->str() : "nothing (" + reason + ")") +
                  " instead of A-type");

      if (t) {
        count("ade-numerics");
        bool ok = lattice_.self_intersection(d) == -2;
        for (int c : d.support()) ok = ok && lattice_.k_degrees()[c] == 0;
        require("ade-numerics", ok,
                d.str() + " breaks K-degree 0 per component or square -2");
      }

      count("artin-cycle");
      std::vector<int> supp = d.support();
      Matrix sub(supp.size(), std::vector<std::int64_t>(supp.size()));
      for (std::size_t a = 0; a < supp.size(); ++a)
        for (std::size_t b = 0; b < supp.size(); ++b) sub[a][b] = lattice_.gram(supp[a], supp[b]);
      try {
        std::vector<std::int64_t> z = fundamental_cycle(sub);
        bool ok = true;
        for (std::size_t a = 0; a < supp.size(); ++a) {
          if (z[a] < 1) ok = false;
          std::int64_t dot = 0;
          for (std::size_t b = 0; b < supp.size(); ++b) dot += sub[a][b] * z[b];
          if (dot > 0) ok = false;
        }
        require("artin-cycle", ok, "cycle over " + d.str() + " violates its defining bounds");
      } catch (const std::exception& ex) {
        add_violation("artin-cycle", "cycle over " + d.str() + " failed: " + ex.what());
      }
    }

    // The (0,-2) classes themselves never classify outside type A.
    for (std::size_t a = 0; a < nodal_classes_.size(); ++a) {
      count("contracted-ade-is-A");
      const auto& t = nodal_types_[a];
      require("contracted-ade-is-A", !t || t->family == DynkinType::Family::A,
              nodal_classes_[a].str() + " classifies as " + (t ? t->str() : "?"));
    }
  }

  // --- theta components and disjoint families ---------------------------
  void check_theta_and_families() {
    const int s = lattice_.rank();
    const auto& L = nodal_classes_;

    std::vector<int> theta_of(L.size(), -1);
    for (std::size_t a = 0; a < L.size(); ++a) {
      if (!nodal_types_[a] || nodal_types_[a]->family != DynkinType::Family::A) continue;
      int j = pivots_[a];
      if (j < 0) continue;

      count("theta-support-disjoint");
      bool disjoint = true;
      for (int c : L[a].support()) disjoint = disjoint && totals_[j].e[c] == 0;
      require("theta-support-disjoint", disjoint && lattice_.pair_with_total(L[a], j) == 1,
              L[a].str() + " shares support with its pivot E" + std::to_string(j + 1));

      count("theta-unique-component");
      int theta = -1, hits = 0, negs = 0;
      bool same = true;
      for (int c : totals_[j].support()) {
        std::int64_t pd = lattice_.intersect(Divisor::unit(s, c), L[a]);
        std::int64_t pe = lattice_.pair_with_total(Divisor::unit(s, c), j);
        if (pd == 1) {
          ++hits;
          theta = c;
          same = same && pe == -1;
        }
        if (pe < 0) ++negs;
      }
      require("theta-unique-component", hits == 1 && negs == 1 && same,
              L[a].str() + " has no unique theta component on E" + std::to_string(j + 1));
      theta_of[a] = theta;
    }

    auto disjoint_pair = [&](std::size_t a, std::size_t b) {
      if (!nodal_types_[a] || nodal_types_[a]->family != DynkinType::Family::A) return false;
      if (!nodal_types_[b] || nodal_types_[b]->family != DynkinType::Family::A) return false;
      for (int c = 0; c < s; ++c)
        if (L[a].e[c] != 0 && L[b].e[c] != 0) return false;
      return lattice_.intersect(L[a], L[b]) == 0;
    };

    for (std::size_t a = 0; a < L.size(); ++a)
      for (std::size_t b = 0; b < L.size(); ++b) {
        if (a == b || !disjoint_pair(a, b) || pivots_[a] < 0) continue;
        count("disjoint-config-nesting");
        const Divisor& ej = totals_[pivots_[a]];
        bool supp_disjoint = true;
        for (int c : L[b].support()) supp_disjoint = supp_disjoint && ej.e[c] == 0;
        bool first = supp_disjoint && lattice_.intersect(L[b], ej) == 0;
        bool second = strictly_below(L[b], ej);
        require("disjoint-config-nesting", first || second,
                L[b].str() + " neither avoids nor sits inside pivot E" +
                    std::to_string(pivots_[a] + 1) + " of " + L[a].str());
      }

    for (std::size_t a = 0; a < L.size(); ++a)
      for (std::size_t b = a + 1; b < L.size(); ++b) {
        if (!disjoint_pair(a, b)) continue;
        count("theta-distinct");
        require("theta-distinct",
                theta_of[a] >= 0 && theta_of[b] >= 0 && theta_of[a] != theta_of[b],
                "disjoint " + L[a].str() + " and " + L[b].str() + " share theta e" +
                    std::to_string(theta_of[a] + 1));
      }

    // Family enumeration is exponential in long chains; when it exceeds
    // its node budget the check is skipped (visible as zero instances).
    // The pairwise theta-distinctness check above carries the same
    // content.
    try {
      for (const DisjointFamily& fam : disjoint_a_families(lattice_)) {
        count("disjoint-family-budget");
        require("disjoint-family-budget", fam.budget <= s,
                "family of " + std::to_string(fam.members.size()) +
                    " configurations has budget " + std::to_string(fam.budget) + " > " +
                    std::to_string(s));
      }
    } catch (const std::logic_error&) {
    }
  }

  // --- abstract recognition round trip ----------------------------------
  void check_ade_roundtrip() {
    std::vector<DynkinType> types;
    for (int n = 1; n <= 8; ++n) types.emplace_back(DynkinType::Family::A, n);
    for (int n = 4; n <= 8; ++n) types.emplace_back(DynkinType::Family::D, n);
    for (int n = 6; n <= 8; ++n) types.emplace_back(DynkinType::Family::E, n);
    for (const DynkinType& t : types) {
      count("ade-recognition-roundtrip");
      std::optional<DynkinType> back = classify_gram(abstract_lattice(t));
      require("ade-recognition-roundtrip", back && *back == t,
              "abstract " + t.str() + " classified as " + (back ? back->str() : "nothing"));
    }
  }

  ProximityForest forest_;
  SuiteOptions opts_;
  std::string text_;
  ExceptionalLattice lattice_;
  std::vector<Divisor> totals_;
  std::vector<Divisor> nodal_classes_;
  std::vector<std::optional<DynkinType>> nodal_types_;
  std::vector<int> pivots_;
  std::int64_t cap_ = 1;
  bool cap_reduced_ = false;
  std::map<std::string, PropositionResult> results_;
};

}  // namespace

// -----------------------------------------------------------------------
std::int64_t SuiteReport::violations_total() const {
  std::int64_t n = 0;
  for (const auto& p : propositions) n += static_cast<std::int64_t>(p.violations.size());
  return n;
}

std::string SuiteReport::to_json(int indent) const {
  nlohmann::json j;
  j["generator"]["mode"] = mode;
  j["generator"]["s_min"] = s_min;
  j["generator"]["s_max"] = s_max;
  if (seed)
    j["generator"]["seed"] = *seed;
  else
    j["generator"]["seed"] = nullptr;
  j["generator"]["count"] = count;
  j["forests_checked"] = forests_checked;
  if (box_cap_override)
    j["box_cap"]["override"] = *box_cap_override;
  else
    j["box_cap"]["override"] = nullptr;
  j["box_cap"]["max_used"] = box_cap_max_used;
  j["box_cap"]["reduced_forests"] = box_cap_reduced_forests;
  j["propositions"] = nlohmann::json::array();
  for (const auto& p : propositions) {
    nlohmann::json e;
    e["id"] = p.id;
    e["instances_checked"] = p.instances_checked;
    e["violations"] = nlohmann::json::array();
    for (const auto& v : p.violations) {
      nlohmann::json w;
      w["forest"] = v.forest;
      w["detail"] = v.detail;
      e["violations"].push_back(w);
    }
    j["propositions"].push_back(e);
  }
  j["violations_total"] = violations_total();
  return j.dump(indent);
}

std::string SuiteReport::to_text() const {
  std::ostringstream out;
  out << "suite: mode=" << mode << " s=" << s_min << ".." << s_max;
  if (seed) out << " seed=" << *seed;
  out << " forests=" << forests_checked << "\n";
  out << "box cap: max used " << box_cap_max_used;
  if (box_cap_override) out << " (override " << *box_cap_override << ")";
  if (box_cap_reduced_forests)
    out << ", shrunk on " << box_cap_reduced_forests << " forest(s)";
  out << "\n\n";
  for (const auto& p : propositions) {
    out << "  " << p.id;
    for (std::size_t pad = p.id.size(); pad < 42; ++pad) out << ' ';
    out << p.instances_checked << " checked, " << p.violations.size() << " violation(s)\n";
    for (const auto& v : p.violations) {
      out << "      " << v.detail << "\n";
      std::istringstream fin(v.forest);
      std::string line;
      while (std::getline(fin, line)) out << "        | " << line << "\n";
    }
  }
  out << "\ntotal violations: " << violations_total() << "\n";
  return out.str();
}

std::vector<ProximityForest> enumerate_forests(int s, int cap) {
  if (s < 1 || s > cap)
    throw std::invalid_argument("enumerate_forests: s must be between 1 and the cap " +
                                std::to_string(cap));
  std::vector<ProximityForest> out;
  ProximityForest f;
  f.s = s;
  f.prox.assign(s, {});
  auto rec = [&](auto&& self, int i) -> void {
    if (i == s) {
      out.push_back(f);
      return;
    }
    for (const auto& option : proximity_options(f, i)) {
      f.prox[i] = option;
      self(self, i + 1);
    }
    f.prox[i].clear();
  };
  rec(rec, 1);  // the first point has an empty proximity set
  return out;
}

ProximityForest random_forest(int s, std::uint64_t seed) {
  if (s < 1) throw std::invalid_argument("random_forest: s must be positive");
  std::mt19937_64 rng(seed);
  ProximityForest f;
  f.s = s;
  f.prox.assign(s, {});
  for (int i = 1; i < s; ++i) {
    std::vector<std::vector<int>> options = proximity_options(f, i);
    f.prox[i] = options[bounded(rng, options.size())];
  }
  return f;
}

ProximityForest canonical_form(const ProximityForest& f) {
  validate(f);
  if (f.s > 9)
    throw std::invalid_argument("canonical_form: relabeling search is supported up to s = 9");
  const int s = f.s;

  std::vector<int> position(s, -1);  // original point -> new index
  std::vector<int> placed;           // new index -> original point
  std::optional<std::string> best;
  std::optional<ProximityForest> best_forest;

  auto build = [&]() {
    ProximityForest g;
    g.s = s;
    g.prox.assign(s, {});
    for (int orig = 0; orig < s; ++orig) {
      std::vector<int>& target = g.prox[position[orig]];
      for (int t : f.prox[orig]) target.push_back(position[t]);
      std::sort(target.begin(), target.end());
    }
    return g;
  };

  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(placed.size()) == s) {
      ProximityForest g = build();
      std::string text = serialize(g);
      if (!best || text < *best) {
        best = text;
        best_forest = g;
      }
      return;
    }
    for (int orig = 0; orig < s; ++orig) {
      if (position[orig] >= 0) continue;
      bool ready = true;
      for (int t : f.prox[orig]) ready = ready && position[t] >= 0;
      if (!ready) continue;
      position[orig] = static_cast<int>(placed.size());
      placed.push_back(orig);
      self(self);
      placed.pop_back();
      position[orig] = -1;
    }
  };
  rec(rec);
  validate(*best_forest);
  return *best_forest;
}

SuiteReport run_suite(const ProximityForest& f, const SuiteOptions& opts) {
  return SuiteRunner(f, opts).run();
}

SuiteReport run_suite_over(const std::vector<ProximityForest>& forests,
                           const SuiteOptions& opts, int jobs) {
  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  jobs = std::min(jobs, static_cast<int>(std::max<std::size_t>(forests.size(), 1)));

  std::vector<SuiteReport> slots(forests.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t idx = next.fetch_add(1);
      if (idx >= forests.size()) return;
      slots[idx] = run_suite(forests[idx], opts);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SuiteReport merged;
  merged.box_cap_override = opts.box_cap_override;
  for (const std::string& id : proposition_ids()) merged.propositions.push_back({id, 0, {}});
  bool first = true;
  for (const SuiteReport& r : slots) {
    merged.forests_checked += r.forests_checked;
    merged.s_min = first ? r.s_min : std::min(merged.s_min, r.s_min);
    merged.s_max = first ? r.s_max : std::max(merged.s_max, r.s_max);
    merged.box_cap_max_used = std::max(merged.box_cap_max_used, r.box_cap_max_used);
    merged.box_cap_reduced_forests += r.box_cap_reduced_forests;
    for (std::size_t p = 0; p < merged.propositions.size(); ++p) {
      merged.propositions[p].instances_checked += r.propositions[p].instances_checked;
      for (const auto& v : r.propositions[p].violations)
        merged.propositions[p].violations.push_back(v);
    }
    first = false;
  }
  return merged;
}

}  // namespace excdiv
