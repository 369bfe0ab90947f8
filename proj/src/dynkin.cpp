#include "excdiv/dynkin.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "excdiv/divisors.hpp"

namespace excdiv {

DynkinType::DynkinType(Family f, int rank) : family(f), n(rank) {
  bool ok = (f == Family::A && n >= 1) || (f == Family::D && n >= 4) ||
            (f == Family::E && n >= 6 && n <= 8);
  if (!ok) throw std::invalid_argument("invalid Dynkin type " + str());
}

std::string DynkinType::str() const {
  const char* fam = family == Family::A ? "A" : family == Family::D ? "D" : "E";
  return fam + std::to_string(n);
}

std::optional<DynkinType> DynkinType::parse(const std::string& text) {
  if (text.size() < 2) return std::nullopt;
  Family f;
  switch (text[0]) {
    case 'A': f = Family::A; break;
    case 'D': f = Family::D; break;
    case 'E': f = Family::E; break;
    default: return std::nullopt;
  }
  int n = 0;
  for (std::size_t i = 1; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
    n = n * 10 + (text[i] - '0');
    if (n > 1000000) return std::nullopt;
  }
  bool ok = (f == Family::A && n >= 1) || (f == Family::D && n >= 4) ||
            (f == Family::E && n >= 6 && n <= 8);
  if (!ok) return std::nullopt;
  return DynkinType(f, n);
}

DualGraph dual_graph(const ExceptionalLattice& L, const Divisor& D) {
  if (!D.is_effective() || !D.is_reduced())
    throw std::invalid_argument("dual_graph: divisor must be reduced and effective");
  DualGraph g;
  g.vertices = D.support();
  for (int v : g.vertices) g.self_int.push_back(L.gram(v, v));
  for (std::size_t a = 0; a < g.vertices.size(); ++a)
    for (std::size_t b = a + 1; b < g.vertices.size(); ++b) {
      std::int64_t m = L.gram(g.vertices[a], g.vertices[b]);
      if (m != 0) g.edges.push_back({static_cast<int>(a), static_cast<int>(b), m});
    }
  return g;
}

std::string to_dot(const DualGraph& g) {
  std::ostringstream out;
  out << "graph dual {\n";
  for (std::size_t a = 0; a < g.vertices.size(); ++a)
    out << "  e" << g.vertices[a] + 1 << " [label=\"e" << g.vertices[a] + 1 << " (self="
        << g.self_int[a] << ")\"];\n";
  for (const auto& e : g.edges)
    for (std::int64_t m = 0; m < e.multiplicity; ++m)
      out << "  e" << g.vertices[e.a] + 1 << " -- e" << g.vertices[e.b] + 1 << ";\n";
  out << "}\n";
  return out.str();
}

namespace {

std::optional<DynkinType> fail(std::string* reason, const std::string& msg) {
  if (reason) *reason = msg;
  return std::nullopt;
}

}  // namespace

std::optional<DynkinType> classify_gram(const Matrix& gram, std::string* reason) {
  const int n = static_cast<int>(gram.size());
  if (n == 0) return fail(reason, "empty configuration");

  for (int i = 0; i < n; ++i)
    if (gram[i][i] != -2)
      return fail(reason, "component " + std::to_string(i + 1) + " has self-intersection " +
                              std::to_string(gram[i][i]) + ", not -2");

  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      std::int64_t m = gram[i][j];
      if (m == 0) continue;
      if (m != 1)
        return fail(reason, "components " + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                " meet with multiplicity " + std::to_string(m));
      adj[i].push_back(j);
      adj[j].push_back(i);
    }

  // Connectivity and tree check in one pass.
  int edge_count = 0;
  for (int i = 0; i < n; ++i) edge_count += static_cast<int>(adj[i].size());
  edge_count /= 2;
  std::vector<bool> seen(n, false);
  std::vector<int> stack = {0};
  seen[0] = true;
  int reached = 0;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    ++reached;
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
  }
  if (reached != n) return fail(reason, "dual graph is not connected");
  if (edge_count != n - 1) return fail(reason, "dual graph contains a cycle");

  std::vector<int> forks;
  for (int i = 0; i < n; ++i) {
    if (adj[i].size() >= 4)
      return fail(reason, "vertex " + std::to_string(i + 1) + " has degree 4 or more");
    if (adj[i].size() == 3) forks.push_back(i);
  }
  if (forks.size() >= 2) return fail(reason, "more than one degree-3 vertex");

  if (forks.empty()) return DynkinType(DynkinType::Family::A, n);

  // Branch lengths from the unique fork.
  int fork = forks[0];
  std::vector<int> lengths;
  for (int first : adj[fork]) {
    int len = 1, prev = fork, cur = first;
    while (true) {
      int next = -1;
      for (int v : adj[cur])
        if (v != prev) next = v;
      if (next < 0) break;
      prev = cur;
      cur = next;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end());

  if (lengths[0] != 1) return fail(reason, "no length-1 branch at the fork");
  if (lengths[1] == 1) return DynkinType(DynkinType::Family::D, n);
  if (lengths[1] == 2 && lengths[2] >= 2 && lengths[2] <= 4)
    return DynkinType(DynkinType::Family::E, n);
  return fail(reason, "branch lengths (" + std::to_string(lengths[0]) + "," +
                          std::to_string(lengths[1]) + "," + std::to_string(lengths[2]) +
                          ") do not match any Dynkin tree");
}

std::optional<DynkinType> classify_ade(const ExceptionalLattice& L, const Divisor& D,
                                       std::string* reason) {
  if (!D.is_effective()) return fail(reason, "divisor is not effective");
  if (!D.is_reduced()) return fail(reason, "divisor is not reduced");
  std::vector<int> supp = D.support();
  Matrix sub(supp.size(), std::vector<std::int64_t>(supp.size()));
  for (std::size_t a = 0; a < supp.size(); ++a)
    for (std::size_t b = 0; b < supp.size(); ++b) sub[a][b] = L.gram(supp[a], supp[b]);
  return classify_gram(sub, reason);
}

Matrix abstract_lattice(const DynkinType& t) {
  const int n = t.n;
  Matrix g(n, std::vector<std::int64_t>(n, 0));
  for (int i = 0; i < n; ++i) g[i][i] = -2;
  auto link = [&](int a, int b) { g[a][b] = g[b][a] = 1; };

  switch (t.family) {
    case DynkinType::Family::A:
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      break;
    case DynkinType::Family::D:
      link(0, 1);
      link(0, 2);
      link(0, 3);
      for (int i = 3; i + 1 < n; ++i) link(i, i + 1);
      break;
    case DynkinType::Family::E:
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
      link(2, n - 1);
      break;
  }
  return g;
}

std::vector<std::int64_t> fundamental_cycle(const Matrix& gram) {
  const int n = static_cast<int>(gram.size());
  if (n == 0) throw std::invalid_argument("fundamental_cycle: empty configuration");
  for (int i = 0; i < n; ++i)
    if (gram[i][i] != -2)
      throw std::invalid_argument("fundamental_cycle: all components must be -2-curves");

  // Connectivity.
  std::vector<bool> seen(n, false);
  std::vector<int> stack = {0};
  seen[0] = true;
  int reached = 0;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    ++reached;
    for (int v = 0; v < n; ++v)
      if (!seen[v] && gram[u][v] > 0) {
        seen[v] = true;
        stack.push_back(v);
      }
  }
  if (reached != n)
    throw std::invalid_argument("fundamental_cycle: configuration must be connected");

  std::vector<std::int64_t> z(n, 1);
  auto z_dot = [&](int i) {
    std::int64_t acc = 0;
    for (int j = 0; j < n; ++j) acc += gram[i][j] * z[j];
    return acc;
  };

  // Bump the lowest offending component first; termination is guaranteed
  // by negative definiteness, the guard catches non-definite input.
  for (std::int64_t rounds = 0;; ++rounds) {
    if (rounds > 100000 * static_cast<std::int64_t>(n))
      throw std::invalid_argument("fundamental_cycle: configuration is not negative definite");
    int bump = -1;
    for (int i = 0; i < n && bump < 0; ++i)
      if (z_dot(i) > 0) bump = i;
    if (bump < 0) break;
    ++z[bump];
  }

  std::int64_t sq = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) sq += z[i] * gram[i][j] * z[j];
  if (sq != -2)
    throw std::logic_error("fundamental_cycle: cycle self-intersection is not -2");
  return z;
}

ThetaResult theta(const ExceptionalLattice& L, const Divisor& D) {
  std::string reason;
  std::optional<DynkinType> t = classify_ade(L, D, &reason);
  if (!t || t->family != DynkinType::Family::A)
    throw std::invalid_argument("theta: divisor is not an A-type configuration (" + reason + ")");

  ThetaResult res;
  int positive = 0;
  for (int i = 0; i < L.rank(); ++i) {
    std::int64_t p = L.pair_with_total(D, i);
    if (p == 1) {
      ++positive;
      res.j = i + 1;
    }
  }
  if (positive != 1)
    throw std::logic_error("theta: configuration does not meet exactly one total transform");

  Divisor ej = L.total_transform(res.j);
  int hits = 0;
  for (int c : ej.support()) {
    if (L.intersect(Divisor::unit(L.rank(), c), D) == 1) {
      ++hits;
      res.theta = c + 1;
    }
  }
  if (hits != 1)
    throw std::logic_error("theta: no unique component of E_j meeting the configuration");

  if (L.pair_with_total(Divisor::unit(L.rank(), res.theta - 1), res.j - 1) != -1)
    throw std::logic_error("theta: component does not meet E_j with degree -1");
  for (int c : D.support())
    if (ej.e[c] != 0)
      throw std::logic_error("theta: configuration shares support with E_j");
  return res;
}

std::vector<DisjointFamily> disjoint_a_families(const ExceptionalLattice& L) {
  std::vector<Divisor> all = enumerate_contracted(L, 0, -2);
  std::vector<Divisor> members;
  std::vector<DynkinType> types;
  for (const Divisor& d : all) {
    std::optional<DynkinType> t = classify_ade(L, d);
    if (t && t->family == DynkinType::Family::A) {
      members.push_back(d);
      types.push_back(*t);
    }
  }

  const int m = static_cast<int>(members.size());
  // Disjoint as curves: no shared components and zero total pairing.
  std::vector<std::vector<bool>> compatible(m, std::vector<bool>(m, false));
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      bool supp_disjoint = true;
      for (int i = 0; i < L.rank() && supp_disjoint; ++i)
        supp_disjoint = members[a].e[i] == 0 || members[b].e[i] == 0;
      bool ok = supp_disjoint && L.intersect(members[a], members[b]) == 0;
      compatible[a][b] = compatible[b][a] = ok;
    }

  std::vector<DisjointFamily> out;
  if (m == 0) return out;

  // All maximal cliques of the compatibility graph, emitted in
  // lexicographic order of member indices.
  std::vector<int> current;
  std::int64_t guard = 0;
  auto is_compatible_with_all = [&](int v) {
    for (int u : current)
      if (!compatible[u][v]) return false;
    return true;
  };
  auto emit_if_maximal = [&]() {
    if (current.empty()) return;
    for (int v = 0; v < m; ++v) {
      if (std::find(current.begin(), current.end(), v) != current.end()) continue;
      if (is_compatible_with_all(v)) return;
    }
    DisjointFamily fam;
    for (int u : current) {
      fam.members.push_back(members[u]);
      fam.types.push_back(types[u]);
      fam.budget += types[u].n + 1;
    }
    out.push_back(std::move(fam));
  };
  auto rec = [&](auto&& self, int next) -> void {
    if (++guard > 2000000)
      throw std::logic_error("disjoint_a_budget: family enumeration exceeded its budget");
    emit_if_maximal();
    for (int v = next; v < m; ++v) {
      if (!is_compatible_with_all(v)) continue;
      current.push_back(v);
      self(self, v + 1);
      current.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<DisjointFamily> disjoint_a_budget(const ExceptionalLattice& L) {
  std::vector<DisjointFamily> out = disjoint_a_families(L);
  for (const DisjointFamily& fam : out)
    if (fam.budget > L.rank())
      throw std::logic_error("disjoint_a_budget: family budget exceeds the lattice rank");
  return out;
}

}  // namespace excdiv
