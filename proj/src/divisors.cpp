#include "excdiv/divisors.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "excdiv/minsplit.hpp"

namespace excdiv {

std::int64_t arithmetic_genus(const ExceptionalLattice& L, const Divisor& D) {
  if (!D.is_effective())
    throw std::invalid_argument("arithmetic_genus: divisor must be effective and non-zero");
  std::int64_t k = L.canonical_degree(D);
  std::int64_t sq = L.self_intersection(D);
  if ((k + sq) % 2 != 0)
    throw std::logic_error("arithmetic_genus: K.D + D^2 is odd; lattice is corrupted");
  return 1 + (k + sq) / 2;
}

DecompositionRange::DecompositionRange(Divisor d) : d_(std::move(d)) {
  if (!d_.is_effective())
    throw std::invalid_argument("decompositions: divisor must be effective and non-zero");
}

std::int64_t DecompositionRange::count() const {
  __int128 n = 1;
  for (auto c : d_.e) {
    n *= c + 1;
    if (n > INT64_MAX) throw std::overflow_error("decompositions: count exceeds 64-bit range");
  }
  return static_cast<std::int64_t>(n) - 2;
}

DecompositionRange::iterator::iterator(const Divisor* d, bool at_end) : d_(d), at_end_(at_end) {
  if (!at_end_) {
    a_ = Divisor::zero(d_->size());
    advance();  // skip A = 0
  }
}

std::pair<Divisor, Divisor> DecompositionRange::iterator::operator*() const {
  return {a_, *d_ - a_};
}

DecompositionRange::iterator& DecompositionRange::iterator::operator++() {
  advance();
  return *this;
}

void DecompositionRange::iterator::advance() {
  // Odometer with the last coordinate fastest.
  for (int i = d_->size() - 1; i >= 0; --i) {
    if (a_.e[i] < d_->e[i]) {
      ++a_.e[i];
      if (a_ == *d_) break;  // the full divisor is not a proper part
      return;
    }
    a_.e[i] = 0;
  }
  at_end_ = true;
}

DecompositionReport is_m_connected(const ExceptionalLattice& L, const Divisor& D,
                                   std::int64_t m) {
  if (!D.is_effective())
    throw std::invalid_argument("is_m_connected: divisor must be effective and non-zero");

  DecompositionReport report;
  if (D.is_irreducible()) {
    // No decompositions at all: m-connected for every m.
    report.m_connected = true;
    report.irreducible = true;
    return report;
  }

  detail::SplitResult split = detail::min_proper_split(L, D);
  report.order = split.min_pairing;
  report.m_connected = split.min_pairing >= m;
  if (!report.m_connected)
    report.witness = std::make_pair(split.argmin, D - split.argmin);
  return report;
}

namespace {

// Integer vectors y with sum(y_i^2) = norm and sum(y_i) = total, ascending
// lexicographically.
void norm_vectors(int s, std::int64_t norm, std::int64_t total,
                  std::vector<std::int64_t>& prefix,
                  const std::function<void(const std::vector<std::int64_t>&)>& emit) {
  int idx = static_cast<int>(prefix.size());
  if (idx == s) {
    if (norm == 0 && total == 0) emit(prefix);
    return;
  }
  std::int64_t r = 0;
  while ((r + 1) * (r + 1) <= norm) ++r;
  // Remaining coordinates are bounded by the residual norm budget.
  for (std::int64_t v = -r; v <= r; ++v) {
    std::int64_t rest_norm = norm - v * v;
    std::int64_t rest = total - v;
    std::int64_t bound = 0;
    while ((bound + 1) * (bound + 1) <= rest_norm) ++bound;
    if (rest > bound * static_cast<std::int64_t>(s - idx - 1) ||
        rest < -bound * static_cast<std::int64_t>(s - idx - 1))
      continue;
    prefix.push_back(v);
    norm_vectors(s, rest_norm, rest, prefix, emit);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Divisor> enumerate_contracted(const ExceptionalLattice& L, std::int64_t k_deg,
                                          std::int64_t self_int) {
  if (self_int >= 0)
    throw std::invalid_argument("enumerate_contracted: self-intersection must be negative");

  std::vector<Divisor> out;
  std::vector<std::int64_t> prefix;
  norm_vectors(L.rank(), -self_int, -k_deg, prefix,
               [&](const std::vector<std::int64_t>& y) {
                 Divisor d = L.to_e_basis(y);
                 if (d.is_effective()) out.push_back(d);
               });
  return out;
}

std::vector<Divisor> connected_components(const ExceptionalLattice& L, const Divisor& D) {
  if (!D.is_effective())
    throw std::invalid_argument("connected_components: divisor must be effective and non-zero");
  std::vector<int> supp = D.support();
  std::vector<bool> used(L.rank(), false);
  std::vector<Divisor> out;
  for (int start : supp) {
    if (used[start]) continue;
    std::vector<int> stack = {start};
    used[start] = true;
    Divisor piece = Divisor::zero(L.rank());
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      piece.e[u] = D.e[u];
      for (int v : supp)
        if (!used[v] && L.gram(u, v) > 0) {
          used[v] = true;
          stack.push_back(v);
        }
    }
    out.push_back(piece);
  }
  return out;
}

}  // namespace excdiv
