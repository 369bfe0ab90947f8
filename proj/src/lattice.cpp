#include "excdiv/lattice.hpp"

#include <stdexcept>
#include <string>

namespace excdiv {

namespace {

// Leading principal minors by fraction-free Gaussian elimination
// (Bareiss). Intermediate values are exact minors, kept in __int128 and
// narrowed with a range check.
std::vector<std::int64_t> bareiss_minors(const Matrix& g) {
  const int n = static_cast<int>(g.size());
  std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = g[i][j];

  std::vector<std::int64_t> minors(n);
  __int128 prev = 1;
  for (int k = 0; k < n; ++k) {
    if (k > 0) {
      for (int i = k; i < n; ++i)
        for (int j = k; j < n; ++j) {
          __int128 num = a[i][j] * a[k - 1][k - 1] - a[i][k - 1] * a[k - 1][j];
          a[i][j] = num / prev;
        }
      prev = a[k - 1][k - 1];
      if (prev == 0)
        throw std::logic_error("lattice: singular leading block in Gram matrix");
    }
    __int128 m = a[k][k];
    if (m > INT64_MAX || m < INT64_MIN)
      throw std::overflow_error("lattice: principal minor exceeds 64-bit range");
    minors[k] = static_cast<std::int64_t>(m);
  }
  return minors;
}

}  // namespace

ExceptionalLattice::ExceptionalLattice(const ProximityForest& f) : forest_(f) {
  validate(forest_);
  s_ = forest_.s;

  // M: e_j = E_j - sum over later points proximate to q_j.
  e_in_E_.assign(s_, std::vector<std::int64_t>(s_, 0));
  for (int j = 0; j < s_; ++j) e_in_E_[j][j] = 1;
  for (int m = 0; m < s_; ++m)
    for (int j : forest_.prox[m]) e_in_E_[m][j] = -1;

  // M^-1 by the recursion E_i = e_i + sum of E_m over m proximate to q_i;
  // proximate points come later, so fill columns from the right.
  E_in_e_.assign(s_, std::vector<std::int64_t>(s_, 0));
  for (int i = s_ - 1; i >= 0; --i) {
    E_in_e_[i][i] = 1;
    for (int m = i + 1; m < s_; ++m) {
      bool prox_to_i = false;
      for (int j : forest_.prox[m]) prox_to_i |= (j == i);
      if (!prox_to_i) continue;
      for (int r = 0; r < s_; ++r) E_in_e_[r][i] += E_in_e_[r][m];
    }
  }

  // gram = -M^T M, and K.e_j = -(column sum of M).
  gram_.assign(s_, std::vector<std::int64_t>(s_, 0));
  for (int i = 0; i < s_; ++i)
    for (int j = i; j < s_; ++j) {
      std::int64_t acc = 0;
      for (int a = 0; a < s_; ++a) acc += e_in_E_[a][i] * e_in_E_[a][j];
      gram_[i][j] = gram_[j][i] = -acc;
    }
  k_deg_.assign(s_, 0);
  for (int j = 0; j < s_; ++j) {
    std::int64_t col_sum = 0;
    for (int a = 0; a < s_; ++a) col_sum += e_in_E_[a][j];
    k_deg_[j] = -col_sum;
  }

  // Certification.
  minors_ = bareiss_minors(gram_);
  for (int k = 0; k < s_; ++k) {
    bool ok = (k % 2 == 0) ? minors_[k] < 0 : minors_[k] > 0;
    if (!ok)
      throw std::logic_error("lattice: Gram matrix failed the negative-definiteness certificate");
  }
  for (int i = 0; i < s_; ++i)
    for (int j = 0; j < s_; ++j) {
      std::int64_t acc = 0;
      for (int a = 0; a < s_; ++a) acc += e_in_E_[i][a] * E_in_e_[a][j];
      if (acc != (i == j ? 1 : 0))
        throw std::logic_error("lattice: basis change does not invert the expansion");
    }
  for (int i = 0; i < s_; ++i) {
    if (E_in_e_[i][i] != 1)
      throw std::logic_error("lattice: total transform misses its own component");
    for (int r = 0; r < s_; ++r)
      if (E_in_e_[r][i] < 0)
        throw std::logic_error("lattice: total transform is not effective");
  }
  for (int i = 0; i < s_; ++i)
    if (k_deg_[i] != -2 - gram_[i][i])
      throw std::logic_error("lattice: canonical degrees break adjunction");
}

void ExceptionalLattice::check_dim(const Divisor& d) const {
  if (d.size() != s_)
    throw std::invalid_argument("divisor has " + std::to_string(d.size()) +
                                " coordinates, lattice rank is " + std::to_string(s_));
}

std::int64_t ExceptionalLattice::intersect(const Divisor& a, const Divisor& b) const {
  check_dim(a);
  check_dim(b);
  __int128 acc = 0;
  for (int i = 0; i < s_; ++i) {
    if (a.e[i] == 0) continue;
    __int128 row = 0;
    for (int j = 0; j < s_; ++j) row += static_cast<__int128>(gram_[i][j]) * b.e[j];
    acc += static_cast<__int128>(a.e[i]) * row;
  }
  if (acc > INT64_MAX || acc < INT64_MIN)
    throw std::overflow_error("intersection number exceeds 64-bit range");
  return static_cast<std::int64_t>(acc);
}

std::int64_t ExceptionalLattice::canonical_degree(const Divisor& d) const {
  check_dim(d);
  std::int64_t acc = 0;
  for (int i = 0; i < s_; ++i) acc += k_deg_[i] * d.e[i];
  return acc;
}

Divisor ExceptionalLattice::total_transform(int i) const {
  if (i < 1 || i > s_)
    throw std::invalid_argument("total transform index " + std::to_string(i) +
                                " out of range 1.." + std::to_string(s_));
  Divisor d = Divisor::zero(s_);
  for (int r = 0; r < s_; ++r) d.e[r] = E_in_e_[r][i - 1];
  return d;
}

std::vector<std::int64_t> ExceptionalLattice::to_E_basis(const Divisor& d) const {
  check_dim(d);
  std::vector<std::int64_t> y(s_, 0);
  for (int a = 0; a < s_; ++a)
    for (int j = 0; j < s_; ++j) y[a] += e_in_E_[a][j] * d.e[j];
  return y;
}

Divisor ExceptionalLattice::to_e_basis(std::span<const std::int64_t> y) const {
  if (static_cast<int>(y.size()) != s_)
    throw std::invalid_argument("E-basis vector has wrong length");
  Divisor d = Divisor::zero(s_);
  for (int r = 0; r < s_; ++r)
    for (int a = 0; a < s_; ++a) d.e[r] += E_in_e_[r][a] * y[a];
  return d;
}

std::int64_t ExceptionalLattice::pair_with_total(const Divisor& d, int i) const {
  // e_j.E_i = -delta_ij + [j in prox(i)], so D.E_i = -d_i + sum of d_j
  // over j in prox(i).
  std::int64_t acc = -d.e[i];
  for (int j : forest_.prox[i]) acc += d.e[j];
  return acc;
}

}  // namespace excdiv
