#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace excdiv {

// A divisor supported on the exceptional locus, stored as integer
// coefficients of the strict transforms e_1..e_s. Plain value type;
// effectivity is a property checked where operations require it, not an
// invariant of the representation.
struct Divisor {
  std::vector<std::int64_t> e;

  Divisor() = default;
  explicit Divisor(std::vector<std::int64_t> coords) : e(std::move(coords)) {}
  static Divisor zero(int s) { return Divisor(std::vector<std::int64_t>(s, 0)); }
  static Divisor unit(int s, int i) {
    Divisor d = zero(s);
    d.e[i] = 1;
    return d;
  }

  int size() const { return static_cast<int>(e.size()); }

  bool is_zero() const {
    for (auto c : e)
      if (c != 0) return false;
    return true;
  }
  bool is_effective() const {
    for (auto c : e)
      if (c < 0) return false;
    return !is_zero();
  }
  bool is_reduced() const {
    for (auto c : e)
      if (c < 0 || c > 1) return false;
    return true;
  }
  // Reduced with a single component.
  bool is_irreducible() const {
    return is_reduced() && std::accumulate(e.begin(), e.end(), std::int64_t{0}) == 1;
  }

  std::vector<int> support() const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
      if (e[i] != 0) out.push_back(i);
    return out;
  }

  friend Divisor operator+(const Divisor& a, const Divisor& b) {
    Divisor r = a;
    for (int i = 0; i < r.size(); ++i) r.e[i] += b.e[i];
    return r;
  }
  friend Divisor operator-(const Divisor& a, const Divisor& b) {
    Divisor r = a;
    for (int i = 0; i < r.size(); ++i) r.e[i] -= b.e[i];
    return r;
  }
  friend Divisor operator*(std::int64_t c, const Divisor& d) {
    Divisor r = d;
    for (auto& x : r.e) x *= c;
    return r;
  }

  // Componentwise a <= b with a != b ("a is a proper part of b").
  friend bool strictly_below(const Divisor& a, const Divisor& b) {
    bool strict = false;
    for (int i = 0; i < a.size(); ++i) {
      if (a.e[i] > b.e[i]) return false;
      if (a.e[i] < b.e[i]) strict = true;
    }
    return strict;
  }

  bool operator==(const Divisor&) const = default;
  friend bool operator<(const Divisor& a, const Divisor& b) { return a.e < b.e; }

  // "1,0,2" -- matches the CLI literal syntax.
  std::string str() const {
    std::string out;
    for (int i = 0; i < size(); ++i) {
      if (i) out += ",";
      out += std::to_string(e[i]);
    }
    return out;
  }
};

}  // namespace excdiv
