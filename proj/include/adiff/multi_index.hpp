#pragma once

#include <array>
#include <cassert>
#include <compare>
#include <functional>
#include <string>

#include "adiff/context.hpp"

namespace adiff {

// Exponent vector of fixed capacity; ordered lexicographically.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(int n) : n_(n) { assert(n >= 0 && n <= kMaxVars); }
  MultiIndex(std::initializer_list<int> xs);

  static MultiIndex unit(int n, int i, int value = 1);

  int size() const { return n_; }
  int operator[](int i) const { return e_[i]; }
  int& operator[](int i) { return e_[i]; }
  long total() const;
  bool isZero() const;

  // Coordinatewise comparison.
  bool leq(const MultiIndex& o) const;
  bool allBelow(long bound) const;
  bool divisibleBy(long d) const;

  MultiIndex operator+(const MultiIndex& o) const;
  MultiIndex operator-(const MultiIndex& o) const;
  MultiIndex scaled(long c) const;
  MultiIndex divided(long c) const;
  MultiIndex modulo(long c) const;

  auto operator<=>(const MultiIndex& o) const {
    if (auto c = n_ <=> o.n_; c != 0) return c;
    for (int i = 0; i < n_; ++i)
      if (auto c = e_[i] <=> o.e_[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }
  bool operator==(const MultiIndex& o) const { return (*this <=> o) == 0; }

  std::string str() const;

 private:
  std::array<int, kMaxVars> e_{};
  int n_ = 0;
};

// All a with 0 <= a <= bound coordinatewise, in lex order.
void forEachBelowEq(const MultiIndex& bound, const std::function<void(const MultiIndex&)>& fn);
// All a in N^n with |a| <= d, in lex order.
void forEachTotalDegreeLeq(int n, long d, const std::function<void(const MultiIndex&)>& fn);
// All a with a_i < bound for every i, in lex order (the bases of quotient and Kaneda matrices).
void forEachBox(int n, long bound, const std::function<void(const MultiIndex&)>& fn);

}  // namespace adiff
