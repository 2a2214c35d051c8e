#include "adiff/multi_index.hpp"

namespace adiff {

MultiIndex::MultiIndex(std::initializer_list<int> xs) : n_(int(xs.size())) {
  assert(n_ <= kMaxVars);
  int i = 0;
  for (int x : xs) e_[i++] = x;
}

MultiIndex MultiIndex::unit(int n, int i, int value) {
  MultiIndex a(n);
  a.e_[i] = value;
  return a;
}

long MultiIndex::total() const {
  long s = 0;
  for (int i = 0; i < n_; ++i) s += e_[i];
  return s;
}

bool MultiIndex::isZero() const {
  for (int i = 0; i < n_; ++i)
    if (e_[i]) return false;
  return true;
}

bool MultiIndex::leq(const MultiIndex& o) const {
  for (int i = 0; i < n_; ++i)
    if (e_[i] > o.e_[i]) return false;
  return true;
}

bool MultiIndex::allBelow(long bound) const {
  for (int i = 0; i < n_; ++i)
    if (e_[i] >= bound) return false;
  return true;
}

bool MultiIndex::divisibleBy(long d) const {
  for (int i = 0; i < n_; ++i)
    if (e_[i] % d) return false;
  return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
  MultiIndex a(n_);
  for (int i = 0; i < n_; ++i) a.e_[i] = e_[i] + o.e_[i];
  return a;
}

MultiIndex MultiIndex::operator-(const MultiIndex& o) const {
  MultiIndex a(n_);
  for (int i = 0; i < n_; ++i) a.e_[i] = e_[i] - o.e_[i];
  return a;
}

MultiIndex MultiIndex::scaled(long c) const {
  MultiIndex a(n_);
  for (int i = 0; i < n_; ++i) a.e_[i] = int(e_[i] * c);
  return a;
}

MultiIndex MultiIndex::divided(long c) const {
  MultiIndex a(n_);
  for (int i = 0; i < n_; ++i) a.e_[i] = int(e_[i] / c);
  return a;
}

MultiIndex MultiIndex::modulo(long c) const {
  MultiIndex a(n_);
  for (int i = 0; i < n_; ++i) a.e_[i] = int(e_[i] % c);
  return a;
}

std::string MultiIndex::str() const {
  std::string s = "(";
  for (int i = 0; i < n_; ++i) {
    if (i) s += ",";
    s += std::to_string(e_[i]);
  }
  return s + ")";
}

void forEachBelowEq(const MultiIndex& bound, const std::function<void(const MultiIndex&)>& fn) {
  const int n = bound.size();
  MultiIndex a(n);
  while (true) {
    fn(a);
    int i = n - 1;
    while (i >= 0 && a[i] == bound[i]) a[i--] = 0;
    if (i < 0) return;
    ++a[i];
  }
}

namespace {
void totalDegreeRec(MultiIndex& a, int i, long budget, const std::function<void(const MultiIndex&)>& fn) {
  if (i == a.size()) {
    fn(a);
    return;
  }
  for (long v = 0; v <= budget; ++v) {
    a[i] = int(v);
    totalDegreeRec(a, i + 1, budget - v, fn);
  }
  a[i] = 0;
}
}  // namespace

void forEachTotalDegreeLeq(int n, long d, const std::function<void(const MultiIndex&)>& fn) {
  if (d < 0) return;
  MultiIndex a(n);
  totalDegreeRec(a, 0, d, fn);
}

void forEachBox(int n, long bound, const std::function<void(const MultiIndex&)>& fn) {
  if (bound <= 0) return;
  MultiIndex b(n);
  for (int i = 0; i < n; ++i) b[i] = int(bound - 1);
  forEachBelowEq(b, fn);
}

}  // namespace adiff
