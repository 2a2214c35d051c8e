#pragma once

#include <map>
#include <utility>
#include <vector>

#include "adiff/scalars.hpp"

namespace adiff {

// Sparse vector over F_p, sorted by index, no zeros.
using SparseVec = std::vector<std::pair<int, Fp>>;

SparseVec axpy(const SparseVec& x, Fp a, const SparseVec& y, int p);  // x + a*y

// Row echelon form built incrementally; leading entries normalized to 1.
class SparseEchelon {
 public:
  explicit SparseEchelon(int p) : p_(p) {}
  // Reduces v against the pivots; returns the remainder. If trackCombo is set,
  // the same row operations are applied to *combo.
  SparseVec reduce(SparseVec v, SparseVec* combo = nullptr) const;
  // Inserts v; returns false if v was already in the span.
  bool insert(SparseVec v, SparseVec combo = {});
  // Like insert, but when v lies in the span returns the dependency (combo of v minus pivot combos).
  bool insertTracking(SparseVec v, SparseVec combo, SparseVec* dependency);
  int rank() const { return int(rows_.size()); }
  const std::map<int, std::pair<SparseVec, SparseVec>>& rows() const { return rows_; }

 private:
  int p_;
  std::map<int, std::pair<SparseVec, SparseVec>> rows_;  // lead -> (row, combo)
};

}  // namespace adiff
