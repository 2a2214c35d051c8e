#include "adiff/linalg.hpp"

namespace adiff {

SparseVec axpy(const SparseVec& x, Fp a, const SparseVec& y, int p) {
  SparseVec r;
  r.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      r.push_back(x[i++]);
    } else if (i == x.size() || y[j].first < x[i].first) {
      Fp v = mulP(a, y[j].second, p);
      if (v) r.emplace_back(y[j].first, v);
      ++j;
    } else {
      Fp v = addP(x[i].second, mulP(a, y[j].second, p), p);
      if (v) r.emplace_back(x[i].first, v);
      ++i;
      ++j;
    }
  }
  return r;
}

SparseVec SparseEchelon::reduce(SparseVec v, SparseVec* combo) const {
  std::size_t start = 0;
  SparseVec out;
  while (start < v.size()) {
    auto it = rows_.find(v[start].first);
    if (it == rows_.end()) {
      ++start;
      continue;
    }
    Fp f = negP(v[start].second, p_);
    v = axpy(v, f, it->second.first, p_);
    if (combo) *combo = axpy(*combo, f, it->second.second, p_);
    // Entries before `start` are untouched: pivot rows only have entries at or after their lead.
    while (start < v.size() && v[start].first < it->first) ++start;
  }
  return v;
}

bool SparseEchelon::insertTracking(SparseVec v, SparseVec combo, SparseVec* dependency) {
  v = reduce(std::move(v), &combo);
  if (v.empty()) {
    if (dependency) *dependency = std::move(combo);
    return false;
  }
  Fp inv = invModP(v.front().second, p_);
  for (auto& [i, c] : v) c = mulP(c, inv, p_);
  for (auto& [i, c] : combo) c = mulP(c, inv, p_);
  int lead = v.front().first;
  rows_.emplace(lead, std::make_pair(std::move(v), std::move(combo)));
  return true;
}

bool SparseEchelon::insert(SparseVec v, SparseVec combo) { return insertTracking(std::move(v), std::move(combo), nullptr); }

}  // namespace adiff
