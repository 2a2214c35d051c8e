#pragma once

#include <climits>
#include <map>
#include <utility>
#include <vector>

#include "adiff/diffop.hpp"
#include "adiff/poly.hpp"

namespace adiff {

inline constexpr int kNoTrunc = INT_MAX;

// Element sum_s f_s tau^{s} of the level-m divided-power algebra, kept up to
// total tau-degree trunc. The flag records that some nonzero term was dropped.
class DPElem {
 public:
  using Terms = std::map<MultiIndex, PolyP>;

  DPElem() = default;
  explicit DPElem(const Level& lv, int trunc = kNoTrunc) : lv_(lv), trunc_(trunc) {}

  static DPElem one(const Level& lv, int trunc = kNoTrunc);
  static DPElem basis(const Level& lv, const MultiIndex& s, const PolyP& f, int trunc = kNoTrunc);

  const Level& level() const { return lv_; }
  int trunc() const { return trunc_; }
  bool truncated() const { return truncated_; }
  void markTruncated() { truncated_ = true; }
  const Terms& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  PolyP coeff(const MultiIndex& s) const;
  void addTerm(const MultiIndex& s, const PolyP& f);

  DPElem& operator+=(const DPElem& o);
  DPElem& operator-=(const DPElem& o);
  DPElem operator+(const DPElem& o) const { DPElem r = *this; return r += o; }
  DPElem operator-(const DPElem& o) const { DPElem r = *this; return r -= o; }
  DPElem operator*(const DPElem& o) const;
  DPElem scaled(Fp c) const;
  DPElem leftMul(const PolyP& f) const;
  DPElem withTrunc(int trunc) const;

  bool operator==(const DPElem& o) const { return lv_ == o.lv_ && terms_ == o.terms_; }
  bool operator!=(const DPElem& o) const { return !(*this == o); }

 private:
  Level lv_;
  int trunc_ = kNoTrunc;
  bool truncated_ = false;
  Terms terms_;
};

DPElem mulDP(const DPElem& a, const DPElem& b);

// Usual divided powers on the PD ideal, through the rational model
// tau^{s} = tau^s / q_s!. Exact up to the truncation of w; a coefficient
// that is not p-integral raises NotPIntegral.
class GammaTower {
 public:
  // Coefficients of w are given by integer lifts (the result does not depend on the choice).
  GammaTower(const Level& lv, const std::map<MultiIndex, PolyZ>& lifted, int trunc);
  explicit GammaTower(const DPElem& w);

  const DPElem& gamma(long k);  // cached
  long maxComputed() const { return long(gammas_.size()) - 1; }

 private:
  Level lv_;
  int trunc_;
  bool truncated_ = false;
  Integer L_;  // lcm of the q_s! over the support
  long minDeg_ = 0;
  std::map<MultiIndex, PolyZ> scaled_;  // L * W
  std::map<MultiIndex, PolyZ> power_;   // (L * W)^k for k = gammas_.size() - 1
  std::vector<DPElem> gammas_;
};

DPElem gammaDP(const DPElem& w, long k);

DPElem taylor(const PolyP& f, const Level& lv, int trunc = kNoTrunc);

PolyP pairOp(const DiffOp& P, const DPElem& w);

// Element of O_X<tau>^(m) (x)_{O_X} O_X<tau>^(m).
struct DPTensor {
  Level lv;
  std::map<std::pair<MultiIndex, MultiIndex>, PolyP> terms;
  void add(const MultiIndex& a, const MultiIndex& b, const PolyP& f);
};

DPTensor comultDP(const DPElem& w);

}  // namespace adiff
