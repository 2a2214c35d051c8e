#include "adiff/dpalg.hpp"

#include <algorithm>

namespace adiff {

DPElem DPElem::one(const Level& lv, int trunc) { return basis(lv, MultiIndex(lv.r), onePoly(lv), trunc); }

DPElem DPElem::basis(const Level& lv, const MultiIndex& s, const PolyP& f, int trunc) {
  DPElem r(lv, trunc);
  r.addTerm(s, f);
  return r;
}

PolyP DPElem::coeff(const MultiIndex& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? zeroPoly(lv_) : it->second;
}

void DPElem::addTerm(const MultiIndex& s, const PolyP& f) {
  if (f.isZero()) return;
  if (s.total() > trunc_) {
    truncated_ = true;
    return;
  }
  auto [it, inserted] = terms_.try_emplace(s, f);
  if (!inserted) {
    it->second += f;
    if (it->second.isZero()) terms_.erase(it);
  }
}

DPElem& DPElem::operator+=(const DPElem& o) {
  requireSameLevel(lv_, o.lv_, "DPElem +");
  trunc_ = std::min(trunc_, o.trunc_);
  truncated_ = truncated_ || o.truncated_;
  for (const auto& [s, f] : o.terms_) addTerm(s, f);
  return *this;
}

DPElem& DPElem::operator-=(const DPElem& o) {
  requireSameLevel(lv_, o.lv_, "DPElem -");
  trunc_ = std::min(trunc_, o.trunc_);
  truncated_ = truncated_ || o.truncated_;
  for (const auto& [s, f] : o.terms_) addTerm(s, -f);
  return *this;
}

DPElem DPElem::operator*(const DPElem& o) const { return mulDP(*this, o); }

DPElem DPElem::scaled(Fp c) const {
  DPElem r(lv_, trunc_);
  r.truncated_ = truncated_;
  for (const auto& [s, f] : terms_) r.addTerm(s, f.scaled(c));
  return r;
}

DPElem DPElem::leftMul(const PolyP& g) const {
  DPElem r(lv_, trunc_);
  r.truncated_ = truncated_;
  for (const auto& [s, f] : terms_) r.addTerm(s, g * f);
  return r;
}

DPElem DPElem::withTrunc(int trunc) const {
  DPElem r(lv_, trunc);
  r.truncated_ = truncated_;
  for (const auto& [s, f] : terms_) r.addTerm(s, f);
  return r;
}

DPElem mulDP(const DPElem& a, const DPElem& b) {
  requireSameLevel(a.level(), b.level(), "mulDP");
  const Level& lv = a.level();
  DPElem r(lv, std::min(a.trunc(), b.trunc()));
  if (a.truncated() || b.truncated()) r.markTruncated();
  for (const auto& [s, f] : a.terms())
    for (const auto& [u, g] : b.terms()) {
      Fp c = braceMIModP(s, u, lv);
      if (c) r.addTerm(s + u, (f * g).scaled(c));
    }
  return r;
}

// ---------------------------------------------------------------- gamma

namespace {
Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer qFactorial(const MultiIndex& s, const Level& lv) {
  Integer r = 1;
  for (int i = 0; i < s.size(); ++i) r *= factorial(qPart(s[i], lv.p, lv.m));
  return r;
}

// (v_p(a), a / p^v mod p) for a != 0.
std::pair<long, Fp> splitValuation(const Integer& a, int p) {
  Integer rest, pp = p;
  long v = long(mpz_remove(rest.get_mpz_t(), a.get_mpz_t(), pp.get_mpz_t()));
  return {v, modP(rest, p)};
}
}  // namespace

GammaTower::GammaTower(const Level& lv, const std::map<MultiIndex, PolyZ>& lifted, int trunc)
    : lv_(lv), trunc_(trunc), L_(1) {
  minDeg_ = -1;
  for (const auto& [s, f] : lifted) {
    if (f.isZero()) continue;
    if (s.isZero()) throw Error(ErrorCode::InvalidInput, "divided powers need an element without constant term");
    L_ = lcm(L_, qFactorial(s, lv));
    if (minDeg_ < 0 || s.total() < minDeg_) minDeg_ = s.total();
  }
  for (const auto& [s, f] : lifted)
    if (!f.isZero()) scaled_.emplace(s, f.scaled(L_ / qFactorial(s, lv)));
  power_.emplace(MultiIndex(lv.r), PolyZ::monomial(MultiIndex(lv.r), 1));
  gammas_.push_back(DPElem::one(lv, trunc));
}

GammaTower::GammaTower(const DPElem& w) : GammaTower(w.level(), [&] {
  std::map<MultiIndex, PolyZ> lifted;
  for (const auto& [s, f] : w.terms()) lifted.emplace(s, PolyZ::lift(f));
  return lifted;
}(), w.trunc()) {
  truncated_ = w.truncated();
}

const DPElem& GammaTower::gamma(long k) {
  const int p = lv_.p;
  while (long(gammas_.size()) <= k) {
    const long j = long(gammas_.size());
    std::map<MultiIndex, PolyZ> next;
    bool dropped = false;
    for (const auto& [s, f] : power_)
      for (const auto& [u, g] : scaled_) {
        MultiIndex su = s + u;
        if (su.total() > trunc_) {
          dropped = true;
          continue;
        }
        auto it = next.try_emplace(su, PolyZ(lv_.r)).first;
        it->second += f * g;
      }
    power_ = std::move(next);
    if (dropped) truncated_ = true;

    // coefficient of tau^{s} in W^j / j! is A * q_s! / (L^j j!).
    Integer D = factorial(j);
    for (long i = 0; i < j; ++i) D *= L_;
    const auto [vD, uD] = splitValuation(D, p);
    const Fp uDinv = invModP(uD, p);
    DPElem g(lv_, trunc_);
    if (truncated_) g.markTruncated();
    for (const auto& [s, A] : power_) {
      long vq = 0;
      Fp uq = 1;
      for (int i = 0; i < s.size(); ++i) {
        long q = qPart(s[i], p, lv_.m);
        vq += vpFactorial(q, p);
        uq = mulP(uq, factorialUnitModP(q, p), p);
      }
      PolyP c(p, lv_.r);
      for (const auto& [e, a] : A.terms()) {
        auto [va, ua] = splitValuation(a, p);
        long v = va + vq - vD;
        if (v < 0)
          throw Error(ErrorCode::NotPIntegral, "divided power gamma_" + std::to_string(j) + " is not p-integral at tau^" + s.str());
        if (v == 0) c.addTerm(e, mulP(mulP(ua, uq, p), uDinv, p));
      }
      g.addTerm(s, c);
    }
    gammas_.push_back(std::move(g));
  }
  return gammas_[std::size_t(k)];
}

DPElem gammaDP(const DPElem& w, long k) {
  GammaTower tower(w);
  return tower.gamma(k);
}

// ---------------------------------------------------------------- Taylor, pairing

DPElem taylor(const PolyP& f, const Level& lv, int trunc) {
  DPElem r(lv, trunc);
  const int p = lv.p;
  for (const auto& [e, c] : f.terms()) {
    forEachBelowEq(e, [&](const MultiIndex& k) {
      Fp x = c;
      for (int i = 0; i < k.size() && x; ++i)
        x = mulP(x, mulP(factorialModP(qPart(k[i], p, lv.m), p), binomModP(e[i], k[i], p), p), p);
      if (x) r.addTerm(k, PolyP::monomial(p, e - k, long(x)));
    });
  }
  return r;
}

PolyP pairOp(const DiffOp& P, const DPElem& w) {
  requireSameLevel(P.level(), w.level(), "pairOp");
  if (w.truncated() && P.order() > w.trunc())
    throw Error(ErrorCode::TruncationTooSmall, "pairing needs tau-terms beyond the truncation");
  PolyP r = zeroPoly(P.level());
  for (const auto& [k, f] : P.terms()) {
    auto it = w.terms().find(k);
    if (it != w.terms().end()) r += f * it->second;
  }
  return r;
}

void DPTensor::add(const MultiIndex& a, const MultiIndex& b, const PolyP& f) {
  if (f.isZero()) return;
  auto [it, inserted] = terms.try_emplace({a, b}, f);
  if (!inserted) {
    it->second += f;
    if (it->second.isZero()) terms.erase(it);
  }
}

DPTensor comultDP(const DPElem& w) {
  const Level& lv = w.level();
  DPTensor r{lv, {}};
  for (const auto& [n, g] : w.terms())
    forEachBelowEq(n, [&](const MultiIndex& i) {
      Fp c = angleMIModP(i, n - i, lv);
      if (c) r.add(i, n - i, g.scaled(c));
    });
  return r;
}

}  // namespace adiff
