#include "adiff/poly.hpp"

namespace adiff {

PolyP PolyP::constant(int p, int nvars, long c, VarFamily fam) {
  PolyP r(p, nvars, fam);
  r.addTerm(MultiIndex(nvars), modP(c, p));
  return r;
}

PolyP PolyP::monomial(int p, const MultiIndex& e, long c, VarFamily fam) {
  PolyP r(p, e.size(), fam);
  r.addTerm(e, modP(c, p));
  return r;
}

PolyP PolyP::variable(int p, int nvars, int i, VarFamily fam) {
  return monomial(p, MultiIndex::unit(nvars, i), 1, fam);
}

Fp PolyP::coeff(const MultiIndex& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0 : it->second;
}

void PolyP::addTerm(const MultiIndex& e, Fp c) {
  c %= Fp(p_);
  if (!c) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second = addP(it->second, c, p_);
    if (!it->second) terms_.erase(it);
  }
}

void PolyP::adopt(const PolyP& o) {
  if (p_ == 0) {
    p_ = o.p_;
    n_ = o.n_;
    fam_ = o.fam_;
  }
}

PolyP& PolyP::operator+=(const PolyP& o) {
  adopt(o);
  for (const auto& [e, c] : o.terms_) addTerm(e, c);
  return *this;
}

PolyP& PolyP::operator-=(const PolyP& o) {
  adopt(o);
  for (const auto& [e, c] : o.terms_) addTerm(e, negP(c, p_));
  return *this;
}

PolyP PolyP::operator-() const {
  PolyP r(p_, n_, fam_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, negP(c, p_));
  return r;
}

PolyP PolyP::operator*(const PolyP& o) const {
  PolyP r(p_ ? p_ : o.p_, p_ ? n_ : o.n_, p_ ? fam_ : o.fam_);
  if (isZero() || o.isZero()) return r;
  const int p = r.p_;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) r.addTerm(e1 + e2, mulP(c1, c2, p));
  return r;
}

PolyP PolyP::scaled(Fp c) const {
  PolyP r(p_, n_, fam_);
  c %= Fp(p_ ? p_ : 1);
  if (!c) return r;
  for (const auto& [e, x] : terms_) r.terms_.emplace(e, mulP(x, c, p_));
  return r;
}

PolyP PolyP::mulMonomial(const MultiIndex& m, Fp c) const {
  PolyP r(p_, n_, fam_);
  c %= Fp(p_);
  if (!c) return r;
  for (const auto& [e, x] : terms_) r.terms_.emplace(e + m, mulP(x, c, p_));
  return r;
}

PolyP PolyP::pow(long e) const {
  PolyP result = constant(p_, n_, 1, fam_), base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

long PolyP::totalDegree() const {
  long d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.total());
  return d;
}

PolyP PolyP::hasse(const MultiIndex& k, const Level& lv) const {
  PolyP r(p_, n_, fam_);
  const long d = lv.pm();
  Fp pre = 1;
  for (int i = 0; i < k.size(); ++i) pre = mulP(pre, factorialModP(k[i] / d, p_), p_);
  if (!pre) return r;
  for (const auto& [e, c] : terms_) {
    if (!k.leq(e)) continue;
    Fp x = mulP(c, pre, p_);
    for (int i = 0; i < k.size() && x; ++i) x = mulP(x, binomModP(e[i], k[i], p_), p_);
    if (x) r.addTerm(e - k, x);
  }
  return r;
}

PolyP PolyP::derivative(int i) const {
  PolyP r(p_, n_, fam_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    MultiIndex f = e;
    --f[i];
    r.addTerm(f, mulP(c, modP(long(e[i]), p_), p_));
  }
  return r;
}

PolyP PolyP::expandExponents(long q, VarFamily fam) const {
  PolyP r(p_, n_, fam);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e.scaled(q), c);
  return r;
}

bool PolyP::exponentsDivisibleBy(long q) const {
  for (const auto& [e, c] : terms_)
    if (!e.divisibleBy(q)) return false;
  return true;
}

PolyP PolyP::contractExponents(long q, VarFamily fam) const {
  PolyP r(p_, n_, fam);
  for (const auto& [e, c] : terms_) {
    if (!e.divisibleBy(q)) throw Error(ErrorCode::InvalidInput, "exponent " + e.str() + " not divisible");
    r.terms_.emplace(e.divided(q), c);
  }
  return r;
}

// ---------------------------------------------------------------- PolyZ

PolyZ PolyZ::monomial(const MultiIndex& e, const Integer& c) {
  PolyZ r(e.size());
  r.addTerm(e, c);
  return r;
}

PolyZ PolyZ::lift(const PolyP& f) {
  PolyZ r(f.nvars());
  for (const auto& [e, c] : f.terms()) r.terms_.emplace(e, Integer(c));
  return r;
}

Integer PolyZ::coeff(const MultiIndex& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Integer(0) : it->second;
}

void PolyZ::addTerm(const MultiIndex& e, const Integer& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

PolyZ& PolyZ::operator+=(const PolyZ& o) {
  if (!n_) n_ = o.n_;
  for (const auto& [e, c] : o.terms_) addTerm(e, c);
  return *this;
}

PolyZ& PolyZ::operator-=(const PolyZ& o) {
  if (!n_) n_ = o.n_;
  for (const auto& [e, c] : o.terms_) addTerm(e, -c);
  return *this;
}

PolyZ PolyZ::operator*(const PolyZ& o) const {
  PolyZ r(n_ ? n_ : o.n_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) r.addTerm(e1 + e2, c1 * c2);
  return r;
}

PolyZ PolyZ::scaled(const Integer& c) const {
  PolyZ r(n_);
  if (c == 0) return r;
  for (const auto& [e, x] : terms_) r.terms_.emplace(e, x * c);
  return r;
}

PolyZ PolyZ::pow(long e) const {
  PolyZ result = monomial(MultiIndex(n_), 1), base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

PolyZ PolyZ::hasse(const MultiIndex& k, const Level& lv) const {
  PolyZ r(n_);
  Integer pre = 1;
  for (int i = 0; i < k.size(); ++i) pre *= factorial(qPart(k[i], lv.p, lv.m));
  for (const auto& [e, c] : terms_) {
    if (!k.leq(e)) continue;
    Integer x = c * pre;
    for (int i = 0; i < k.size(); ++i) x *= binomial(e[i], k[i]);
    r.addTerm(e - k, x);
  }
  return r;
}

PolyP PolyZ::reduce(int p) const {
  PolyP r(p, n_);
  for (const auto& [e, c] : terms_) r.addTerm(e, modP(c, p));
  return r;
}

PolyZ PolyZ::reducedMod(const Integer& N) const {
  PolyZ r(n_);
  for (const auto& [e, c] : terms_) {
    Integer x;
    mpz_fdiv_r(x.get_mpz_t(), c.get_mpz_t(), N.get_mpz_t());
    r.addTerm(e, x);
  }
  return r;
}

bool PolyZ::allDivisibleBy(const Integer& d) const {
  for (const auto& [e, c] : terms_)
    if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t())) return false;
  return true;
}

PolyZ PolyZ::dividedExactly(const Integer& d) const {
  PolyZ r(n_);
  for (const auto& [e, c] : terms_) {
    Integer x;
    mpz_divexact(x.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    r.terms_.emplace(e, x);
  }
  return r;
}

}  // namespace adiff
