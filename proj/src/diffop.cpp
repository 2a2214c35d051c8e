#include "adiff/diffop.hpp"

#include <algorithm>

namespace adiff {

PolyP zeroPoly(const Level& lv, VarFamily fam) { return PolyP(lv.p, lv.r, fam); }
PolyP onePoly(const Level& lv, VarFamily fam) { return PolyP::constant(lv.p, lv.r, 1, fam); }

// ---------------------------------------------------------------- DiffOp

DiffOp DiffOp::fromPoly(const Level& lv, const PolyP& f) { return basis(lv, MultiIndex(lv.r), f); }

DiffOp DiffOp::basis(const Level& lv, const MultiIndex& k) { return basis(lv, k, onePoly(lv)); }

DiffOp DiffOp::basis(const Level& lv, const MultiIndex& k, const PolyP& f) {
  DiffOp r(lv);
  r.addTerm(k, f);
  return r;
}

DiffOp DiffOp::partial(const Level& lv, int i, long k) {
  if (i < 0 || i >= lv.r) throw Error(ErrorCode::IndexOutOfRange, "coordinate index out of range");
  return basis(lv, MultiIndex::unit(lv.r, i, int(k)));
}

DiffOp DiffOp::coordinate(const Level& lv, int i) {
  if (i < 0 || i >= lv.r) throw Error(ErrorCode::IndexOutOfRange, "coordinate index out of range");
  return fromPoly(lv, PolyP::variable(lv.p, lv.r, i));
}

PolyP DiffOp::coeff(const MultiIndex& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? zeroPoly(lv_) : it->second;
}

void DiffOp::addTerm(const MultiIndex& k, const PolyP& f) {
  if (f.isZero()) return;
  auto [it, inserted] = terms_.try_emplace(k, f);
  if (!inserted) {
    it->second += f;
    if (it->second.isZero()) terms_.erase(it);
  }
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
  requireSameLevel(lv_, o.lv_, "DiffOp +");
  for (const auto& [k, f] : o.terms_) addTerm(k, f);
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) {
  requireSameLevel(lv_, o.lv_, "DiffOp -");
  for (const auto& [k, f] : o.terms_) addTerm(k, -f);
  return *this;
}

DiffOp DiffOp::operator-() const {
  DiffOp r(lv_);
  for (const auto& [k, f] : terms_) r.terms_.emplace(k, -f);
  return r;
}

DiffOp DiffOp::scaled(Fp c) const {
  DiffOp r(lv_);
  for (const auto& [k, f] : terms_) r.addTerm(k, f.scaled(c));
  return r;
}

DiffOp DiffOp::leftMul(const PolyP& g) const {
  DiffOp r(lv_);
  for (const auto& [k, f] : terms_) r.addTerm(k, g * f);
  return r;
}

long DiffOp::order() const {
  long d = -1;
  for (const auto& [k, f] : terms_) d = std::max(d, k.total());
  return d;
}

long DiffOp::thetaDegree() const {
  long d = -1;
  for (const auto& [k, f] : terms_) d = std::max(d, k.divided(lv_.pm1()).total());
  return d;
}

PolyP applyOp(const DiffOp& P, const PolyP& f) {
  PolyP r = zeroPoly(P.level());
  for (const auto& [k, c] : P.terms()) {
    PolyP h = f.hasse(k, P.level());
    if (!h.isZero()) r += c * h;
  }
  return r;
}

namespace {
MultiIndex maxExponents(const PolyP& g) {
  MultiIndex d(g.nvars());
  for (const auto& [e, c] : g.terms())
    for (int i = 0; i < e.size(); ++i) d[i] = std::max(d[i], e[i]);
  return d;
}
}  // namespace

DiffOp mulOp(const DiffOp& P, const DiffOp& Q) {
  requireSameLevel(P.level(), Q.level(), "mulOp");
  const Level& lv = P.level();
  DiffOp r(lv);
  for (const auto& [l, g] : Q.terms()) {
    const MultiIndex gdeg = maxExponents(g);
    for (const auto& [k, f] : P.terms()) {
      MultiIndex bound(lv.r);
      for (int j = 0; j < lv.r; ++j) bound[j] = std::min(k[j], gdeg[j]);
      forEachBelowEq(bound, [&](const MultiIndex& i) {
        const MultiIndex rest = k - i;
        Fp b = braceMIModP(i, rest, lv);
        if (!b) return;
        Fp a = angleMIModP(rest, l, lv);
        if (!a) return;
        PolyP dg = g.hasse(i, lv);
        if (dg.isZero()) return;
        r.addTerm(rest + l, (f * dg).scaled(mulP(a, b, lv.p)));
      });
    }
  }
  return r;
}

DiffOp operator*(const DiffOp& P, const DiffOp& Q) { return mulOp(P, Q); }

DiffOp powOp(const DiffOp& P, long e) {
  DiffOp result = DiffOp::identity(P.level()), base = P;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

// ---------------------------------------------------------------- ZOElem

ZOElem ZOElem::fromPoly(const Level& lv, const PolyP& f) {
  ZOElem z(lv, f.family());
  z.addTerm(MultiIndex(lv.r), f);
  return z;
}

ZOElem ZOElem::theta(const Level& lv, int i, VarFamily fam) {
  ZOElem z(lv, fam);
  z.addTerm(MultiIndex::unit(lv.r, i), onePoly(lv, fam));
  return z;
}

ZOElem ZOElem::one(const Level& lv, VarFamily fam) { return fromPoly(lv, onePoly(lv, fam)); }

PolyP ZOElem::coeff(const MultiIndex& c) const {
  auto it = terms_.find(c);
  return it == terms_.end() ? zeroPoly(lv_, fam_) : it->second;
}

void ZOElem::addTerm(const MultiIndex& c, const PolyP& f) {
  if (f.isZero()) return;
  auto [it, inserted] = terms_.try_emplace(c, f);
  if (!inserted) {
    it->second += f;
    if (it->second.isZero()) terms_.erase(it);
  }
}

ZOElem& ZOElem::operator+=(const ZOElem& o) {
  for (const auto& [c, f] : o.terms_) addTerm(c, f);
  return *this;
}

ZOElem& ZOElem::operator-=(const ZOElem& o) {
  for (const auto& [c, f] : o.terms_) addTerm(c, -f);
  return *this;
}

ZOElem ZOElem::operator*(const ZOElem& o) const {
  ZOElem r(lv_, fam_);
  for (const auto& [a, f] : terms_)
    for (const auto& [b, g] : o.terms_) r.addTerm(a + b, f * g);
  return r;
}

ZOElem ZOElem::scaled(Fp c) const {
  ZOElem r(lv_, fam_);
  for (const auto& [a, f] : terms_) r.addTerm(a, f.scaled(c));
  return r;
}

ZOElem ZOElem::leftMul(const PolyP& g) const {
  ZOElem r(lv_, fam_);
  for (const auto& [a, f] : terms_) r.addTerm(a, g * f);
  return r;
}

long ZOElem::thetaDegree() const {
  long d = -1;
  for (const auto& [c, f] : terms_) d = std::max(d, c.total());
  return d;
}

long ZOElem::minThetaDegree() const {
  long d = -1;
  for (const auto& [c, f] : terms_)
    if (d < 0 || c.total() < d) d = c.total();
  return d;
}

ZOElem ZOElem::truncatedDegree(long maxDeg) const {
  ZOElem r(lv_, fam_);
  for (const auto& [c, f] : terms_)
    if (c.total() <= maxDeg) r.terms_.emplace(c, f);
  return r;
}

ZOElem ZOElem::truncatedFrobenius(int N) const {
  ZOElem r(lv_, fam_);
  const long bound = ipow(lv_.p, N);
  for (const auto& [c, f] : terms_)
    if (c.allBelow(bound)) r.terms_.emplace(c, f);
  return r;
}

ZOElem ZOElem::withFamily(VarFamily fam) const {
  ZOElem r(lv_, fam);
  for (const auto& [c, f] : terms_) r.terms_.emplace(c, f.withFamily(fam));
  return r;
}

Fp thetaPowerUnit(const MultiIndex& c, const Level& lv) {
  const long q = lv.pm1();
  Fp u = 1;
  for (int i = 0; i < c.size(); ++i)
    for (long j = 1; j < c[i]; ++j) u = mulP(u, angleModP(j * q, q, lv), lv.p);
  return u;
}

Fp zoUnit(const MultiIndex& c, const MultiIndex& t, const Level& lv) {
  return mulP(thetaPowerUnit(c, lv), angleMIModP(c.scaled(lv.pm1()), t, lv), lv.p);
}

DiffOp toDiffOp(const ZOElem& z) {
  const Level& lv = z.level();
  DiffOp r(lv);
  for (const auto& [c, f] : z.terms()) {
    PolyP g = f.family() == VarFamily::tprime ? f.expandExponents(lv.pm1(), VarFamily::t) : f;
    r.addTerm(c.scaled(lv.pm1()), g.scaled(thetaPowerUnit(c, lv)));
  }
  return r;
}

ZODecomp zoDecompose(const DiffOp& P) {
  const Level& lv = P.level();
  const long q = lv.pm1();
  ZODecomp d;
  for (const auto& [k, f] : P.terms()) {
    MultiIndex c = k.divided(q), t = k.modulo(q);
    Fp u = zoUnit(c, t, lv);
    if (!u) throw Error(ErrorCode::InvalidInput, "zero unit in centralizer decomposition at " + k.str());
    auto it = d.try_emplace(t, ZOElem(lv)).first;
    it->second.addTerm(c, f.scaled(invModP(u, lv.p)));
  }
  for (auto it = d.begin(); it != d.end();) it = it->second.isZero() ? d.erase(it) : std::next(it);
  return d;
}

DiffOp zoAssemble(const Level& lv, const ZODecomp& d) {
  const long q = lv.pm1();
  DiffOp r(lv);
  for (const auto& [t, z] : d)
    for (const auto& [c, f] : z.terms()) r.addTerm(c.scaled(q) + t, f.scaled(zoUnit(c, t, lv)));
  return r;
}

ZOElem toZO(const DiffOp& P) {
  ZODecomp d = zoDecompose(P);
  const MultiIndex zero(P.level().r);
  for (const auto& [t, z] : d)
    if (t != zero) throw Error(ErrorCode::NotCentral, "operator has a term d^<" + t.str() + "> outside the centralizer");
  auto it = d.find(zero);
  return it == d.end() ? ZOElem(P.level()) : it->second;
}

DiffOp curvatureInject(const ZOElem& a) { return toDiffOp(a); }

bool isCentral(const DiffOp& P) {
  const Level& lv = P.level();
  for (int i = 0; i < lv.r; ++i) {
    DiffOp t = DiffOp::coordinate(lv, i);
    if (P * t != t * P) return false;
    for (int l = 0; l <= lv.m; ++l) {
      DiffOp g = DiffOp::partial(lv, i, ipow(lv.p, l));
      if (P * g != g * P) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- matrices

namespace {
std::vector<MultiIndex> boxBasis(int r, long bound) {
  std::vector<MultiIndex> b;
  forEachBox(r, bound, [&](const MultiIndex& a) { b.push_back(a); });
  return b;
}

int indexIn(const std::vector<MultiIndex>& basis, const MultiIndex& a) {
  auto it = std::lower_bound(basis.begin(), basis.end(), a);
  return int(it - basis.begin());
}
}  // namespace

Matrix<ZOElem> kanedaMatrix(const DiffOp& P) {
  const Level& lv = P.level();
  const auto basis = boxBasis(lv.r, lv.pm1());
  const int n = int(basis.size());
  Matrix<ZOElem> K(n, n, ZOElem(lv));
  for (int j = 0; j < n; ++j) {
    ZODecomp d = zoDecompose(DiffOp::basis(lv, basis[j]) * P);
    for (const auto& [t, z] : d) K(indexIn(basis, t), j) = z;
  }
  return K;
}

Matrix<PolyP> quotientMatrix(const DiffOp& P, int frobExp) {
  const Level& lv = P.level();
  const int e = frobExp < 0 ? lv.m + 1 : frobExp;
  const long q = ipow(lv.p, e);
  const auto basis = boxBasis(lv.r, q);
  const int n = int(basis.size());
  Matrix<PolyP> M(n, n, zeroPoly(lv, VarFamily::tprime));
  for (int j = 0; j < n; ++j) {
    PolyP img = applyOp(P, PolyP::monomial(lv.p, basis[j]));
    for (const auto& [x, c] : img.terms()) {
      PolyP& entry = M(indexIn(basis, x.modulo(q)), j);
      entry.addTerm(x.divided(q), c);
    }
  }
  return M;
}

// ---------------------------------------------------------------- level change

Fp generatorWordUnit(long k, int baseM, const Level& L) {
  const int p = L.p;
  const long top = ipow(p, baseM);
  std::vector<long> word;
  long rest = k;
  for (int l = 0; l < baseM; ++l) {
    for (long d = rest % p; d > 0; --d) word.push_back(ipow(p, l));
    rest /= p;
  }
  for (long d = k / top; d > 0; --d) word.push_back(top);
  Fp u = 1;
  long cur = 0;
  for (long g : word) {
    u = mulP(u, angleModP(cur, g, L), p);
    if (!u) return 0;
    cur += g;
  }
  return u;
}

DiffOp levelRaise(const DiffOp& P, int s) {
  const Level& lv = P.level();
  if (s < 0) throw Error(ErrorCode::InvalidInput, "negative level shift");
  const Level target = lv.withM(lv.m + s);
  DiffOp r(target);
  for (const auto& [k, f] : P.terms()) {
    Fp ratio = 1;
    for (int i = 0; i < lv.r && ratio; ++i) {
      Fp low = generatorWordUnit(k[i], lv.m, lv);
      if (!low) throw Error(ErrorCode::InvalidInput, "generator word degenerates at the source level");
      ratio = mulP(ratio, mulP(generatorWordUnit(k[i], lv.m, target), invModP(low, lv.p), lv.p), lv.p);
    }
    if (ratio) r.addTerm(k, f.scaled(ratio));
  }
  return r;
}

void DescendedOp::addTerm(const MultiIndex& k, const PolyP& f) {
  if (f.isZero()) return;
  auto [it, inserted] = terms.try_emplace(k, f);
  if (!inserted) {
    it->second += f;
    if (it->second.isZero()) terms.erase(it);
  }
}

DescendedOp frobDescend(const DiffOp& P, int s) {
  const Level& lv = P.level();
  if (s < 0 || s > lv.m) throw Error(ErrorCode::LevelMismatch, "descent depth exceeds the level");
  DescendedOp r;
  r.lv = lv.withM(lv.m - s);
  r.s = s;
  const long q = ipow(lv.p, s);
  for (const auto& [k, f] : P.terms())
    if (k.divisibleBy(q)) r.addTerm(k.divided(q), f);
  return r;
}

DescendedOp descendedCentralProduct(const DescendedOp& a, const DescendedOp& b) {
  if (!(a.lv == b.lv) || a.s != b.s) throw Error(ErrorCode::LevelMismatch, "descended operators at different levels");
  DescendedOp r;
  r.lv = a.lv;
  r.s = a.s;
  const long q = a.lv.pm1();
  for (const auto& [k, f] : a.terms) {
    if (!k.divisibleBy(q)) throw Error(ErrorCode::NotCentral, "descended product needs theta-supported input");
    for (const auto& [l, g] : b.terms) {
      if (!l.divisibleBy(q)) throw Error(ErrorCode::NotCentral, "descended product needs theta-supported input");
      Fp c = angleMIModP(k, l, a.lv);
      if (c) r.addTerm(k + l, (f * g).scaled(c));
    }
  }
  return r;
}

}  // namespace adiff
