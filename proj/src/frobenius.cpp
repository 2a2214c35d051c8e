#include "adiff/frobenius.hpp"

#include <algorithm>
#include <mutex>
#include <optional>

namespace adiff {

namespace {
PolyZ scaleExponents(const PolyZ& f, long q) {
  PolyZ r(f.nvars());
  for (const auto& [e, c] : f.terms()) r.addTerm(e.scaled(q), c);
  return r;
}

MultiIndex maxExponents(const PolyZ& f) {
  MultiIndex d(f.nvars());
  for (const auto& [e, c] : f.terms())
    for (int i = 0; i < e.size(); ++i) d[i] = std::max(d[i], e[i]);
  return d;
}

Integer pSquare(int p) { return Integer(p) * p; }
}  // namespace

Lifting standardLifting(const Level& lv) {
  Lifting L{lv, {}};
  for (int j = 0; j < lv.r; ++j) L.F.push_back(PolyZ::monomial(MultiIndex::unit(lv.r, j, int(lv.pm1())), 1));
  return L;
}

Lifting liftingFromG(const Level& lv, const std::vector<PolyP>& g) {
  if (int(g.size()) != lv.r) throw Error(ErrorCode::InvalidInput, "need one g per coordinate");
  Lifting L = standardLifting(lv);
  for (int j = 0; j < lv.r; ++j) {
    PolyZ gz = PolyZ::lift(g[j]).pow(lv.pm());
    L.F[j] = (L.F[j] + gz.scaled(lv.p)).reducedMod(pSquare(lv.p));
  }
  return L;
}

Lifting frobeniusTwistLifting(const Lifting& G, int s) {
  Lifting L{G.lv.withM(G.lv.m + s), {}};
  const long q = ipow(G.lv.p, s);
  for (const auto& f : G.F) L.F.push_back(scaleExponents(f, q));
  return L;
}

// ---------------------------------------------------------------- FrobData

struct FrobData::Cache {
  std::recursive_mutex mu;
  std::vector<GammaTower> towers;
  std::map<MultiIndex, DPElem> G;
  std::map<MultiIndex, ZOElem> phiBasis;
  std::map<std::pair<int, long>, ZOElem> thetaPow;  // Phi(theta_i)^e, untruncated
  std::map<int, std::vector<std::vector<ZOElem>>> thetaPowMod;  // per N: [i][e]
  std::map<int, std::vector<ZOElem>> phiInv;
};

std::vector<DPElem> dividedFrobTau(const Lifting& L, const Context& ctx) {
  const Level& lv = ctx.level;
  const int p = lv.p;
  std::vector<DPElem> w;
  for (const PolyZ& F : L.F) {
    DPElem wj(lv, ctx.tauTrunc);
    forEachBelowEq(maxExponents(F), [&](const MultiIndex& s) {
      if (s.isZero()) return;
      PolyZ c = F.hasse(s, lv);
      if (c.isZero()) return;
      if (s.total() > ctx.tauTrunc) {
        if (!c.reduce(p).isZero() || !c.allDivisibleBy(pSquare(p))) wj.markTruncated();
        return;
      }
      PolyP coeff(p, lv.r);
      for (const auto& [e, a] : c.terms()) coeff.addTerm(e, divideByPFactorialModP(a, p));
      wj.addTerm(s, coeff);
    });
    w.push_back(std::move(wj));
  }
  return w;
}

FrobData FrobData::validate(const Lifting& L, const Context& ctx) {
  const Level& lv = ctx.level;
  if (L.lv != lv) throw Error(ErrorCode::LevelMismatch, "lifting and context disagree on (p, m, r)");
  if (int(L.F.size()) != lv.r) throw Error(ErrorCode::InvalidInput, "lifting must give one polynomial per coordinate");
  const int p = lv.p;
  FrobData d;
  d.ctx_ = ctx;
  d.lift_.lv = lv;
  for (int j = 0; j < lv.r; ++j) {
    PolyZ F = L.F[j].reducedMod(pSquare(p));
    d.lift_.F.push_back(F);
    PolyZ D = F - PolyZ::monomial(MultiIndex::unit(lv.r, j, int(lv.pm1())), 1);
    if (!D.allDivisibleBy(p))
      throw Error(ErrorCode::NotALifting, "coordinate " + std::to_string(j + 1) + " does not lift t^(p^(m+1)) mod p");
    PolyP h = D.dividedExactly(p).reduce(p);
    if (!h.exponentsDivisibleBy(lv.pm()))
      throw Error(ErrorCode::NotStrong, "coordinate " + std::to_string(j + 1) + ": (F - t^(p^(m+1)))/p is not a p^m-th power");
    d.g_.push_back(h.contractExponents(lv.pm(), VarFamily::t));
  }
  d.w_ = dividedFrobTau(d.lift_, ctx);
  d.cache_ = std::make_shared<Cache>();
  for (const DPElem& wj : d.w_) d.cache_->towers.emplace_back(wj);
  return d;
}

FrobData validateStrong(const Lifting& L, const Context& ctx) { return FrobData::validate(L, ctx); }

DPElem FrobData::G(const MultiIndex& k) const {
  std::lock_guard lock(cache_->mu);
  auto it = cache_->G.find(k);
  if (it != cache_->G.end()) return it->second;
  const Level& lv = level();
  DPElem r = DPElem::one(lv, ctx_.tauTrunc);
  for (int j = 0; j < lv.r; ++j) {
    if (!k[j]) continue;
    r = mulDP(r, cache_->towers[j].gamma(k[j]));
    if (r.isZero()) break;
  }
  return cache_->G.emplace(k, r).first->second;
}

ZOElem FrobData::phiBasis(const MultiIndex& n) const {
  if (n.total() > ctx_.tauTrunc)
    throw Error(ErrorCode::TruncationTooSmall, "Phi(d^<" + n.str() + ">) needs tauTrunc >= " + std::to_string(n.total()));
  std::lock_guard lock(cache_->mu);
  auto it = cache_->phiBasis.find(n);
  if (it != cache_->phiBasis.end()) return it->second;
  const Level& lv = level();
  DiffOp r(lv);
  forEachTotalDegreeLeq(lv.r, n.total() / lv.pm(), [&](const MultiIndex& k) {
    DPElem g = G(k);
    if (g.truncated() && n.total() > g.trunc())
      throw Error(ErrorCode::TruncationTooSmall, "divided power truncated below the requested order");
    r.addTerm(k.scaled(lv.pm1()), g.coeff(n));
  });
  ZOElem z = toZO(r);
  return cache_->phiBasis.emplace(n, z).first->second;
}

ZOElem FrobData::phiTheta(int i) const { return phiBasis(MultiIndex::unit(level().r, i, int(level().pm1()))); }

ZOElem FrobData::phiBasisFactored(const MultiIndex& n) const {
  const Level& lv = level();
  const MultiIndex c = n.divided(lv.pm1()), t = n.modulo(lv.pm1());
  ZOElem r = phiBasis(t);
  std::lock_guard lock(cache_->mu);
  for (int i = 0; i < lv.r; ++i) {
    if (!c[i]) continue;
    auto key = std::make_pair(i, long(c[i]));
    auto it = cache_->thetaPow.find(key);
    if (it == cache_->thetaPow.end()) {
      ZOElem base = phiTheta(i), acc = ZOElem::one(lv);
      for (long e = 1; e <= c[i]; ++e) {
        acc = acc * base;
        cache_->thetaPow.try_emplace({i, e}, acc);
      }
      it = cache_->thetaPow.find(key);
    }
    r = r * it->second;
  }
  return r.scaled(invModP(zoUnit(c, t, lv), lv.p));
}

ZOElem phiZO(const DiffOp& P, const FrobData& L) {
  requireSameLevel(P.level(), L.level(), "phi");
  ZOElem r(P.level());
  for (const auto& [n, f] : P.terms()) r += L.phiBasis(n).leftMul(f);
  return r;
}

DiffOp phi(const DiffOp& P, const FrobData& L) { return toDiffOp(phiZO(P, L)); }

ZOElem phiFactored(const DiffOp& P, const FrobData& L) {
  requireSameLevel(P.level(), L.level(), "phi");
  ZOElem r(P.level());
  for (const auto& [n, f] : P.terms()) r += L.phiBasisFactored(n).leftMul(f);
  return r;
}

// ---------------------------------------------------------------- center

namespace {
void requireCentralCoefficients(const ZOElem& z) {
  const long q = z.level().pm1();
  for (const auto& [c, f] : z.terms())
    if (f.family() == VarFamily::t && !f.exponentsDivisibleBy(q))
      throw Error(ErrorCode::NotCentral, "coefficient of theta^" + c.str() + " is not in O_X'");
}

ZOElem toTFamily(const ZOElem& z) {
  if (z.family() == VarFamily::t) return z;
  ZOElem r(z.level());
  for (const auto& [c, f] : z.terms()) r.addTerm(c, f.expandExponents(z.level().pm1(), VarFamily::t));
  return r;
}
}  // namespace

ZOElem phiOnCenter(const ZOElem& zin, int N, const FrobData& L) {
  const ZOElem z = toTFamily(zin).truncatedFrobenius(N);
  const Level& lv = L.level();
  ZOElem r(lv);
  for (const auto& [c, f] : z.terms()) {
    ZOElem term = ZOElem::fromPoly(lv, f);
    for (int i = 0; i < lv.r; ++i)
      if (c[i]) term = (term * L.phiThetaPowerMod(i, c[i], N)).truncatedFrobenius(N);
    r += term;
  }
  return r;
}

ZOElem phiCenterInv(const ZOElem& zin, int N, const FrobData& L) {
  requireCentralCoefficients(zin);
  const ZOElem z = toTFamily(zin).truncatedFrobenius(N);
  const Level& lv = L.level();
  ZOElem x = z;
  const long maxIter = long(lv.r) * ipow(lv.p, N) + 2;
  for (long it = 0; it < maxIter; ++it) {
    ZOElem e = z - phiOnCenter(x, N, L);
    if (e.isZero()) return x;
    x += e;
  }
  throw Error(ErrorCode::NotStabilized, "center inverse did not converge");
}

DiffOp phiCenterInv(const DiffOp& z, int N, const FrobData& L) { return toDiffOp(phiCenterInv(toZO(z), N, L)); }

ZOElem FrobData::phiThetaPowerMod(int i, long e, int N) const {
  std::lock_guard lock(cache_->mu);
  auto& perN = cache_->thetaPowMod[N];
  if (perN.empty()) perN.resize(std::size_t(level().r));
  auto& pw = perN[std::size_t(i)];
  if (pw.empty()) pw.push_back(ZOElem::one(level()));
  if (long(pw.size()) <= e) {
    ZOElem base = phiTheta(i).truncatedFrobenius(N);
    while (long(pw.size()) <= e) pw.push_back((pw.back() * base).truncatedFrobenius(N));
  }
  return pw[std::size_t(e)];
}

std::vector<ZOElem> FrobData::phiInvThetas(int N) const {
  std::lock_guard lock(cache_->mu);
  auto it = cache_->phiInv.find(N);
  if (it == cache_->phiInv.end()) {
    std::vector<ZOElem> psi;
    for (int i = 0; i < level().r; ++i) psi.push_back(phiCenterInv(ZOElem::theta(level(), i), N, *this));
    it = cache_->phiInv.emplace(N, std::move(psi)).first;
  }
  return it->second;
}

ZOElem phiTilde(const DiffOp& P, int N, const FrobData& L) {
  const Level& lv = L.level();
  const std::vector<ZOElem> psi = L.phiInvThetas(N);
  const ZOElem image = phiZO(P, L);
  ZOElem r(lv);
  for (const auto& [c, f] : image.terms()) {
    ZOElem term = ZOElem::fromPoly(lv, f);
    for (int i = 0; i < lv.r; ++i)
      for (int e = 0; e < c[i]; ++e) term = (term * psi[std::size_t(i)]).truncatedFrobenius(N);
    r += term.truncatedFrobenius(N);
  }
  return r;
}

// ---------------------------------------------------------------- bullet

ZOElem bullet(const DiffOp& P, const ZOElem& z, const FrobData& L) {
  const Level& lv = L.level();
  requireSameLevel(P.level(), lv, "bullet");
  const ZOElem zt = toTFamily(z);
  ZOElem r(lv);
  for (const auto& [c, f] : zt.terms()) {
    ZOElem img = phiZO(P * DiffOp::fromPoly(lv, f), L);
    ZOElem shift(lv);
    shift.addTerm(c, onePoly(lv));
    r += img * shift;
  }
  return r.truncatedDegree(L.ctx().thetaTrunc);
}

Matrix<ZOElem> bulletMatrix(const DiffOp& P, const FrobData& L, int thetaTrunc) {
  const Level& lv = L.level();
  const int T = thetaTrunc < 0 ? L.ctx().thetaTrunc : thetaTrunc;
  const long q = lv.pm1();
  std::vector<MultiIndex> basis;
  forEachBox(lv.r, q, [&](const MultiIndex& a) { basis.push_back(a); });
  const int n = int(basis.size());
  Matrix<ZOElem> M(n, n, ZOElem(lv, VarFamily::tprime));
  for (int j = 0; j < n; ++j) {
    ZOElem col = bullet(P, ZOElem::fromPoly(lv, PolyP::monomial(lv.p, basis[j])), L).truncatedDegree(T);
    for (const auto& [c, f] : col.terms())
      for (const auto& [x, coef] : f.terms()) {
        int row = int(std::lower_bound(basis.begin(), basis.end(), x.modulo(q)) - basis.begin());
        ZOElem add(lv, VarFamily::tprime);
        add.addTerm(c, PolyP::monomial(lv.p, x.divided(q), long(coef), VarFamily::tprime));
        M(row, j) += add;
      }
  }
  return M;
}

// ---------------------------------------------------------------- glueing

std::vector<PolyP> glueDerivation(const FrobData& L1, const FrobData& L2) {
  requireSameLevel(L1.level(), L2.level(), "glueDerivation");
  const int p = L1.level().p;
  std::vector<PolyP> u;
  for (int j = 0; j < L1.level().r; ++j) {
    PolyZ D = L2.lifting().F[j] - L1.lifting().F[j];
    PolyP uj(p, L1.level().r);
    for (const auto& [e, a] : D.terms()) uj.addTerm(e, divideByPFactorialModP(a, p));
    u.push_back(uj);
  }
  return u;
}

GlueAuto glueAuto(const Level& lv, const std::vector<PolyP>& u, int N) { return GlueAuto(lv, u, N); }

SymElem GlueAuto::apply(const SymElem& x) const {
  std::vector<SymElem> images;
  for (int j = 0; j < lv_.r; ++j) images.push_back(SymElem::theta(lv_, j) - SymElem::fromPoly(lv_, u_[std::size_t(j)]));
  SymElem r(lv_);
  for (const auto& [c, f] : x.terms()) {
    SymElem term = SymElem::fromPoly(lv_, f);
    for (int j = 0; j < lv_.r; ++j)
      for (int e = 0; e < c[j]; ++e) term = (term * images[std::size_t(j)]).truncatedDegree(N_);
    r += term;
  }
  return r.truncatedDegree(N_);
}

// ---------------------------------------------------------------- descent

DescendedOp phiDescended(const DescendedOp& D, const FrobData& Lu) {
  requireSameLevel(D.lv, Lu.level(), "phiDescended");
  const long q = ipow(D.lv.p, D.s);
  DescendedOp r;
  r.lv = D.lv;
  r.s = D.s;
  for (const auto& [j, f] : D.terms) {
    DiffOp img = toDiffOp(Lu.phiBasis(j));
    for (const auto& [k, a] : img.terms()) r.addTerm(k, f * a.expandExponents(q, VarFamily::t));
  }
  return r;
}

}  // namespace adiff
