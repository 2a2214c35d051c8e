#include "adiff/simpson.hpp"

#include <algorithm>
#include <functional>

namespace adiff {

PolyMatrix zeroMatrix(const Level& lv, int n, VarFamily fam) { return PolyMatrix(n, n, zeroPoly(lv, fam)); }

PolyMatrix identityMatrix(const Level& lv, int n, VarFamily fam) {
  PolyMatrix I = zeroMatrix(lv, n, fam);
  for (int k = 0; k < n; ++k) I(k, k) = onePoly(lv, fam);
  return I;
}

Section applyMatrix(const PolyMatrix& M, const Section& S) {
  Section r(std::size_t(M.rows()), M.zero());
  for (int a = 0; a < M.rows(); ++a)
    for (int b = 0; b < M.cols(); ++b)
      if (!M(a, b).isZero() && !S[std::size_t(b)].isZero()) r[std::size_t(a)] += M(a, b) * S[std::size_t(b)];
  return r;
}

PolyMatrix pullbackEntries(const PolyMatrix& A, const Level& lv) {
  return A.map([&](const PolyP& f) {
    return f.family() == VarFamily::tprime ? f.expandExponents(lv.pm1(), VarFamily::t) : f;
  });
}

namespace {
bool sectionIsZero(const Section& S) {
  return std::all_of(S.begin(), S.end(), [](const PolyP& f) { return f.isZero(); });
}

Section unitSection(const Level& lv, int n, int k, const PolyP& f) {
  Section s(std::size_t(n), zeroPoly(lv));
  s[std::size_t(k)] = f;
  return s;
}

Section column(const PolyMatrix& M, int k) {
  Section s;
  for (int a = 0; a < M.rows(); ++a) s.push_back(M(a, k));
  return s;
}

void addScaled(Section& acc, const Section& x, const PolyP& f) {
  for (std::size_t a = 0; a < acc.size(); ++a)
    if (!x[a].isZero()) acc[a] += f * x[a];
}

long degreeOf(const Section& S) {
  long d = -1;
  for (const auto& f : S) d = std::max(d, f.totalDegree());
  return d;
}

// Monomial products of commuting matrices, grouped by total degree.
std::map<MultiIndex, PolyMatrix> nextProducts(const std::map<MultiIndex, PolyMatrix>& prev, const std::vector<PolyMatrix>& mats) {
  std::map<MultiIndex, PolyMatrix> next;
  for (const auto& [c, P] : prev)
    for (std::size_t i = 0; i < mats.size(); ++i) {
      MultiIndex d = c;
      ++d[int(i)];
      if (!next.count(d)) next.emplace(d, P * mats[i]);
    }
  return next;
}
}  // namespace

int nilpotencyIndex(const std::vector<PolyMatrix>& mats, int n, int maxN) {
  if (n == 0) return 0;
  if (mats.empty()) return 1;
  const int r = int(mats.size());
  const Level lv{mats[0].zero().p(), 0, r};
  std::map<MultiIndex, PolyMatrix> cur;
  cur.emplace(MultiIndex(r), identityMatrix(lv, n, mats[0].zero().family()));
  for (int N = 1; N <= maxN; ++N) {
    cur = nextProducts(cur, mats);
    if (std::all_of(cur.begin(), cur.end(), [](const auto& kv) { return kv.second.isZero(); })) return N;
  }
  return -1;
}

Diagnostics validateHiggs(const HiggsModule& F) {
  if (int(F.A.size()) != F.lv.r) return {false, "expected one Higgs matrix per coordinate"};
  for (int i = 0; i < F.lv.r; ++i)
    if (F.A[i].rows() != F.n || F.A[i].cols() != F.n) return {false, "Higgs matrix " + std::to_string(i + 1) + " has the wrong size"};
  for (int i = 0; i < F.lv.r; ++i)
    for (int j = i + 1; j < F.lv.r; ++j)
      if (F.A[i] * F.A[j] != F.A[j] * F.A[i])
        return {false, "A" + std::to_string(i + 1) + " and A" + std::to_string(j + 1) + " do not commute"};
  if (nilpotencyIndex(F.A, F.n, F.n + 1) < 0) return {false, "Higgs field is not nilpotent"};
  return {};
}

// ---------------------------------------------------------------- DAction

DAction::DAction(const DModule& E) : E_(E) {}

const PolyMatrix& DAction::basisImage(int i, long c) {
  auto key = std::make_pair(i, c);
  auto it = R_.find(key);
  if (it != R_.end()) return it->second;
  const Level& lv = E_.lv;
  const int p = lv.p;
  if (c == 0) return R_.emplace(key, identityMatrix(lv, E_.n)).first->second;
  for (int l = 0; l <= lv.m; ++l)
    if (c == ipow(p, l)) return R_.emplace(key, E_.M[std::size_t(i)][std::size_t(l)]).first->second;

  // Peel the lowest nonzero digit generator (below p^m), or d^[p^m] when there is none.
  int l = lv.m;
  long rest = c;
  for (int j = 0; j < lv.m; ++j, rest /= p)
    if (rest % p) {
      l = j;
      break;
    }
  const long g = ipow(p, l);
  Fp u = angleModP(g, c - g, lv);
  if (!u) throw Error(ErrorCode::InvalidInput, "generator factorization degenerates at order " + std::to_string(c));
  const Fp uinv = invModP(u, p);
  PolyMatrix prev = basisImage(i, c - g);
  PolyMatrix out = zeroMatrix(lv, E_.n);
  for (int k = 0; k < E_.n; ++k) {
    Section s = applyCoord(i, g, column(prev, k));
    for (int a = 0; a < E_.n; ++a) out(a, k) = s[std::size_t(a)].scaled(uinv);
  }
  return R_.emplace(key, std::move(out)).first->second;
}

Section DAction::applyCoord(int i, long c, const Section& S) {
  const Level& lv = E_.lv;
  Section r(std::size_t(E_.n), zeroPoly(lv));
  for (int k = 0; k < E_.n; ++k) {
    const PolyP& f = S[std::size_t(k)];
    if (f.isZero()) continue;
    long deg = 0;
    for (const auto& [e, x] : f.terms()) deg = std::max<long>(deg, e[i]);
    for (long b = 0; b <= std::min(c, deg); ++b) {
      Fp br = braceModP(b, c - b, lv);
      if (!br) continue;
      PolyP db = f.hasse(MultiIndex::unit(lv.r, i, int(b)), lv);
      if (db.isZero()) continue;
      const PolyMatrix& R = basisImage(i, c - b);
      addScaled(r, column(R, k), db.scaled(br));
    }
  }
  return r;
}

Section DAction::apply(const MultiIndex& k, const Section& S) {
  Section r = S;
  for (int i = 0; i < E_.lv.r; ++i)
    if (k[i]) r = applyCoord(i, k[i], r);
  return r;
}

Section DAction::apply(const DiffOp& P, const Section& S) {
  Section r(std::size_t(E_.n), zeroPoly(E_.lv));
  for (const auto& [k, f] : P.terms()) addScaled(r, apply(k, S), f);
  return r;
}

Section DAction::applyZO(const ZOElem& z, const Section& S) {
  const Level& lv = E_.lv;
  Section r(std::size_t(E_.n), zeroPoly(lv));
  std::map<MultiIndex, Section> powers;  // Theta^c S
  powers.emplace(MultiIndex(lv.r), S);
  std::function<const Section&(const MultiIndex&)> power = [&](const MultiIndex& c) -> const Section& {
    auto it = powers.find(c);
    if (it != powers.end()) return it->second;
    int i = 0;
    while (!c[i]) ++i;
    MultiIndex d = c;
    --d[i];
    Section s = applyMatrix(curvature(i), power(d));
    return powers.emplace(c, std::move(s)).first->second;
  };
  for (const auto& [c, f] : z.terms()) {
    PolyP g = f.family() == VarFamily::tprime ? f.expandExponents(lv.pm1(), VarFamily::t) : f;
    addScaled(r, power(c), g);
  }
  return r;
}

// ---------------------------------------------------------------- pullback, validation

DModule pullback(const HiggsModule& F, const FrobData& L) {
  requireSameLevel(F.lv, L.level(), "pullback");
  const Level& lv = F.lv;
  const int p = lv.p;
  DModule E{lv, F.n, {}};
  std::vector<PolyMatrix> A;
  for (const auto& Ai : F.A) A.push_back(pullbackEntries(Ai, lv));
  for (int i = 0; i < lv.r; ++i) {
    std::vector<PolyMatrix> gens(std::size_t(lv.m + 1), zeroMatrix(lv, F.n));
    PolyMatrix& top = gens[std::size_t(lv.m)];
    for (int j = 0; j < lv.r; ++j) {
      PolyZ d = L.lifting().F[std::size_t(j)].hasse(MultiIndex::unit(lv.r, i, int(lv.pm())), lv);
      PolyP c(p, lv.r);
      for (const auto& [e, a] : d.terms()) c.addTerm(e, divideByPFactorialModP(a, p));
      if (c.isZero()) continue;
      top = top + A[std::size_t(j)].map([&](const PolyP& x) { return c * x; });
    }
    E.M.push_back(std::move(gens));
  }
  return E;
}

Diagnostics validateDModule(const DModule& E) {
  const Level& lv = E.lv;
  if (int(E.M.size()) != lv.r) return {false, "expected generator matrices for every coordinate"};
  for (const auto& gens : E.M) {
    if (int(gens.size()) != lv.m + 1) return {false, "expected m+1 generator matrices per coordinate"};
    for (const auto& G : gens)
      if (G.rows() != E.n || G.cols() != E.n) return {false, "generator matrix has the wrong size"};
  }
  if (E.n == 0) return {};
  DAction rho(E);
  const long q = lv.pm1();
  try {
    for (int i = 0; i < lv.r; ++i) {
      std::vector<Section> probes;
      for (int k = 0; k < E.n; ++k) {
        probes.push_back(unitSection(lv, E.n, k, onePoly(lv)));
        probes.push_back(unitSection(lv, E.n, k, PolyP::variable(lv.p, lv.r, i)));
      }
      for (long a = 1; a <= q; ++a)
        for (long b = 1; b <= q; ++b) {
          Fp c = angleModP(a, b, lv);
          for (const auto& s : probes) {
            Section lhs = rho.applyCoord(i, a, rho.applyCoord(i, b, s));
            Section rhs = rho.applyCoord(i, a + b, s);
            for (auto& f : rhs) f = f.scaled(c);
            if (lhs != rhs)
              return {false, "relation d^<" + std::to_string(a) + "> d^<" + std::to_string(b) + "> fails in coordinate " +
                                 std::to_string(i + 1)};
          }
        }
    }
    for (int i = 0; i < lv.r; ++i)
      for (int j = i + 1; j < lv.r; ++j)
        for (int l = 0; l <= lv.m; ++l)
          for (int l2 = 0; l2 <= lv.m; ++l2)
            for (int k = 0; k < E.n; ++k) {
              Section s = unitSection(lv, E.n, k, onePoly(lv));
              Section x = rho.applyCoord(i, ipow(lv.p, l), rho.applyCoord(j, ipow(lv.p, l2), s));
              Section y = rho.applyCoord(j, ipow(lv.p, l2), rho.applyCoord(i, ipow(lv.p, l), s));
              if (x != y)
                return {false, "generators in coordinates " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " do not commute"};
            }
  } catch (const Error& e) {
    return {false, e.what()};
  }
  return {};
}

std::vector<PolyMatrix> curvatureOf(const DModule& E) {
  Diagnostics d = validateDModule(E);
  if (!d.ok) throw Error(ErrorCode::InvalidInput, "not a D-module: " + d.message);
  DAction rho(E);
  std::vector<PolyMatrix> T;
  for (int i = 0; i < E.lv.r; ++i) T.push_back(rho.curvature(i));
  return T;
}

// ---------------------------------------------------------------- quasi-nilpotence

int qnThetaPower(const DModule& E, int maxN) {
  DAction rho(E);
  std::vector<PolyMatrix> T;
  for (int i = 0; i < E.lv.r; ++i) T.push_back(rho.curvature(i));
  return nilpotencyIndex(T, E.n, maxN);
}

int qnPartialVanishing(const DModule& E, int maxN) {
  if (E.n == 0) return 0;
  DAction rho(E);
  const long q = E.lv.pm1();
  for (int c0 = 0; c0 <= maxN; ++c0) {
    bool zero = true;
    for (int i = 0; i < E.lv.r && zero; ++i)
      for (long N = c0 * q; N < (c0 + 1) * q && zero; ++N) zero = rho.basisImage(i, N).isZero();
    if (zero) return c0;
  }
  return -1;
}

int qnKAdic(const DModule& E, int maxN) {
  if (E.n == 0) return 0;
  const Level& lv = E.lv;
  DAction rho(E);
  std::vector<Section> images;  // rho(d^<t>) e_k, t < p^(m+1)
  forEachBox(lv.r, lv.pm1(), [&](const MultiIndex& t) {
    for (int k = 0; k < E.n; ++k) images.push_back(rho.apply(t, unitSection(lv, E.n, k, onePoly(lv))));
  });
  for (int N = 0; N <= maxN; ++N) {
    bool zero = true;
    forEachTotalDegreeLeq(lv.r, N, [&](const MultiIndex& c) {
      if (!zero || c.total() != N) return;
      ZOElem z(lv);
      z.addTerm(c, onePoly(lv));
      for (const auto& s : images)
        if (!sectionIsZero(rho.applyZO(z, s))) {
          zero = false;
          return;
        }
    });
    if (zero) return N;
  }
  return -1;
}

// ---------------------------------------------------------------- invariants

long frobeniusMonomialCount(const Level& lv, int D) {
  long count = 0;
  forEachTotalDegreeLeq(lv.r, D / lv.pm1(), [&](const MultiIndex&) { ++count; });
  return count;
}

namespace {

// The linear conditions cutting out Frobenius invariants, indexed by (c, t):
// Phi-side^c rho(Phi-side(d^<t>)) s = Theta^c rho(d^<t>) s.
class InvariantConditions {
 public:
  InvariantConditions(const DModule& E, const FrobData& L, InvariantMode mode, int nil)
      : E_(E), L_(L), mode_(mode), rho_(E) {
    const Level& lv = E.lv;
    frobDepth_ = 1;
    while (ipow(lv.p, frobDepth_) < std::max(nil, 1)) ++frobDepth_;
    forEachTotalDegreeLeq(lv.r, std::max(nil - 1, 0), [&](const MultiIndex& c) {
      forEachBox(lv.r, lv.pm1(), [&](const MultiIndex& t) { keys_.emplace_back(c, t); });
    });
    // Cheap, strongly cutting conditions first: low theta-power, then low order.
    std::stable_sort(keys_.begin(), keys_.end(), [](const auto& a, const auto& b) {
      if (a.first.total() != b.first.total()) return a.first.total() < b.first.total();
      if (a.second.isZero() != b.second.isZero()) return b.second.isZero();
      return a.second.total() < b.second.total();
    });
    for (int i = 0; i < lv.r; ++i)
      phiTheta_.push_back(mode == InvariantMode::literal ? L.phiTheta(i) : ZOElem::theta(lv, i));
  }

  std::size_t size() const { return keys_.size(); }

  Section residual(std::size_t idx, const Section& s) {
    const auto& [c, t] = keys_[idx];
    const Level& lv = E_.lv;
    ZOElem& side = frobSide(t);
    Section lhs = rho_.applyZO(side, s);
    for (int i = 0; i < lv.r; ++i)
      for (int e = 0; e < c[i]; ++e) lhs = rho_.applyZO(phiTheta_[std::size_t(i)], lhs);
    ZOElem thetaC(lv);
    thetaC.addTerm(c, onePoly(lv));
    Section rhs = rho_.applyZO(thetaC, rho_.apply(t, s));
    for (std::size_t a = 0; a < lhs.size(); ++a) lhs[a] -= rhs[a];
    return lhs;
  }

  DAction& rho() { return rho_; }
  int frobDepth() const { return frobDepth_; }

 private:
  ZOElem& frobSide(const MultiIndex& t) {
    auto it = side_.find(t);
    if (it != side_.end()) return it->second;
    ZOElem z = mode_ == InvariantMode::literal ? L_.phiBasis(t) : phiTilde(DiffOp::basis(E_.lv, t), frobDepth_, L_);
    return side_.emplace(t, std::move(z)).first->second;
  }

  const DModule& E_;
  const FrobData& L_;
  InvariantMode mode_;
  DAction rho_;
  int frobDepth_ = 1;
  std::vector<std::pair<MultiIndex, MultiIndex>> keys_;
  std::vector<ZOElem> phiTheta_;
  std::map<MultiIndex, ZOElem> side_;
};

// Column indices for sections: by descending degree, so echelon leads are the top-degree parts.
class SectionIndex {
 public:
  int index(int k, const MultiIndex& a) {
    auto key = std::make_tuple(-a.total(), a, k);
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    int id = int(keys_.size());
    keys_.push_back(key);
    ids_.emplace(key, id);
    return id;
  }
  SparseVec flatten(const Section& S) {
    SparseVec v;
    for (int k = 0; k < int(S.size()); ++k)
      for (const auto& [e, c] : S[std::size_t(k)].terms()) v.emplace_back(index(k, e), c);
    std::sort(v.begin(), v.end());
    return v;
  }

 private:
  std::map<std::tuple<long, MultiIndex, int>, int> ids_;
  std::vector<std::tuple<long, MultiIndex, int>> keys_;
};

// Sparse vector with columns ordered by (descending degree, exponent, component) for a fixed bound.
struct OrderedColumns {
  std::vector<std::pair<int, MultiIndex>> cols;
  std::map<std::pair<int, MultiIndex>, int> id;
  OrderedColumns(const Level& lv, int n, int D) {
    std::vector<std::tuple<long, MultiIndex, int>> keys;
    forEachTotalDegreeLeq(lv.r, D, [&](const MultiIndex& a) {
      for (int k = 0; k < n; ++k) keys.emplace_back(-a.total(), a, k);
    });
    std::sort(keys.begin(), keys.end());
    for (const auto& [d, a, k] : keys) {
      id.emplace(std::make_pair(k, a), int(cols.size()));
      cols.emplace_back(k, a);
    }
  }
  SparseVec flatten(const Section& S) const {
    SparseVec v;
    for (int k = 0; k < int(S.size()); ++k)
      for (const auto& [e, c] : S[std::size_t(k)].terms()) {
        auto it = id.find({k, e});
        if (it == id.end()) throw Error(ErrorCode::InvalidInput, "section exceeds the degree bound");
        v.emplace_back(it->second, c);
      }
    std::sort(v.begin(), v.end());
    return v;
  }
  Section unflatten(const SparseVec& v, const Level& lv, int n) const {
    Section s(std::size_t(n), zeroPoly(lv));
    for (const auto& [i, c] : v) s[std::size_t(cols[std::size_t(i)].first)].addTerm(cols[std::size_t(i)].second, c);
    return s;
  }
  long degreeOfColumn(int i) const { return cols[std::size_t(i)].second.total(); }
};

Section combine(const std::vector<Section>& basis, const SparseVec& combo, const Level& lv, int n) {
  Section s(std::size_t(n), zeroPoly(lv));
  for (const auto& [j, c] : combo)
    for (int k = 0; k < n; ++k) s[std::size_t(k)] += basis[std::size_t(j)][std::size_t(k)].scaled(c);
  return s;
}

std::vector<Section> solveInvariants(InvariantConditions& conds, const Level& lv, int n, int D) {
  std::vector<Section> basis;
  forEachTotalDegreeLeq(lv.r, D, [&](const MultiIndex& a) {
    for (int k = 0; k < n; ++k) basis.push_back(unitSection(lv, n, k, PolyP::monomial(lv.p, a)));
  });
  for (std::size_t idx = 0; idx < conds.size() && !basis.empty(); ++idx) {
    SectionIndex cols;
    SparseEchelon ech(lv.p);
    std::vector<SparseVec> kernel;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      SparseVec img = cols.flatten(conds.residual(idx, basis[j]));
      SparseVec dep;
      if (!ech.insertTracking(std::move(img), SparseVec{{int(j), 1}}, &dep)) {
        std::sort(dep.begin(), dep.end());
        kernel.push_back(std::move(dep));
      }
    }
    if (kernel.size() == basis.size()) continue;
    std::vector<Section> next;
    for (const auto& combo : kernel) next.push_back(combine(basis, combo, lv, n));
    basis = std::move(next);
  }
  return basis;
}

InvariantSpace analyse(std::vector<Section> raw, const Level& lv, int n, int D) {
  InvariantSpace V;
  V.degBound = D;
  OrderedColumns cols(lv, n, D);
  SparseEchelon ech(lv.p);
  for (const auto& s : raw) ech.insert(cols.flatten(s));
  V.dimension = ech.rank();
  std::vector<std::pair<long, Section>> rows;
  for (const auto& [lead, rc] : ech.rows()) rows.emplace_back(cols.degreeOfColumn(lead), cols.unflatten(rc.first, lv, n));
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [d, s] : rows) V.basis.push_back(s);

  // span of t_j^(p^(m+1)) * V_{D - p^(m+1)}
  const long q = lv.pm1();
  SparseEchelon shifted(lv.p);
  for (const auto& [d, s] : rows) {
    if (d > D - q) break;
    for (int j = 0; j < lv.r; ++j) {
      Section t = s;
      for (auto& f : t) f = f.mulMonomial(MultiIndex::unit(lv.r, j, int(q)), 1);
      shifted.insert(cols.flatten(t));
    }
  }
  V.generatorRank = int(V.dimension - shifted.rank());
  for (const auto& [d, s] : rows)
    if (shifted.insert(cols.flatten(s))) V.generators.push_back(s);
  return V;
}

// Writes X = sum_b lambda_b(t') g_b if possible.
bool expressInGenerators(const std::vector<Section>& gens, const Section& X, const Level& lv, int n, int D,
                         std::vector<PolyP>& lambda) {
  const long q = lv.pm1();
  const long degX = degreeOf(X);
  const int bound = int(std::max<long>(D, degX));
  OrderedColumns cols(lv, n, bound);
  SparseEchelon ech(lv.p);
  std::vector<std::pair<int, MultiIndex>> labels;
  for (int b = 0; b < int(gens.size()); ++b) {
    long dg = degreeOf(gens[std::size_t(b)]);
    if (dg < 0) continue;
    forEachTotalDegreeLeq(lv.r, (bound - dg) / q, [&](const MultiIndex& beta) {
      Section s = gens[std::size_t(b)];
      for (auto& f : s) f = f.mulMonomial(beta.scaled(q), 1);
      int id = int(labels.size());
      labels.emplace_back(b, beta);
      ech.insert(cols.flatten(s), SparseVec{{id, 1}});
    });
  }
  SparseVec combo;
  SparseVec rest = ech.reduce(cols.flatten(X), &combo);
  if (!rest.empty()) return false;
  lambda.assign(gens.size(), zeroPoly(lv, VarFamily::tprime));
  for (const auto& [id, c] : combo) {
    const auto& [b, beta] = labels[std::size_t(id)];
    lambda[std::size_t(b)].addTerm(beta, negP(c, lv.p));
  }
  return true;
}

HiggsModule recoverHiggs(DAction& rho, const std::vector<Section>& gens, const FrobData& L, int frobDepth, int D, bool& ok) {
  const Level& lv = L.level();
  const int n = int(gens.size());
  HiggsModule H{lv, n, {}};
  ok = true;
  const std::vector<ZOElem> psi = L.phiInvThetas(frobDepth);
  for (int i = 0; i < lv.r; ++i) {
    PolyMatrix A = zeroMatrix(lv, n, VarFamily::tprime);
    for (int a = 0; a < n; ++a) {
      Section X = rho.applyZO(psi[std::size_t(i)], gens[std::size_t(a)]);
      std::vector<PolyP> lambda;
      if (!expressInGenerators(gens, X, lv, rho.module().n, D, lambda)) {
        ok = false;
        continue;
      }
      for (int b = 0; b < n; ++b) A(b, a) = lambda[std::size_t(b)];
    }
    H.A.push_back(std::move(A));
  }
  return H;
}

}  // namespace

InvariantsResult invariants(const DModule& E, const FrobData& L, int degBound, InvariantMode mode) {
  requireSameLevel(E.lv, L.level(), "invariants");
  Diagnostics d = validateDModule(E);
  if (!d.ok) throw Error(ErrorCode::InvalidInput, "not a D-module: " + d.message);
  InvariantsResult res;
  res.mode = mode;
  if (E.n == 0) {
    res.stabilized = true;
    res.higgsRecovered = true;
    res.higgs = HiggsModule{E.lv, 0, std::vector<PolyMatrix>(std::size_t(E.lv.r), zeroMatrix(E.lv, 0, VarFamily::tprime))};
    res.at.degBound = degBound;
    res.next.degBound = degBound + int(E.lv.pm1());
    return res;
  }
  const int nil = qnThetaPower(E, E.n + 1);
  if (nil < 0) throw Error(ErrorCode::NotQuasiNilpotent, "curvature is not nilpotent");
  res.nilBound = nil;
  const Level& lv = E.lv;
  const int q = int(lv.pm1());
  InvariantConditions conds(E, L, mode, nil);
  res.at = analyse(solveInvariants(conds, lv, E.n, degBound), lv, E.n, degBound);
  res.next = analyse(solveInvariants(conds, lv, E.n, degBound + q), lv, E.n, degBound + q);
  res.expectedStep = long(res.at.generatorRank) * (frobeniusMonomialCount(lv, degBound + q) - frobeniusMonomialCount(lv, degBound));
  res.stabilized = res.at.generatorRank == res.next.generatorRank && res.next.dimension - res.at.dimension == res.expectedStep;
  bool ok = false;
  res.higgs = recoverHiggs(conds.rho(), res.at.generators, L, conds.frobDepth(), degBound, ok);
  res.higgsRecovered = ok;
  return res;
}

RoundTripReport roundTrip(const HiggsModule& F, const FrobData& L, int degBound, InvariantMode mode) {
  RoundTripReport rep;
  rep.mode = mode;
  Diagnostics hv = validateHiggs(F);
  if (!hv.ok) throw Error(ErrorCode::InvalidInput, "invalid Higgs module: " + hv.message);
  const Level& lv = F.lv;
  DModule E = pullback(F, L);
  Diagnostics dv = validateDModule(E);
  rep.pullbackValid = dv.ok;
  if (!dv.ok) {
    rep.message = dv.message;
    return rep;
  }
  rep.expectedDimension = long(F.n) * frobeniusMonomialCount(lv, degBound);
  if (F.n == 0) {
    rep.basisInvariant = rep.dimensionMatches = rep.rankRecovered = rep.stabilized = rep.higgsMatches = true;
    return rep;
  }
  const int nil = qnThetaPower(E, E.n + 1);
  if (nil < 0) throw Error(ErrorCode::NotQuasiNilpotent, "pullback curvature is not nilpotent");

  InvariantConditions conds(E, L, mode, nil);
  std::vector<Section> basis;
  for (int k = 0; k < F.n; ++k) basis.push_back(unitSection(lv, F.n, k, onePoly(lv)));
  rep.basisInvariant = true;
  for (std::size_t idx = 0; idx < conds.size() && rep.basisInvariant; ++idx)
    for (const auto& s : basis)
      if (!sectionIsZero(conds.residual(idx, s))) {
        rep.basisInvariant = false;
        rep.message = "1(x)e_k is not invariant";
        break;
      }

  InvariantsResult inv = invariants(E, L, degBound, mode);
  rep.dimension = inv.at.dimension;
  rep.rank = inv.at.generatorRank;
  long degreeZero = 0;
  for (const auto& s : inv.at.basis)
    if (degreeOf(s) == 0) ++degreeZero;
  rep.dimensionMatches = rep.dimension == rep.expectedDimension && degreeZero == F.n;
  rep.rankRecovered = rep.rank == F.n;
  rep.stabilized = inv.stabilized;

  bool ok = false;
  HiggsModule H = recoverHiggs(conds.rho(), basis, L, conds.frobDepth(), degBound, ok);
  rep.higgsMatches = ok;
  for (int i = 0; i < lv.r && ok; ++i) rep.higgsMatches = H.A[std::size_t(i)] == F.A[std::size_t(i)];
  if (rep.message.empty() && !rep.pass()) {
    if (!rep.dimensionMatches) rep.message = "invariant dimension " + std::to_string(rep.dimension) + ", expected " + std::to_string(rep.expectedDimension);
    else if (!rep.rankRecovered) rep.message = "recovered rank " + std::to_string(rep.rank);
    else if (!rep.stabilized) rep.message = "dimension does not stabilize";
    else rep.message = "recovered Higgs field differs";
  }
  return rep;
}

// ---------------------------------------------------------------- Ogus-Vologodsky

std::vector<std::vector<PolyP>> ovCartierSplit(const FrobData& L) {
  const Level& lv = L.level();
  if (lv.m != 0) throw Error(ErrorCode::LevelMismatch, "the Cartier-Mazur splitting is defined at level 0");
  std::vector<std::vector<PolyP>> Z(std::size_t(lv.r), std::vector<PolyP>(std::size_t(lv.r), zeroPoly(lv)));
  for (int i = 0; i < lv.r; ++i)
    for (int j = 0; j < lv.r; ++j) {
      PolyP z = -L.g()[std::size_t(i)].derivative(j);
      if (i == j) z -= PolyP::monomial(lv.p, MultiIndex::unit(lv.r, i, lv.p - 1));
      Z[std::size_t(i)][std::size_t(j)] = z;
    }
  return Z;
}

std::vector<PolyMatrix> ovConnection(const HiggsModule& F, const FrobData& L) {
  const Level& lv = L.level();
  auto Z = ovCartierSplit(L);
  std::vector<PolyMatrix> M;
  for (int j = 0; j < lv.r; ++j) {
    PolyMatrix acc = zeroMatrix(lv, F.n);
    for (int i = 0; i < lv.r; ++i) {
      const PolyP& z = Z[std::size_t(i)][std::size_t(j)];
      if (z.isZero()) continue;
      acc = acc + pullbackEntries(F.A[std::size_t(i)], lv).map([&](const PolyP& x) { return z * x; });
    }
    M.push_back(std::move(acc));
  }
  return M;
}

}  // namespace adiff
