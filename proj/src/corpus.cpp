#include "adiff/corpus.hpp"

#include <algorithm>

namespace adiff {

namespace {
MultiIndex randomExponent(int r, Rng& rng, long maxTotal) {
  MultiIndex e(r);
  long left = maxTotal;
  for (int i = 0; i < r; ++i) {
    e[i] = int(rng.below(left + 1));
    left -= e[i];
  }
  return e;
}

using ConstMatrix = std::vector<std::vector<Fp>>;

// Gauss-Jordan inverse over F_p; empty if singular.
ConstMatrix inverse(ConstMatrix a, int p) {
  const int n = int(a.size());
  ConstMatrix inv(std::size_t(n), std::vector<Fp>(std::size_t(n), 0));
  for (int i = 0; i < n; ++i) inv[i][i] = 1;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (piv < n && !a[piv][c]) ++piv;
    if (piv == n) return {};
    std::swap(a[piv], a[c]);
    std::swap(inv[piv], inv[c]);
    Fp s = invModP(a[c][c], p);
    for (int j = 0; j < n; ++j) {
      a[c][j] = mulP(a[c][j], s, p);
      inv[c][j] = mulP(inv[c][j], s, p);
    }
    for (int i = 0; i < n; ++i) {
      if (i == c || !a[i][c]) continue;
      Fp f = negP(a[i][c], p);
      for (int j = 0; j < n; ++j) {
        a[i][j] = addP(a[i][j], mulP(f, a[c][j], p), p);
        inv[i][j] = addP(inv[i][j], mulP(f, inv[c][j], p), p);
      }
    }
  }
  return inv;
}

PolyMatrix toPolyMatrix(const ConstMatrix& a, const Level& lv, VarFamily fam) {
  const int n = int(a.size());
  PolyMatrix M = zeroMatrix(lv, n, fam);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (a[i][j]) M(i, j) = PolyP::constant(lv.p, lv.r, a[i][j], fam);
  return M;
}

ConstMatrix strictlyUpper(int n, Rng& rng, int p) {
  ConstMatrix a(std::size_t(n), std::vector<Fp>(std::size_t(n), 0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) a[i][j] = Fp(rng.below(p));
  return a;
}

bool commute(const ConstMatrix& a, const ConstMatrix& b, int p) {
  const int n = int(a.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Fp x = 0, y = 0;
      for (int k = 0; k < n; ++k) {
        x = addP(x, mulP(a[i][k], b[k][j], p), p);
        y = addP(y, mulP(b[i][k], a[k][j], p), p);
      }
      if (x != y) return false;
    }
  return true;
}
}  // namespace

PolyP randomPoly(const Level& lv, Rng& rng, int maxDeg, int maxTerms, VarFamily fam) {
  PolyP f(lv.p, lv.r, fam);
  long terms = 1 + rng.below(maxTerms);
  for (long k = 0; k < terms; ++k) f.addTerm(randomExponent(lv.r, rng, maxDeg), rng.nonzero(lv.p));
  return f;
}

DiffOp randomOp(const Level& lv, Rng& rng, long maxOrder, int maxDeg, int maxTerms) {
  DiffOp P(lv);
  long terms = 1 + rng.below(maxTerms);
  for (long k = 0; k < terms; ++k) P.addTerm(randomExponent(lv.r, rng, maxOrder), randomPoly(lv, rng, maxDeg, 3));
  return P;
}

Lifting randomStrongLifting(const Level& lv, Rng& rng, int gDeg) {
  std::vector<PolyP> g;
  bool any = false;
  for (int j = 0; j < lv.r; ++j) {
    PolyP gj = rng.below(4) ? randomPoly(lv, rng, gDeg, 3) : zeroPoly(lv);
    any = any || !gj.isZero();
    g.push_back(gj);
  }
  if (!any) g[0] = randomPoly(lv, rng, gDeg, 3);
  return liftingFromG(lv, g);
}

HiggsModule randomHiggs(const Level& lv, Rng& rng, int maxN, int coeffDeg) {
  const int p = lv.p;
  const int n = 1 + int(rng.below(maxN));
  std::vector<ConstMatrix> C;
  for (int i = 0; i < lv.r; ++i) {
    ConstMatrix a;
    do a = strictlyUpper(n, rng, p);
    while (!std::all_of(C.begin(), C.end(), [&](const ConstMatrix& b) { return commute(a, b, p); }));
    C.push_back(std::move(a));
  }
  ConstMatrix P, Pinv;
  do {
    P.assign(std::size_t(n), std::vector<Fp>(std::size_t(n), 0));
    for (auto& row : P)
      for (auto& x : row) x = Fp(rng.below(p));
    Pinv = inverse(P, p);
  } while (Pinv.empty());
  const PolyMatrix Pm = toPolyMatrix(P, lv, VarFamily::tprime), Pi = toPolyMatrix(Pinv, lv, VarFamily::tprime);
  HiggsModule F{lv, n, {}};
  for (int i = 0; i < lv.r; ++i) {
    PolyMatrix A = Pm * toPolyMatrix(C[std::size_t(i)], lv, VarFamily::tprime) * Pi;
    if (coeffDeg > 0) {
      PolyP f = randomPoly(lv, rng, coeffDeg, 2, VarFamily::tprime);
      A = A.map([&](const PolyP& x) { return f * x; });
    }
    F.A.push_back(std::move(A));
  }
  return F;
}

HiggsModule nilpotentExample(const Level& lv) {
  HiggsModule F{lv, 2, {}};
  for (int i = 0; i < lv.r; ++i) {
    PolyMatrix A = zeroMatrix(lv, 2, VarFamily::tprime);
    if (i == 0) A(0, 1) = onePoly(lv, VarFamily::tprime);
    F.A.push_back(std::move(A));
  }
  return F;
}

// ---------------------------------------------------------------- JSON

namespace {
Json indexToJson(const MultiIndex& e) {
  Json a = Json::array();
  for (int i = 0; i < e.size(); ++i) a.push_back(e[i]);
  return a;
}

MultiIndex indexFromJson(const Json& j, int r) {
  if (!j.is_array() || int(j.size()) != r)
    throw Error(ErrorCode::InvalidInput, "exponent vector must have " + std::to_string(r) + " entries");
  MultiIndex e(r);
  for (int i = 0; i < r; ++i) {
    long v = j[std::size_t(i)].get<long>();
    if (v < 0) throw Error(ErrorCode::InvalidInput, "negative exponent");
    e[i] = int(v);
  }
  return e;
}

template <class Terms>
Json termsToJson(const Terms& terms) {
  Json a = Json::array();
  for (const auto& [e, c] : terms) {
    Json v = c.fits_slong_p() ? Json(c.get_si()) : Json(c.get_str());
    a.push_back(Json::array({indexToJson(e), v}));
  }
  return a;
}

PolyZ polyZFromJson(const Json& j, int r) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidInput, "polynomial must be a list of [exponents, coefficient] pairs");
  PolyZ f(r);
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2) throw Error(ErrorCode::InvalidInput, "polynomial term must be [exponents, coefficient]");
    const Json& c = t[1];
    Integer v;
    if (c.is_number_integer()) v = Integer(c.dump());
    else if (c.is_string()) v = Integer(c.get<std::string>());
    else throw Error(ErrorCode::InvalidInput, "coefficients must be integers");
    f.addTerm(indexFromJson(t[0], r), v);
  }
  return f;
}

Json matrixToJson(const PolyMatrix& M) {
  Json rows = Json::array();
  for (int a = 0; a < M.rows(); ++a) {
    Json row = Json::array();
    for (int b = 0; b < M.cols(); ++b) row.push_back(polyToJson(M(a, b)));
    rows.push_back(row);
  }
  return rows;
}

PolyMatrix matrixFromJson(const Json& j, const Level& lv, int n, VarFamily fam) {
  if (!j.is_array() || int(j.size()) != n) throw Error(ErrorCode::InvalidInput, "matrix must have " + std::to_string(n) + " rows");
  PolyMatrix M = zeroMatrix(lv, n, fam);
  for (int a = 0; a < n; ++a) {
    if (!j[std::size_t(a)].is_array() || int(j[std::size_t(a)].size()) != n)
      throw Error(ErrorCode::InvalidInput, "matrix must have " + std::to_string(n) + " columns");
    for (int b = 0; b < n; ++b) M(a, b) = polyFromJson(j[std::size_t(a)][std::size_t(b)], lv, fam);
  }
  return M;
}

Json levelJson(const Level& lv) { return Json{{"p", lv.p}, {"m", lv.m}, {"r", lv.r}}; }
}  // namespace

Level levelFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("p") || !j.contains("m") || !j.contains("r"))
    throw Error(ErrorCode::InvalidInput, "expected an object with p, m and r");
  return Context::make(j["p"].get<int>(), j["m"].get<int>(), j["r"].get<int>()).level;
}

Json polyToJson(const PolyP& f) {
  Json a = Json::array();
  for (const auto& [e, c] : f.terms()) a.push_back(Json::array({indexToJson(e), c}));
  return a;
}

PolyP polyFromJson(const Json& j, const Level& lv, VarFamily fam) {
  PolyP f(lv.p, lv.r, fam);
  const PolyZ z = polyZFromJson(j, lv.r);
  for (const auto& [e, c] : z.terms()) f.addTerm(e, modP(c, lv.p));
  return f;
}

Json liftingToJson(const Lifting& L) {
  Json j = levelJson(L.lv);
  Json lift = Json::array();
  for (const auto& F : L.F) lift.push_back(termsToJson(F.terms()));
  j["lift"] = lift;
  return j;
}

Lifting liftingFromJson(const Json& j) {
  Lifting L{levelFromJson(j), {}};
  if (!j.contains("lift") || !j["lift"].is_array() || int(j["lift"].size()) != L.lv.r)
    throw Error(ErrorCode::InvalidInput, "\"lift\" must list one polynomial per coordinate");
  for (const auto& f : j["lift"]) L.F.push_back(polyZFromJson(f, L.lv.r));
  return L;
}

Json higgsToJson(const HiggsModule& F) {
  Json j = levelJson(F.lv);
  j["kind"] = "higgs";
  j["n"] = F.n;
  Json A = Json::array();
  for (const auto& M : F.A) A.push_back(matrixToJson(M));
  j["A"] = A;
  return j;
}

HiggsModule higgsFromJson(const Json& j) {
  HiggsModule F{levelFromJson(j), j.value("n", -1), {}};
  if (F.n < 0) throw Error(ErrorCode::InvalidInput, "Higgs module needs a rank \"n\"");
  if (!j.contains("A") || !j["A"].is_array() || int(j["A"].size()) != F.lv.r)
    throw Error(ErrorCode::InvalidInput, "\"A\" must list one matrix per coordinate");
  for (const auto& M : j["A"]) F.A.push_back(matrixFromJson(M, F.lv, F.n, VarFamily::tprime));
  return F;
}

Json dmoduleToJson(const DModule& E) {
  Json j = levelJson(E.lv);
  j["kind"] = "dmodule";
  j["n"] = E.n;
  Json M = Json::array();
  for (const auto& gens : E.M) {
    Json g = Json::array();
    for (const auto& G : gens) g.push_back(matrixToJson(G));
    M.push_back(g);
  }
  j["M"] = M;
  return j;
}

DModule dmoduleFromJson(const Json& j) {
  DModule E{levelFromJson(j), j.value("n", -1), {}};
  if (E.n < 0) throw Error(ErrorCode::InvalidInput, "D-module needs a rank \"n\"");
  if (!j.contains("M") || !j["M"].is_array() || int(j["M"].size()) != E.lv.r)
    throw Error(ErrorCode::InvalidInput, "\"M\" must list generator matrices per coordinate");
  for (const auto& gens : j["M"]) {
    if (!gens.is_array() || int(gens.size()) != E.lv.m + 1)
      throw Error(ErrorCode::InvalidInput, "each coordinate needs m+1 generator matrices");
    std::vector<PolyMatrix> g;
    for (const auto& G : gens) g.push_back(matrixFromJson(G, E.lv, E.n, VarFamily::t));
    E.M.push_back(std::move(g));
  }
  return E;
}

}  // namespace adiff
