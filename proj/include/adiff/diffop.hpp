#pragma once

#include <map>

#include "adiff/matrix.hpp"
#include "adiff/poly.hpp"

namespace adiff {

// Element of D^(m) in the left basis: sum_k f_k d^<k>.
class DiffOp {
 public:
  using Terms = std::map<MultiIndex, PolyP>;

  DiffOp() = default;
  explicit DiffOp(const Level& lv) : lv_(lv) {}

  static DiffOp fromPoly(const Level& lv, const PolyP& f);
  static DiffOp basis(const Level& lv, const MultiIndex& k);
  static DiffOp basis(const Level& lv, const MultiIndex& k, const PolyP& f);
  static DiffOp identity(const Level& lv) { return basis(lv, MultiIndex(lv.r)); }
  // d_i^<k> in coordinate i (0-based).
  static DiffOp partial(const Level& lv, int i, long k);
  static DiffOp coordinate(const Level& lv, int i);

  const Level& level() const { return lv_; }
  const Terms& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  PolyP coeff(const MultiIndex& k) const;
  void addTerm(const MultiIndex& k, const PolyP& f);

  DiffOp& operator+=(const DiffOp& o);
  DiffOp& operator-=(const DiffOp& o);
  DiffOp operator+(const DiffOp& o) const { DiffOp r = *this; return r += o; }
  DiffOp operator-(const DiffOp& o) const { DiffOp r = *this; return r -= o; }
  DiffOp operator-() const;
  DiffOp scaled(Fp c) const;
  DiffOp leftMul(const PolyP& f) const;  // f * P, no Leibniz needed

  long order() const;        // max |k|, -1 for zero
  long thetaDegree() const;  // max |k div p^(m+1)|, -1 for zero

  bool operator==(const DiffOp& o) const { return lv_ == o.lv_ && terms_ == o.terms_; }
  bool operator!=(const DiffOp& o) const { return !(*this == o); }

 private:
  Level lv_;
  Terms terms_;
};

PolyP zeroPoly(const Level& lv, VarFamily fam = VarFamily::t);
PolyP onePoly(const Level& lv, VarFamily fam = VarFamily::t);

PolyP applyOp(const DiffOp& P, const PolyP& f);
DiffOp mulOp(const DiffOp& P, const DiffOp& Q);
DiffOp operator*(const DiffOp& P, const DiffOp& Q);
DiffOp powOp(const DiffOp& P, long e);

// Element of the centralizer ZO = O_X[theta]: sum_c f_c theta^c, theta_i = d_i^<p^(m+1)>.
// With coefficients of family tprime the same type models O_X'[theta].
class ZOElem {
 public:
  using Terms = std::map<MultiIndex, PolyP>;

  ZOElem() = default;
  explicit ZOElem(const Level& lv, VarFamily fam = VarFamily::t) : lv_(lv), fam_(fam) {}

  static ZOElem fromPoly(const Level& lv, const PolyP& f);
  static ZOElem theta(const Level& lv, int i, VarFamily fam = VarFamily::t);
  static ZOElem one(const Level& lv, VarFamily fam = VarFamily::t);

  const Level& level() const { return lv_; }
  VarFamily family() const { return fam_; }
  const Terms& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  PolyP coeff(const MultiIndex& c) const;
  void addTerm(const MultiIndex& c, const PolyP& f);

  ZOElem& operator+=(const ZOElem& o);
  ZOElem& operator-=(const ZOElem& o);
  ZOElem operator+(const ZOElem& o) const { ZOElem r = *this; return r += o; }
  ZOElem operator-(const ZOElem& o) const { ZOElem r = *this; return r -= o; }
  ZOElem operator*(const ZOElem& o) const;
  ZOElem scaled(Fp c) const;
  ZOElem leftMul(const PolyP& f) const;

  long thetaDegree() const;
  long minThetaDegree() const;  // -1 for zero
  ZOElem truncatedDegree(long maxDeg) const;
  // Modulo the Frobenius-power ideal (theta_1^(p^N), ..., theta_r^(p^N)).
  ZOElem truncatedFrobenius(int N) const;
  ZOElem withFamily(VarFamily fam) const;

  bool operator==(const ZOElem& o) const { return terms_ == o.terms_; }
  bool operator!=(const ZOElem& o) const { return !(*this == o); }

 private:
  Level lv_;
  VarFamily fam_ = VarFamily::t;
  Terms terms_;
};

// theta^c = thetaPowerUnit(c) * d^<c p^(m+1)>, and
// theta^c d^<t> = zoUnit(c, t) * d^<c p^(m+1) + t>; both computed from angle coefficients.
Fp thetaPowerUnit(const MultiIndex& c, const Level& lv);
Fp zoUnit(const MultiIndex& c, const MultiIndex& t, const Level& lv);

DiffOp toDiffOp(const ZOElem& z);
// Throws NotCentral if P is not in the span of the theta-monomials over O_X.
ZOElem toZO(const DiffOp& P);

// P = sum_{t < p^(m+1)} z_t d^<t>, keyed by t.
using ZODecomp = std::map<MultiIndex, ZOElem>;
ZODecomp zoDecompose(const DiffOp& P);
DiffOp zoAssemble(const Level& lv, const ZODecomp& d);

// xi'^c a(t') -> a(t^(p^(m+1))) d^<c p^(m+1)>; input coefficients are in t'.
DiffOp curvatureInject(const ZOElem& a);
bool isCentral(const DiffOp& P);

// Right multiplication by P on D as a free left ZO-module with basis d^<t>, t < p^(m+1) (lex).
Matrix<ZOElem> kanedaMatrix(const DiffOp& P);
// Action of P on O_X over O_X^(e) with basis t^a, a < p^e (lex); e defaults to m+1.
// Entries are polynomials in t' := t^(p^e).
Matrix<PolyP> quotientMatrix(const DiffOp& P, int frobExp = -1);

// D^(m) -> D^(m+s), generators d^[p^l] -> d^[p^l].
DiffOp levelRaise(const DiffOp& P, int s);
// Unit u with (generator word for k at base level m, evaluated at level L) = u d^<k>.
Fp generatorWordUnit(long k, int baseM, const Level& L);

// Element of F^{s*} D^(m)_{X^(s)} = O_X (x) D^(m): coefficient polynomials stay in t,
// operators d_u^<k> act on the descended coordinates u = t^(p^s).
struct DescendedOp {
  Level lv;  // level m of the descended ring
  int s = 0;
  std::map<MultiIndex, PolyP> terms;

  void addTerm(const MultiIndex& k, const PolyP& f);
  bool operator==(const DescendedOp& o) const { return lv == o.lv && s == o.s && terms == o.terms; }
};
DescendedOp frobDescend(const DiffOp& P, int s);
// Product in F^{s*} ZO^(m) = O_X[theta]; both arguments must be theta-supported.
DescendedOp descendedCentralProduct(const DescendedOp& a, const DescendedOp& b);

}  // namespace adiff
