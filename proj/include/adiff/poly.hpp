#pragma once

#include <map>

#include "adiff/multi_index.hpp"
#include "adiff/scalars.hpp"

namespace adiff {

// t: coordinates on X; tprime: coordinates on the Frobenius twist X'.
enum class VarFamily { t, tprime };

// Sparse polynomial over F_p. Zero coefficients are never stored.
class PolyP {
 public:
  using Terms = std::map<MultiIndex, Fp>;

  PolyP() = default;
  PolyP(int p, int nvars, VarFamily fam = VarFamily::t) : p_(p), n_(nvars), fam_(fam) {}

  static PolyP constant(int p, int nvars, long c, VarFamily fam = VarFamily::t);
  static PolyP monomial(int p, const MultiIndex& e, long c = 1, VarFamily fam = VarFamily::t);
  static PolyP variable(int p, int nvars, int i, VarFamily fam = VarFamily::t);

  int p() const { return p_; }
  int nvars() const { return n_; }
  VarFamily family() const { return fam_; }
  bool isZero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Terms& terms() const { return terms_; }

  Fp coeff(const MultiIndex& e) const;
  Fp constantTerm() const { return coeff(MultiIndex(n_)); }
  void addTerm(const MultiIndex& e, Fp c);

  PolyP& operator+=(const PolyP& o);
  PolyP& operator-=(const PolyP& o);
  PolyP operator+(const PolyP& o) const { PolyP r = *this; return r += o; }
  PolyP operator-(const PolyP& o) const { PolyP r = *this; return r -= o; }
  PolyP operator-() const;
  PolyP operator*(const PolyP& o) const;
  PolyP& operator*=(const PolyP& o) { return *this = *this * o; }
  PolyP scaled(Fp c) const;
  PolyP mulMonomial(const MultiIndex& e, Fp c) const;
  PolyP pow(long e) const;

  bool operator==(const PolyP& o) const { return terms_ == o.terms_; }
  bool operator!=(const PolyP& o) const { return !(*this == o); }

  long totalDegree() const;  // -1 for zero

  // Level-m divided derivative: t^h -> q_k! binom(h, k) t^(h-k), coordinatewise.
  PolyP hasse(const MultiIndex& k, const Level& lv) const;
  PolyP derivative(int i) const;

  // t^e -> t^(q e), relabelled into family fam (e.g. pulling t' back to t^(p^(m+1))).
  PolyP expandExponents(long q, VarFamily fam) const;
  // Inverse of expandExponents; throws InvalidInput if some exponent is not divisible by q.
  PolyP contractExponents(long q, VarFamily fam) const;
  bool exponentsDivisibleBy(long q) const;
  PolyP withFamily(VarFamily fam) const { PolyP r = *this; r.fam_ = fam; return r; }

 private:
  void adopt(const PolyP& o);

  Terms terms_;
  int p_ = 0;
  int n_ = 0;
  VarFamily fam_ = VarFamily::t;
};

// Sparse polynomial over Z (integer lifts, liftings mod p^2, the rational DP model).
class PolyZ {
 public:
  using Terms = std::map<MultiIndex, Integer>;

  PolyZ() = default;
  explicit PolyZ(int nvars) : n_(nvars) {}

  static PolyZ monomial(const MultiIndex& e, const Integer& c);
  static PolyZ lift(const PolyP& f);  // coefficients in [0, p)

  int nvars() const { return n_; }
  bool isZero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  Integer coeff(const MultiIndex& e) const;
  void addTerm(const MultiIndex& e, const Integer& c);

  PolyZ& operator+=(const PolyZ& o);
  PolyZ& operator-=(const PolyZ& o);
  PolyZ operator+(const PolyZ& o) const { PolyZ r = *this; return r += o; }
  PolyZ operator-(const PolyZ& o) const { PolyZ r = *this; return r -= o; }
  PolyZ operator*(const PolyZ& o) const;
  PolyZ scaled(const Integer& c) const;
  PolyZ pow(long e) const;
  bool operator==(const PolyZ& o) const { return terms_ == o.terms_; }

  // Exact level-m divided derivative over Z.
  PolyZ hasse(const MultiIndex& k, const Level& lv) const;
  PolyP reduce(int p) const;
  // Coefficients reduced into [0, N).
  PolyZ reducedMod(const Integer& N) const;
  bool allDivisibleBy(const Integer& d) const;
  PolyZ dividedExactly(const Integer& d) const;

 private:
  Terms terms_;
  int n_ = 0;
};

}  // namespace adiff
