#pragma once

#include <map>
#include <memory>
#include <vector>

#include "adiff/diffop.hpp"
#include "adiff/dpalg.hpp"

namespace adiff {

// F_j = image of t'_j, read mod p^2.
struct Lifting {
  Level lv;
  std::vector<PolyZ> F;
};

Lifting standardLifting(const Level& lv);
// t_j -> t_j^(p^(m+1)) + p * g_j^(p^m), g_j lifted with coefficients in [0, p).
Lifting liftingFromG(const Level& lv, const std::vector<PolyP>& g);
// Level-(m+s) lifting t -> G(t^(p^s)) induced by a level-m lifting G of the descended coordinates.
Lifting frobeniusTwistLifting(const Lifting& G, int s);

class FrobData {
 public:
  // Throws NotALifting or NotStrong.
  static FrobData validate(const Lifting& L, const Context& ctx);

  const Context& ctx() const { return ctx_; }
  const Level& level() const { return ctx_.level; }
  const Lifting& lifting() const { return lift_; }
  const std::vector<PolyP>& g() const { return g_; }
  const std::vector<DPElem>& w() const { return w_; }

  // prod_j gamma_{k_j}(w_j), truncated at tauTrunc. Cached, safe for concurrent use.
  DPElem G(const MultiIndex& k) const;
  // Phi(d^<n>) as a centralizer element; |n| <= tauTrunc.
  ZOElem phiBasis(const MultiIndex& n) const;
  // Same value, through Phi(theta^c d^<t>) = Phi(theta)^c Phi(d^<t>); no restriction on |n|.
  ZOElem phiBasisFactored(const MultiIndex& n) const;
  // Phi(theta_i).
  ZOElem phiTheta(int i) const;
  // Phi(theta_i)^e modulo (theta^(p^N)).
  ZOElem phiThetaPowerMod(int i, long e, int N) const;
  // Phi^{-1}(theta_i) modulo (theta^(p^N)).
  std::vector<ZOElem> phiInvThetas(int N) const;

 private:
  struct Cache;
  Context ctx_;
  Lifting lift_;
  std::vector<PolyP> g_;
  std::vector<DPElem> w_;
  std::shared_ptr<Cache> cache_;
};

FrobData validateStrong(const Lifting& L, const Context& ctx);
std::vector<DPElem> dividedFrobTau(const Lifting& L, const Context& ctx);

DiffOp phi(const DiffOp& P, const FrobData& L);
ZOElem phiZO(const DiffOp& P, const FrobData& L);
ZOElem phiFactored(const DiffOp& P, const FrobData& L);

// Phi on the centralizer O_X[theta]: f theta^c -> f Phi(theta)^c, modulo (theta_i^(p^N)).
ZOElem phiOnCenter(const ZOElem& z, int N, const FrobData& L);
// x with Phi(x) = z modulo (theta_i^(p^N)); z must be central.
ZOElem phiCenterInv(const ZOElem& z, int N, const FrobData& L);
DiffOp phiCenterInv(const DiffOp& z, int N, const FrobData& L);
// Inverse center automorphism applied to Phi(P), modulo (theta_i^(p^N)).
ZOElem phiTilde(const DiffOp& P, int N, const FrobData& L);

// P . (sum f_c theta^c) = sum Phi(P f_c) theta^c, truncated at theta-degree thetaTrunc.
ZOElem bullet(const DiffOp& P, const ZOElem& z, const FrobData& L);
// Matrix of s -> P . s on the basis t^a (a < p^(m+1)) over O_X'[theta]; t'-coefficients.
Matrix<ZOElem> bulletMatrix(const DiffOp& P, const FrobData& L, int thetaTrunc = -1);

// u(dt'_j) = (F2_j - F1_j) / p! mod p.
std::vector<PolyP> glueDerivation(const FrobData& L1, const FrobData& L2);

// Element of O_X[w_1..w_r] (w_j = dt'_j), truncated at total w-degree N.
using SymElem = ZOElem;

// Algebra endomorphism w_j -> w_j - u_j of the truncated symmetric algebra.
class GlueAuto {
 public:
  GlueAuto(const Level& lv, std::vector<PolyP> u, int N) : lv_(lv), u_(std::move(u)), N_(N) {}
  SymElem apply(const SymElem& x) const;
  const std::vector<PolyP>& u() const { return u_; }
  int degree() const { return N_; }

 private:
  Level lv_;
  std::vector<PolyP> u_;
  int N_;
};

GlueAuto glueAuto(const Level& lv, const std::vector<PolyP>& u, int N);

// Level-m Frobenius of the descended coordinates u, applied to F^{s*} D^(m).
DescendedOp phiDescended(const DescendedOp& D, const FrobData& Lu);

}  // namespace adiff
