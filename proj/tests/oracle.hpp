#pragma once

// Reference model over Q: an operator is sum f_k d^<k> with f_k in Q[t], acting on
// Q[t] by d^<k> t^n = q_k! binom(n, k) t^(n-k). The action is faithful in
// characteristic 0, so products are recovered from the action on monomials; they
// are p-integral and are reduced mod p afterwards. Nothing here calls the library's multiplication code.

#include <algorithm>
#include <functional>
#include <map>
#include <vector>

#include "adiff/diffop.hpp"

namespace oracle {

using adiff::Integer;
using adiff::Rational;
using Exp = std::vector<int>;
using ZPoly = std::map<Exp, Rational>;
using ZOp = std::map<Exp, ZPoly>;

inline Integer fact(long n) {
  Integer r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

inline Integer choose(long n, long k) {
  if (k < 0 || k > n) return 0;
  Integer r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline long pPow(int p, int e) {
  long r = 1;
  while (e-- > 0) r *= p;
  return r;
}

inline void addTo(ZPoly& f, const Exp& e, const Rational& c) {
  if (c == 0) return;
  Rational& slot = f[e];
  slot += c;
  if (slot == 0) f.erase(e);
}

inline ZPoly mul(const ZPoly& a, const ZPoly& b) {
  ZPoly r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Exp e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      addTo(r, e, ca * cb);
    }
  return r;
}

// d^<k> applied to a polynomial.
inline ZPoly applyBasis(const Exp& k, const ZPoly& f, int p, int m) {
  const long pm = pPow(p, m);
  ZPoly r;
  for (const auto& [e, c] : f) {
    Rational coef = c;
    Exp out(e.size());
    for (std::size_t i = 0; i < e.size() && coef != 0; ++i) {
      if (e[i] < k[i]) coef = 0;
      else {
        coef *= fact(k[i] / pm) * choose(e[i], k[i]);
        out[i] = e[i] - k[i];
      }
    }
    addTo(r, out, coef);
  }
  return r;
}

inline ZPoly apply(const ZOp& P, const ZPoly& f, int p, int m) {
  ZPoly r;
  for (const auto& [k, g] : P)
    for (const auto& [e, c] : mul(g, applyBasis(k, f, p, m))) addTo(r, e, c);
  return r;
}

inline void forEachExp(int r, int total, Exp& cur, int i, const std::function<void(const Exp&)>& fn) {
  if (i == r) {
    fn(cur);
    return;
  }
  for (int v = 0; v <= total; ++v) {
    cur[std::size_t(i)] = v;
    forEachExp(r, total - v, cur, i + 1, fn);
  }
  cur[std::size_t(i)] = 0;
}

inline int totalOf(const Exp& e) {
  int s = 0;
  for (int v : e) s += v;
  return s;
}

// Coefficients of the operator whose action on t^n (|n| <= order) is act(n).
inline ZOp recover(int r, int order, int p, int m, const std::function<ZPoly(const Exp&)>& act) {
  std::vector<Exp> ns;
  Exp cur(std::size_t(r), 0);
  forEachExp(r, order, cur, 0, [&](const Exp& n) { ns.push_back(n); });
  std::stable_sort(ns.begin(), ns.end(), [](const Exp& a, const Exp& b) { return totalOf(a) < totalOf(b); });
  const long pm = pPow(p, m);
  ZOp R;
  for (const Exp& n : ns) {
    ZPoly rest = act(n);
    ZPoly tn{{n, 1}};
    for (const auto& [e, c] : apply(R, tn, p, m)) addTo(rest, e, -c);
    // Only d^<n> itself still acts on t^n with a constant term: what is left is q_n! f_n.
    Integer q = 1;
    for (int v : n) q *= fact(v / pm);
    ZPoly fn;
    for (const auto& [e, c] : rest) fn[e] = c / q;
    if (!fn.empty()) R[n] = fn;
  }
  return R;
}

inline ZPoly lift(const adiff::PolyP& f) {
  ZPoly r;
  for (const auto& [e, c] : f.terms()) {
    Exp x(std::size_t(f.nvars()));
    for (int i = 0; i < f.nvars(); ++i) x[std::size_t(i)] = e[i];
    r[x] = long(c);
  }
  return r;
}

inline ZOp lift(const adiff::DiffOp& P) {
  ZOp r;
  for (const auto& [k, f] : P.terms()) {
    Exp x(std::size_t(P.level().r));
    for (int i = 0; i < P.level().r; ++i) x[std::size_t(i)] = k[i];
    r[x] = lift(f);
  }
  return r;
}

inline adiff::PolyP reduce(const ZPoly& f, const adiff::Level& lv) {
  adiff::PolyP r(lv.p, lv.r);
  for (const auto& [e, c] : f) {
    adiff::MultiIndex x(lv.r);
    for (int i = 0; i < lv.r; ++i) x[i] = e[std::size_t(i)];
    r.addTerm(x, adiff::modP(c, lv.p));
  }
  return r;
}

inline adiff::DiffOp reduce(const ZOp& P, const adiff::Level& lv) {
  adiff::DiffOp r(lv);
  for (const auto& [k, f] : P) {
    adiff::MultiIndex x(lv.r);
    for (int i = 0; i < lv.r; ++i) x[i] = k[std::size_t(i)];
    r.addTerm(x, reduce(f, lv));
  }
  return r;
}

inline adiff::DiffOp product(const adiff::DiffOp& P, const adiff::DiffOp& Q) {
  const adiff::Level& lv = P.level();
  const ZOp a = lift(P), b = lift(Q);
  const int order = int(std::max<long>(0, P.order()) + std::max<long>(0, Q.order()));
  ZOp R = recover(lv.r, order, lv.p, lv.m, [&](const Exp& n) {
    ZPoly tn{{n, 1}};
    return apply(a, apply(b, tn, lv.p, lv.m), lv.p, lv.m);
  });
  return reduce(R, lv);
}

}  // namespace oracle
