#include "adiff/scalars.hpp"

#include <climits>

namespace adiff {

namespace {
constexpr long kInfiniteValuation = LONG_MAX / 4;

long egcdInverse(long a, long mod) {
  long t = 0, nt = 1, r = mod, nr = ((a % mod) + mod) % mod;
  while (nr) {
    long q = r / nr;
    long tmp = t - q * nt; t = nt; nt = tmp;
    tmp = r - q * nr; r = nr; nr = tmp;
  }
  if (r != 1) throw Error(ErrorCode::NotPIntegral, "element is not invertible");
  return t < 0 ? t + mod : t;
}
}  // namespace

bool isPrime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

Integer factorial(long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

Integer binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

long valuation(const Integer& z, int p) {
  if (z == 0) return kInfiniteValuation;
  Integer rest;
  Integer pp = p;
  return long(mpz_remove(rest.get_mpz_t(), z.get_mpz_t(), pp.get_mpz_t()));
}

long valuation(const Rational& q, int p) {
  if (q == 0) return kInfiniteValuation;
  return valuation(Integer(q.get_num()), p) - valuation(Integer(q.get_den()), p);
}

long vpFactorial(long n, int p) {
  long v = 0;
  for (long q = n / p; q > 0; q /= p) v += q;
  return v;
}

long qPart(long k, int p, int m) { return k / ipow(p, m); }

Integer braceBinom(long k, long l, int p, int m) {
  return factorial(qPart(k + l, p, m)) / (factorial(qPart(k, p, m)) * factorial(qPart(l, p, m)));
}

Rational angleBinom(long k, long l, int p, int m) {
  Rational r(binomial(k + l, k), braceBinom(k, l, p, m));
  r.canonicalize();
  return r;
}

Integer braceBinomMI(const MultiIndex& k, const MultiIndex& l, int p, int m) {
  Integer r = 1;
  for (int i = 0; i < k.size(); ++i) r *= braceBinom(k[i], l[i], p, m);
  return r;
}

Rational angleBinomMI(const MultiIndex& k, const MultiIndex& l, int p, int m) {
  Rational r = 1;
  for (int i = 0; i < k.size(); ++i) r *= angleBinom(k[i], l[i], p, m);
  return r;
}

long binomModPSquare(long n, long i, int p) {
  if (i < 0 || i > n) return 0;
  const long mod = long(p) * p;
  long v = vpFactorial(n, p) - vpFactorial(i, p) - vpFactorial(n - i, p);
  if (v >= 2) return 0;
  auto unit = [&](long x) {
    long u = 1;
    for (long j = 2; j <= x; ++j) {
      long y = j;
      while (y % p == 0) y /= p;
      u = (u * (y % mod)) % mod;
    }
    return u;
  };
  long num = unit(n);
  long den = (unit(i) * unit(n - i)) % mod;
  long res = (num * egcdInverse(den, mod)) % mod;
  if (v == 1) res = (res * p) % mod;
  return res;
}

Integer dpPowerFactor(long k, int p) {
  Integer pf = factorial(p);
  Integer den = factorial(k);
  for (long j = 0; j < k; ++j) den *= pf;
  return factorial(k * p) / den;
}

Fp modP(long a, int p) {
  long r = a % p;
  return Fp(r < 0 ? r + p : r);
}

Fp modP(const Integer& a, int p) {
  return Fp(mpz_fdiv_ui(a.get_mpz_t(), static_cast<unsigned long>(p)));
}

Fp modP(const Rational& a, int p) {
  if (a == 0) return 0;
  Rational c = a;  // callers may pass an uncanonicalized fraction
  c.canonicalize();
  const Integer num = c.get_num(), den = c.get_den();
  long v = valuation(num, p) - valuation(den, p);
  if (v < 0) throw Error(ErrorCode::NotPIntegral, "rational " + a.get_str() + " is not p-integral");
  if (v > 0) return 0;
  return mulP(modP(num, p), invModP(modP(den, p), p), p);
}

Fp invModP(Fp a, int p) {
  if (a % p == 0) throw Error(ErrorCode::NotPIntegral, "inverse of zero mod p");
  return Fp(egcdInverse(long(a), p));
}

Fp powModP(Fp a, long e, int p) {
  Fp r = 1 % p, b = a % p;
  while (e > 0) {
    if (e & 1) r = mulP(r, b, p);
    b = mulP(b, b, p);
    e >>= 1;
  }
  return r;
}

Fp factorialModP(long n, int p) {
  if (n >= p) return 0;
  Fp r = 1;
  for (long j = 2; j <= n; ++j) r = mulP(r, Fp(j), p);
  return r;
}

Fp factorialUnitModP(long n, int p) {
  // n! = p^{n/p} (n/p)! * prod_{j <= n, p !| j} j, and that product is (-1)^{n/p} (n mod p)! mod p.
  Fp r = 1;
  while (n > 1) {
    long q = n / p;
    r = mulP(r, factorialModP(n % p, p), p);
    if (q & 1) r = negP(r, p);
    n = q;
  }
  return r;
}

Fp binomModP(long n, long k, int p) {
  if (k < 0 || k > n) return 0;
  Fp r = 1;
  while (n > 0 || k > 0) {
    long a = n % p, b = k % p;
    if (b > a) return 0;
    r = mulP(r, mulP(factorialModP(a, p), invModP(mulP(factorialModP(b, p), factorialModP(a - b, p), p), p), p), p);
    n /= p;
    k /= p;
  }
  return r;
}

Fp braceModP(long k, long l, const Level& lv) {
  const long d = lv.pm();
  const long q = (k + l) / d, qk = k / d, ql = l / d;
  if (vpFactorial(q, lv.p) - vpFactorial(qk, lv.p) - vpFactorial(ql, lv.p) > 0) return 0;
  const int p = lv.p;
  return mulP(factorialUnitModP(q, p), invModP(mulP(factorialUnitModP(qk, p), factorialUnitModP(ql, p), p), p), p);
}

Fp angleModP(long k, long l, const Level& lv) {
  const int p = lv.p;
  const long d = lv.pm();
  const long q = (k + l) / d, qk = k / d, ql = l / d;
  long v = (vpFactorial(k + l, p) - vpFactorial(k, p) - vpFactorial(l, p)) -
           (vpFactorial(q, p) - vpFactorial(qk, p) - vpFactorial(ql, p));
  if (v < 0) throw Error(ErrorCode::NotPIntegral, "angle coefficient not p-integral");
  if (v > 0) return 0;
  Fp num = mulP(factorialUnitModP(k + l, p), mulP(factorialUnitModP(qk, p), factorialUnitModP(ql, p), p), p);
  Fp den = mulP(mulP(factorialUnitModP(k, p), factorialUnitModP(l, p), p), factorialUnitModP(q, p), p);
  return mulP(num, invModP(den, p), p);
}

Fp braceMIModP(const MultiIndex& k, const MultiIndex& l, const Level& lv) {
  Fp r = 1;
  for (int i = 0; i < k.size() && r; ++i) r = mulP(r, braceModP(k[i], l[i], lv), lv.p);
  return r;
}

Fp angleMIModP(const MultiIndex& k, const MultiIndex& l, const Level& lv) {
  Fp r = 1;
  for (int i = 0; i < k.size() && r; ++i) r = mulP(r, angleModP(k[i], l[i], lv), lv.p);
  return r;
}

Fp divideByPFactorialModP(const Integer& a, int p) {
  if (a == 0) return 0;
  if (mpz_divisible_ui_p(a.get_mpz_t(), static_cast<unsigned long>(p)) == 0)
    throw Error(ErrorCode::NotPIntegral, "value " + a.get_str() + " is not divisible by p");
  Integer q = a / p;
  return mulP(modP(q, p), invModP(factorialModP(p - 1, p), p), p);
}

}  // namespace adiff
