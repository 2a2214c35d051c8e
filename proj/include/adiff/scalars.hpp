#pragma once

#include <cstdint>
#include <gmpxx.h>

#include "adiff/context.hpp"
#include "adiff/multi_index.hpp"

namespace adiff {

using Integer = mpz_class;
using Rational = mpq_class;

bool isPrime(long n);
long ipow(long b, int e);

Integer factorial(long n);
Integer binomial(long n, long k);

// v_p of an integer; +infinity is reported as a large sentinel for zero.
long valuation(const Integer& z, int p);
long valuation(const Rational& q, int p);
long vpFactorial(long n, int p);

long qPart(long k, int p, int m);
Integer braceBinom(long k, long l, int p, int m);     // q_{k+l}! / (q_k! q_l!)
Rational angleBinom(long k, long l, int p, int m);    // binom(k+l,k) / brace
Integer braceBinomMI(const MultiIndex& k, const MultiIndex& l, int p, int m);
Rational angleBinomMI(const MultiIndex& k, const MultiIndex& l, int p, int m);

// binom(n, i) mod p^2 by valuation and unit parts; never forms the binomial.
long binomModPSquare(long n, long i, int p);

// (kp)! / ((p!)^k k!)
Integer dpPowerFactor(long k, int p);

// ---- residues mod p ----
using Fp = std::uint32_t;

Fp modP(long a, int p);
Fp modP(const Integer& a, int p);
// Reduction of a p-integral rational; throws NotPIntegral otherwise.
Fp modP(const Rational& a, int p);
Fp invModP(Fp a, int p);
Fp powModP(Fp a, long e, int p);
inline Fp addP(Fp a, Fp b, int p) { Fp s = a + b; return s >= Fp(p) ? s - p : s; }
inline Fp subP(Fp a, Fp b, int p) { return a >= b ? a - b : a + p - b; }
inline Fp mulP(Fp a, Fp b, int p) { return Fp((std::uint64_t(a) * b) % p); }
inline Fp negP(Fp a, int p) { return a == 0 ? 0 : p - a; }

// n! / p^{v_p(n!)} mod p.
Fp factorialUnitModP(long n, int p);
Fp binomModP(long n, long k, int p);
Fp factorialModP(long n, int p);

// Fast residues of the structure constants, used by the algebra kernels.
Fp braceModP(long k, long l, const Level& lv);
Fp angleModP(long k, long l, const Level& lv);
Fp braceMIModP(const MultiIndex& k, const MultiIndex& l, const Level& lv);
Fp angleMIModP(const MultiIndex& k, const MultiIndex& l, const Level& lv);

// Division of an integer known to be divisible by p by p!, reduced mod p:
// divide by p, multiply by ((p-1)!)^{-1}. Throws NotPIntegral if p does not divide.
Fp divideByPFactorialModP(const Integer& a, int p);

}  // namespace adiff
