#include <doctest.h>

#include "adiff/scalars.hpp"

using namespace adiff;

namespace {

// Pascal's triangle mod p^2, independent of the valuation-based implementation.
std::vector<std::vector<long>> pascalMod(long n, long mod) {
  std::vector<std::vector<long>> c(std::size_t(n + 1));
  for (long a = 0; a <= n; ++a) {
    c[std::size_t(a)].assign(std::size_t(a + 1), 1);
    for (long b = 1; b < a; ++b) c[std::size_t(a)][std::size_t(b)] = (c[std::size_t(a - 1)][std::size_t(b - 1)] + c[std::size_t(a - 1)][std::size_t(b)]) % mod;
  }
  return c;
}

long naiveVp(long n, int p) {
  long v = 0;
  for (long i = 2; i <= n; ++i)
    for (long x = i; x % p == 0; x /= p) ++v;
  return v;
}

}  // namespace

TEST_CASE("legendre valuation of factorials") {
  CHECK(vpFactorial(6, 3) == 2);
  CHECK(vpFactorial(0, 5) == 0);
  CHECK(vpFactorial(4, 2) == 3);
  for (int p : {2, 3, 5, 7})
    for (long n = 0; n < 200; ++n) CHECK(vpFactorial(n, p) == naiveVp(n, p));
}

TEST_CASE("q part") {
  CHECK(qPart(5, 2, 1) == 2);
  CHECK(qPart(9, 3, 2) == 1);
  CHECK(qPart(3, 5, 0) == 3);
}

TEST_CASE("brace and angle coefficients") {
  CHECK(braceBinom(1, 1, 3, 0) == 2);
  CHECK(braceBinom(2, 2, 2, 1) == 2);
  CHECK(braceBinom(7, 0, 3, 1) == 1);
  CHECK(angleBinom(1, 1, 5, 0) == 1);
  CHECK(angleBinom(2, 2, 2, 1) == 3);
  CHECK(angleBinom(0, 4, 2, 2) == 1);

  // From the definitions: brace = q_{k+l}!/(q_k! q_l!), angle = binom / brace, and the angle is p-integral.
  for (int p : {2, 3, 5})
    for (int m : {0, 1, 2}) {
      const Level lv = Context::make(p, m, 1).level;
      const long pm = ipow(p, m);
      for (long k = 0; k < 30; ++k)
        for (long l = 0; l < 30; ++l) {
          Integer brace = factorial((k + l) / pm) / (factorial(k / pm) * factorial(l / pm));
          REQUIRE(braceBinom(k, l, p, m) == brace);
          Rational angle(binomial(k + l, k), brace);
          angle.canonicalize();
          REQUIRE(angleBinom(k, l, p, m) == angle);
          REQUIRE(valuation(angle, p) >= 0);
          CHECK(braceModP(k, l, lv) == modP(brace, p));
          CHECK(angleModP(k, l, lv) == modP(angle, p));
        }
    }
}

TEST_CASE("binomial mod p^2 against pascal") {
  CHECK(binomModPSquare(9, 3, 3) == 3);
  CHECK(binomModPSquare(4, 2, 2) == 2);
  CHECK(binomModPSquare(17, 0, 5) == 1);
  for (int p : {2, 3, 5, 7}) {
    const long mod = long(p) * p;
    auto c = pascalMod(130, mod);
    for (long n = 0; n <= 130; ++n)
      for (long i = 0; i <= n; ++i) REQUIRE(binomModPSquare(n, i, p) == c[std::size_t(n)][std::size_t(i)]);
  }
}

TEST_CASE("dp power factor") {
  CHECK(dpPowerFactor(2, 3) == 10);
  CHECK(dpPowerFactor(1, 7) == 1);
  CHECK(dpPowerFactor(2, 2) == 3);
  for (int p : {2, 3, 5})
    for (long k = 1; k <= 20; ++k) {
      Integer direct = factorial(k * p) / (factorial(k) * [&] {
                         Integer f = 1;
                         for (long i = 0; i < k; ++i) f *= factorial(p);
                         return f;
                       }());
      CHECK(dpPowerFactor(k, p) == direct);
      CHECK(modP(direct, p) == 1);
    }
}

TEST_CASE("residues mod p") {
  for (int p : {2, 3, 5, 7}) {
    for (long n = 0; n < 60; ++n) {
      Integer f = factorial(n);
      CHECK(factorialModP(n, p) == modP(f, p));
      Integer unit = f;
      while (unit % p == 0) unit /= p;
      CHECK(factorialUnitModP(n, p) == modP(unit, p));
      for (long k = 0; k <= n; k += 3) CHECK(binomModP(n, k, p) == modP(binomial(n, k), p));
    }
    for (Fp a = 1; a < Fp(p); ++a) CHECK(mulP(a, invModP(a, p), p) == 1);
    CHECK(modP(-1L, p) == Fp(p - 1));
    CHECK(powModP(2 % p, p - 1, p) == (p == 2 ? 0u : 1u));
  }
}

TEST_CASE("rational reduction") {
  CHECK(modP(Rational(1, 2), 3) == 2);
  CHECK_THROWS_AS(modP(Rational(1, 3), 3), Error);
  CHECK(divideByPFactorialModP(Integer(6), 3) == modP(Rational(6, 6), 3));
  CHECK(divideByPFactorialModP(Integer(10), 5) == modP(Rational(10, 120), 5));
  CHECK_THROWS_AS(divideByPFactorialModP(Integer(4), 3), Error);
}

TEST_CASE("context validation") {
  CHECK_THROWS_AS(Context::make(4, 0, 1), Error);
  CHECK_THROWS_AS(Context::make(3, 4, 1), Error);
  CHECK_THROWS_AS(Context::make(3, 0, 4), Error);
  Context c = Context::make(3, 1, 2);
  CHECK(c.thetaTrunc == 3);
  CHECK(c.tauTrunc == 27);
  CHECK(c.degBound == 27);
}
