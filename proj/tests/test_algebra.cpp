#include <doctest.h>

#include "adiff/corpus.hpp"
#include "adiff/expr.hpp"
#include "oracle.hpp"

using namespace adiff;

namespace {

Level level(int p, int m, int r = 1) { return Context::make(p, m, r).level; }
MultiIndex e1(long v) { return MultiIndex::unit(1, 0, int(v)); }
PolyP c(const Level& lv, long v) { return PolyP::constant(lv.p, lv.r, ((v % lv.p) + lv.p) % lv.p); }
PolyP t(const Level& lv, long k, long coef = 1) { return PolyP::monomial(lv.p, MultiIndex::unit(lv.r, 0, int(k)), ((coef % lv.p) + lv.p) % lv.p); }
DiffOp op(const std::string& s, const Level& lv) { return parseExpr(s, lv); }

}  // namespace

TEST_CASE("divided power products") {
  const Level l0 = level(3, 0);
  DPElem tau = DPElem::basis(l0, e1(1), onePoly(l0));
  CHECK(tau * tau == DPElem::basis(l0, e1(2), c(l0, 2)));

  const Level l1 = level(2, 1);
  DPElem tau2 = DPElem::basis(l1, e1(2), onePoly(l1));
  CHECK((tau2 * tau2).isZero());
  CHECK(DPElem::one(l1) * tau2 == tau2);
}

TEST_CASE("usual divided powers on the ideal") {
  const Level lv = level(2, 0);
  DPElem w = DPElem::basis(lv, e1(1), t(lv, 1)) + DPElem::basis(lv, e1(2), onePoly(lv));
  DPElem expected = DPElem::basis(lv, e1(2), t(lv, 2)) + DPElem::basis(lv, e1(3), t(lv, 1)) + DPElem::basis(lv, e1(4), onePoly(lv));
  CHECK(gammaDP(w, 2) == expected);
  CHECK(gammaDP(w, 1) == w);

  for (int p : {2, 3, 5})
    for (int m : {0, 1}) {
      const Level L = level(p, m);
      const long q = L.pm1();
      DPElem base = DPElem::basis(L, e1(q), onePoly(L));
      for (long k = 1; k <= 6; ++k)
        CHECK(gammaDP(base, k) == DPElem::basis(L, e1(k * q), c(L, long(modP(dpPowerFactor(k, p), p)))));
    }
}

TEST_CASE("taylor map and pairing") {
  const Level lv = level(3, 0);
  DPElem eps = taylor(t(lv, 2), lv);
  DPElem expected = DPElem::basis(lv, e1(0), t(lv, 2)) + DPElem::basis(lv, e1(1), t(lv, 1, 2)) + DPElem::basis(lv, e1(2), c(lv, 2));
  CHECK(eps == expected);
  CHECK(taylor(onePoly(lv), lv) == DPElem::one(lv));
  CHECK(taylor(t(lv, 1), lv) == DPElem::basis(lv, e1(0), t(lv, 1)) + DPElem::basis(lv, e1(1), onePoly(lv)));

  CHECK(pairOp(DiffOp::partial(lv, 0, 2), eps) == c(lv, 2));
  CHECK(pairOp(DiffOp::identity(lv), DPElem::one(lv)) == onePoly(lv));
  for (long k = 0; k < 8; ++k)
    for (long l = 0; l < 8; ++l)
      CHECK(pairOp(DiffOp::partial(lv, 0, k), DPElem::basis(lv, e1(l), onePoly(lv))) == c(lv, k == l ? 1 : 0));
}

TEST_CASE("comultiplication") {
  const Level lv = level(3, 0);
  DPTensor d = comultDP(DPElem::basis(lv, e1(2), onePoly(lv)));
  CHECK(d.terms.size() == 3);
  CHECK(d.terms.at({e1(2), e1(0)}) == onePoly(lv));
  CHECK(d.terms.at({e1(1), e1(1)}) == onePoly(lv));
  CHECK(d.terms.at({e1(0), e1(2)}) == onePoly(lv));
  DPTensor one = comultDP(DPElem::one(lv));
  CHECK(one.terms.size() == 1);
}

TEST_CASE("action on polynomials") {
  const Level l3 = level(3, 0);
  CHECK(applyOp(DiffOp::partial(l3, 0, 2), t(l3, 2)) == c(l3, 2));
  CHECK(applyOp(DiffOp::partial(l3, 0, 4), onePoly(l3)).isZero());
  const Level l2 = level(2, 1);
  CHECK(applyOp(DiffOp::partial(l2, 0, 2), t(l2, 3)) == t(l2, 1));

  for (int p : {2, 3})
    for (int m : {0, 1})
      for (int r : {1, 2}) {
        const Level lv = level(p, m, r);
        Rng rng(std::uint64_t(100 * p + 10 * m + r));
        for (int k = 0; k < 15; ++k) {
          DiffOp P = randomOp(lv, rng, 2 * lv.pm1(), 3, 3);
          PolyP f = randomPoly(lv, rng, 6, 4);
          CHECK(applyOp(P, f) == oracle::reduce(oracle::apply(oracle::lift(P), oracle::lift(f), p, m), lv));
        }
      }
}

TEST_CASE("products") {
  for (int p : {2, 3, 5}) {
    const Level lv = level(p, 0);
    CHECK(render(op("d1", lv) * op("t1", lv)) == "t1*d1 + 1");
  }
  const Level l2 = level(2, 1);
  CHECK(op("d1<2>", l2) * op("d1<2>", l2) == op("d1<4>", l2));
  for (int m : {0, 1, 2}) {
    const Level lv = level(3, m);
    const long q = lv.pm1();
    for (long k = 1; k <= 4; ++k) CHECK(powOp(DiffOp::partial(lv, 0, q), k) == DiffOp::partial(lv, 0, k * q));
  }
}

TEST_CASE("products against the integer model") {
  for (int p : {2, 3})
    for (int m : {0, 1})
      for (int r : {1, 2}) {
        const Level lv = level(p, m, r);
        Rng rng(std::uint64_t(7 * p + 3 * m + r));
        for (int k = 0; k < 12; ++k) {
          DiffOp P = randomOp(lv, rng, lv.pm1() + 1, 2, 2);
          DiffOp Q = randomOp(lv, rng, lv.pm1() + 1, 2, 2);
          CHECK(P * Q == oracle::product(P, Q));
        }
      }
}

TEST_CASE("centre and centralizer") {
  const Level lv = level(3, 0);
  CHECK(isCentral(DiffOp::partial(lv, 0, 3)));
  CHECK_FALSE(isCentral(DiffOp::partial(lv, 0, 1)));
  CHECK_FALSE(isCentral(DiffOp::coordinate(lv, 0)));
  CHECK_THROWS_AS(toZO(DiffOp::partial(lv, 0, 1)), Error);

  ZODecomp parts = zoDecompose(DiffOp::partial(lv, 0, 3 + 2));
  REQUIRE(parts.size() == 1);
  CHECK(parts.begin()->first == e1(2));
  CHECK(parts.begin()->second == ZOElem::theta(lv, 0));

  ZODecomp f = zoDecompose(DiffOp::fromPoly(lv, t(lv, 2)));
  REQUIRE(f.size() == 1);
  CHECK(f.begin()->first.isZero());

  const Level l2 = level(2, 0);
  ZODecomp sq = zoDecompose(powOp(DiffOp::partial(l2, 0, 1), 2));
  REQUIRE(sq.size() == 1);
  CHECK(sq.begin()->first.isZero());
  CHECK(sq.begin()->second == ZOElem::theta(l2, 0));

  Rng rng(11);
  for (int m : {0, 1}) {
    const Level L = level(2, m, 2);
    for (int k = 0; k < 10; ++k) {
      DiffOp P = randomOp(L, rng, 3 * L.pm1(), 2, 3);
      CHECK(zoAssemble(L, zoDecompose(P)) == P);
    }
  }
}

TEST_CASE("kaneda matrix") {
  const Level lv = level(3, 0);
  Matrix<ZOElem> id(3, 3, ZOElem(lv));
  for (int i = 0; i < 3; ++i) id(i, i) = ZOElem::one(lv);
  CHECK(kanedaMatrix(DiffOp::identity(lv)) == id);

  Matrix<ZOElem> th(3, 3, ZOElem(lv));
  for (int i = 0; i < 3; ++i) th(i, i) = ZOElem::theta(lv, 0);
  CHECK(kanedaMatrix(powOp(DiffOp::partial(lv, 0, 1), 3)) == th);
}

TEST_CASE("quotient matrix") {
  const Level lv = level(2, 0);
  Matrix<PolyP> d = quotientMatrix(DiffOp::partial(lv, 0, 1));
  PolyP zero(2, 1, VarFamily::tprime), one = PolyP::constant(2, 1, 1, VarFamily::tprime);
  CHECK(d(0, 0) == zero);
  CHECK(d(0, 1) == one);
  CHECK(d(1, 0) == zero);
  CHECK(d(1, 1) == zero);
  CHECK(quotientMatrix(DiffOp::partial(lv, 0, 2)).isZero());

  Matrix<PolyP> id = quotientMatrix(DiffOp::identity(lv));
  CHECK(id(0, 0) == one);
  CHECK(id(1, 1) == one);
  CHECK(id(0, 1) == zero);
}

TEST_CASE("level raise and descent") {
  const Level l0 = level(2, 0);
  // Generators go to generators; the curvature generator of the lower level dies.
  CHECK(levelRaise(DiffOp::partial(l0, 0, 1), 1) == DiffOp::partial(level(2, 1), 0, 1));
  CHECK(levelRaise(DiffOp::partial(l0, 0, 2), 1).isZero());

  const Level l1 = level(2, 1);
  DescendedOp d = frobDescend(DiffOp::partial(l1, 0, 4), 1);
  DescendedOp expected{l0, 1, {}};
  expected.addTerm(e1(2), onePoly(l0));
  CHECK(d == expected);
  CHECK(frobDescend(DiffOp::partial(l1, 0, 3), 1).terms.empty());
  CHECK_THROWS_AS(frobDescend(DiffOp::partial(l0, 0, 1), 1), Error);
}

TEST_CASE("levels must agree") {
  CHECK_THROWS_AS(DiffOp::partial(level(2, 0), 0, 1) * DiffOp::partial(level(3, 0), 0, 1), Error);
  CHECK_THROWS_AS(DiffOp::partial(level(2, 0), 0, 1) + DiffOp::partial(level(2, 1), 0, 1), Error);
}
