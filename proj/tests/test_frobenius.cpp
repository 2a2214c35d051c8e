#include <doctest.h>

#include "adiff/corpus.hpp"
#include "adiff/expr.hpp"

using namespace adiff;

namespace {

MultiIndex e(int r, int i, long v) { return MultiIndex::unit(r, i, int(v)); }

PolyZ tz(int r, int i, long k, long c = 1) {
  PolyZ f(r);
  f.addTerm(e(r, i, k), Integer(c));
  return f;
}

Lifting lifting(int p, int m, std::vector<PolyZ> F) { return Lifting{Context::make(p, m, int(F.size())).level, std::move(F)}; }

}  // namespace

TEST_CASE("strong liftings") {
  const Context c21 = Context::make(2, 1, 1);
  FrobData std21 = FrobData::validate(standardLifting(c21.level), c21);
  CHECK(std21.g()[0].isZero());

  CHECK_THROWS_AS(FrobData::validate(lifting(2, 1, {tz(1, 0, 4) + tz(1, 0, 1, 2)}), c21), Error);
  try {
    FrobData::validate(lifting(2, 1, {tz(1, 0, 4) + tz(1, 0, 1, 2)}), c21);
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NotStrong);
  }
  FrobData ok = FrobData::validate(lifting(2, 1, {tz(1, 0, 4) + tz(1, 0, 2, 2)}), c21);
  CHECK(ok.g()[0] == PolyP::monomial(2, e(1, 0, 1)));

  // Not a lifting of Frobenius at all.
  CHECK_THROWS_AS(FrobData::validate(lifting(2, 1, {tz(1, 0, 3)}), c21), Error);
}

TEST_CASE("frobenius of a derivation, standard lifting") {
  for (int p : {2, 3, 5, 7}) {
    const Context ctx = Context::make(p, 0, 1);
    FrobData L = FrobData::validate(standardLifting(ctx.level), ctx);
    DiffOp expected = DiffOp::basis(ctx.level, e(1, 0, p), PolyP::monomial(p, e(1, 0, p - 1), Fp(p - 1)));
    CHECK(phi(DiffOp::partial(ctx.level, 0, 1), L) == expected);
    CHECK(phi(DiffOp::identity(ctx.level), L) == DiffOp::identity(ctx.level));
  }
  const Context c3 = Context::make(3, 0, 1);
  CHECK(render(phi(parseExpr("d1", c3.level), FrobData::validate(standardLifting(c3.level), c3))) == "-t1^2*d1<3>");
}

TEST_CASE("frobenius is O_X-linear") {
  const Context ctx = Context::make(3, 1, 2);
  Rng rng(3);
  FrobData L = FrobData::validate(randomStrongLifting(ctx.level, rng, 3), ctx);
  for (int k = 0; k < 8; ++k) {
    DiffOp P = randomOp(ctx.level, rng, ctx.level.pm1(), 2, 3), Q = randomOp(ctx.level, rng, ctx.level.pm1(), 2, 3);
    PolyP f = randomPoly(ctx.level, rng, 3, 3);
    CHECK(phi(P + Q, L) == phi(P, L) + phi(Q, L));
    CHECK(phi(P.leftMul(f), L) == phi(P, L).leftMul(f));
  }
}

TEST_CASE("van der Put series at p = 3") {
  const Context ctx = Context::make(3, 0, 1, 0, 3);
  const Level& lv = ctx.level;
  FrobData L = FrobData::validate(standardLifting(lv), ctx);
  DiffOp inv(lv), H(lv);
  for (int k = 1; k <= 3; ++k) {
    long pk = ipow(3, k);
    inv.addTerm(e(1, 0, pk), PolyP::monomial(3, e(1, 0, 3 * (ipow(3, k - 1) - 1))));
    H.addTerm(e(1, 0, pk), PolyP::monomial(3, e(1, 0, pk - 1), 2));
  }
  CHECK(phiCenterInv(DiffOp::partial(lv, 0, 3), 3, L) == inv);
  CHECK(toDiffOp(phiTilde(DiffOp::partial(lv, 0, 1), 3, L)) == H);
  // The inverse really inverts on the centre, through the truncation.
  ZOElem th = ZOElem::theta(lv, 0);
  CHECK(phiOnCenter(phiCenterInv(th, 3, L), 3, L).truncatedFrobenius(3) == th);
}

TEST_CASE("twisted frobenius is the identity on the centralizer") {
  const Context ctx = Context::make(2, 0, 2, 0, 3);
  Rng rng(9);
  FrobData L = FrobData::validate(randomStrongLifting(ctx.level, rng, 2), ctx);
  ZOElem z = ZOElem::theta(ctx.level, 1).leftMul(randomPoly(ctx.level, rng, 2, 2)) + ZOElem::fromPoly(ctx.level, randomPoly(ctx.level, rng, 2, 2));
  CHECK(phiTilde(toDiffOp(z), 3, L).truncatedFrobenius(3) == z.truncatedFrobenius(3));
}

TEST_CASE("bullet action") {
  const Context ctx = Context::make(3, 0, 1);
  const Level& lv = ctx.level;
  FrobData L = FrobData::validate(standardLifting(lv), ctx);
  ZOElem one = ZOElem::one(lv);
  DiffOp P = parseExpr("t1*d1 + d1<2>", lv);
  CHECK(bullet(P, one, L) == phiZO(P, L));

  // Central operators act diagonally through Phi.
  DiffOp Q = DiffOp::partial(lv, 0, 3).leftMul(PolyP::monomial(3, e(1, 0, 3)));
  Matrix<ZOElem> M = bulletMatrix(Q, L, ctx.thetaTrunc);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) CHECK(M(i, j).isZero());
  CHECK(bulletMatrix(DiffOp::identity(lv), L)(1, 1) == ZOElem::one(lv, VarFamily::tprime));
}

TEST_CASE("glueing derivations") {
  const Context ctx = Context::make(2, 0, 1);
  FrobData L1 = FrobData::validate(lifting(2, 0, {tz(1, 0, 2)}), ctx);
  FrobData L2 = FrobData::validate(lifting(2, 0, {tz(1, 0, 2) + tz(1, 0, 1, 2)}), ctx);
  FrobData L3 = FrobData::validate(lifting(2, 0, {tz(1, 0, 2) + tz(1, 0, 1, 2) + tz(1, 0, 3, 2)}), ctx);
  CHECK(glueDerivation(L1, L2)[0] == PolyP::monomial(2, e(1, 0, 1)));
  CHECK(glueDerivation(L1, L1)[0].isZero());
  CHECK(glueDerivation(L1, L3)[0] == glueDerivation(L1, L2)[0] + glueDerivation(L2, L3)[0]);

  GlueAuto id = glueAuto(ctx.level, {PolyP(2, 1)}, 3);
  ZOElem z = ZOElem::theta(ctx.level, 0) * ZOElem::theta(ctx.level, 0);
  CHECK(id.apply(z) == z);
}

TEST_CASE("divided frobenius of tau'") {
  // ((t + tau)^3 - t^3) / 3! written in tau^[k] = tau^k / k!: (t^2/2) tau + t tau^[2] + tau^[3].
  const Context ctx = Context::make(3, 0, 1);
  auto w = dividedFrobTau(standardLifting(ctx.level), ctx);
  REQUIRE(w.size() == 1);
  DPElem expected = DPElem::basis(ctx.level, e(1, 0, 1), PolyP::monomial(3, e(1, 0, 2), 2)) +
                    DPElem::basis(ctx.level, e(1, 0, 2), PolyP::monomial(3, e(1, 0, 1))) +
                    DPElem::basis(ctx.level, e(1, 0, 3), PolyP::constant(3, 1, 1));
  CHECK(w[0].withTrunc(3) == expected);

  // FrobData caches the same values.
  Rng rng(12);
  const Context c2 = Context::make(2, 1, 2);
  Lifting L = randomStrongLifting(c2.level, rng, 2);
  CHECK(dividedFrobTau(L, c2) == FrobData::validate(L, c2).w());
}
