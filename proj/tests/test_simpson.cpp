#include <doctest.h>

#include "adiff/corpus.hpp"

using namespace adiff;

namespace {

PolyMatrix constMatrix(const Level& lv, std::vector<std::vector<long>> rows, VarFamily fam = VarFamily::tprime) {
  const int n = int(rows.size());
  PolyMatrix M = zeroMatrix(lv, n, fam);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = PolyP::constant(lv.p, lv.r, ((rows[std::size_t(i)][std::size_t(j)] % lv.p) + lv.p) % lv.p, fam);
  return M;
}

FrobData stdFrob(const Context& ctx) { return FrobData::validate(standardLifting(ctx.level), ctx); }

HiggsModule jordan3(const Level& lv) {
  HiggsModule F{lv, 3, {}};
  F.A.push_back(constMatrix(lv, {{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}));
  for (int i = 1; i < lv.r; ++i) F.A.push_back(zeroMatrix(lv, 3, VarFamily::tprime));
  return F;
}

}  // namespace

TEST_CASE("higgs validation") {
  const Level lv = Context::make(3, 0, 2).level;
  CHECK(validateHiggs(nilpotentExample(lv)).ok);
  HiggsModule bad{lv, 2, {constMatrix(lv, {{0, 1}, {0, 0}}), constMatrix(lv, {{0, 0}, {1, 0}})}};
  CHECK_FALSE(validateHiggs(bad).ok);
  HiggsModule zero{lv, 0, {zeroMatrix(lv, 0, VarFamily::tprime), zeroMatrix(lv, 0, VarFamily::tprime)}};
  CHECK(validateHiggs(zero).ok);
}

TEST_CASE("pullback of the worked example") {
  for (int p : {2, 3})
    for (int m : {0, 1}) {
      const Context ctx = Context::make(p, m, 1);
      FrobData L = stdFrob(ctx);
      HiggsModule F = nilpotentExample(ctx.level);
      DModule E = pullback(F, L);
      CHECK(validateDModule(E).ok);
      auto theta = curvatureOf(E);
      CHECK(theta[0] == pullbackEntries(F.A[0], ctx.level));
      CHECK(qnThetaPower(E, 4) >= 0);
      CHECK(qnPartialVanishing(E, 4) >= 0);
      CHECK(qnKAdic(E, 4) >= 0);
    }
}

TEST_CASE("d-module validation rejects non-commuting generators") {
  const Level lv = Context::make(2, 0, 2).level;
  DModule E{lv, 2, {{constMatrix(lv, {{0, 1}, {0, 0}}, VarFamily::t)}, {constMatrix(lv, {{0, 0}, {1, 0}}, VarFamily::t)}}};
  CHECK_FALSE(validateDModule(E).ok);
  DModule zero{lv, 0, {{zeroMatrix(lv, 0)}, {zeroMatrix(lv, 0)}}};
  CHECK(validateDModule(zero).ok);
}

TEST_CASE("zero higgs module") {
  const Context ctx = Context::make(3, 0, 1);
  FrobData L = stdFrob(ctx);
  HiggsModule F{ctx.level, 1, {zeroMatrix(ctx.level, 1, VarFamily::tprime)}};
  CHECK(curvatureOf(pullback(F, L))[0].isZero());
  for (auto mode : {InvariantMode::literal, InvariantMode::twisted}) CHECK(roundTrip(F, L, ctx.degBound, mode).pass());
}

TEST_CASE("round trip of the worked example") {
  for (int p : {2, 3})
    for (int m : {0, 1}) {
      const Context ctx = Context::make(p, m, 1);
      FrobData L = stdFrob(ctx);
      for (auto mode : {InvariantMode::literal, InvariantMode::twisted}) {
        RoundTripReport rep = roundTrip(nilpotentExample(ctx.level), L, ctx.degBound, mode);
        CHECK(rep.pass());
        CHECK(rep.dimension == 2 * frobeniusMonomialCount(ctx.level, ctx.degBound));
      }
    }
}

TEST_CASE("invariants recover the higgs field") {
  const Context ctx = Context::make(3, 0, 2);
  FrobData L = stdFrob(ctx);
  Rng rng(21);
  for (int k = 0; k < 4; ++k) {
    HiggsModule F = randomHiggs(ctx.level, rng, 3);
    InvariantsResult res = invariants(pullback(F, L), L, ctx.degBound, InvariantMode::twisted);
    CHECK(res.stabilized);
    CHECK(res.at.generatorRank == F.n);
    CHECK(res.higgsRecovered);
  }
}

// A^2 != 0 is possible at p = 2 only for n >= 3; there the literal condition Phi(P)(s) = P(s)
// does not hold on 1 (x) s, while the twisted one does.
TEST_CASE("literal and twisted invariance differ when A^p != 0") {
  const Context ctx = Context::make(2, 0, 1);
  FrobData L = stdFrob(ctx);
  HiggsModule F = jordan3(ctx.level);
  RoundTripReport lit = roundTrip(F, L, ctx.degBound, InvariantMode::literal);
  RoundTripReport tw = roundTrip(F, L, ctx.degBound, InvariantMode::twisted);
  CHECK_FALSE(lit.basisInvariant);
  CHECK_FALSE(lit.pass());
  CHECK(tw.pass());

  const Context c3 = Context::make(3, 0, 1);
  CHECK(roundTrip(jordan3(c3.level), stdFrob(c3), c3.degBound, InvariantMode::literal).pass());
}

TEST_CASE("non-constant higgs fields") {
  const Context ctx = Context::make(3, 0, 1);
  FrobData L = stdFrob(ctx);
  Rng rng(4);
  for (int k = 0; k < 3; ++k) CHECK(roundTrip(randomHiggs(ctx.level, rng, 2, 1), L, ctx.degBound, InvariantMode::twisted).pass());
}

TEST_CASE("Ogus-Vologodsky splitting reproduces the connection") {
  const Context ctx = Context::make(3, 0, 2);
  Rng rng(8);
  for (int k = 0; k < 3; ++k) {
    FrobData L = FrobData::validate(randomStrongLifting(ctx.level, rng, 3), ctx);
    HiggsModule F = randomHiggs(ctx.level, rng, 3);
    auto conn = ovConnection(F, L);
    DModule E = pullback(F, L);
    for (int j = 0; j < 2; ++j) CHECK(conn[std::size_t(j)] == E.M[std::size_t(j)][0]);
  }
  CHECK_THROWS_AS(ovCartierSplit(stdFrob(Context::make(2, 1, 1))), Error);
}

TEST_CASE("frobenius monomial count") {
  const Level lv = Context::make(2, 0, 2).level;
  CHECK(frobeniusMonomialCount(lv, 0) == 1);
  CHECK(frobeniusMonomialCount(lv, 2) == 3);
  CHECK(frobeniusMonomialCount(lv, 5) == 6);
}
