#pragma once

#include <cstdint>
#include <random>
#include <string>

#include <json.hpp>

#include "adiff/simpson.hpp"

namespace adiff {

// mt19937_64 is fully specified, and draws go through plain modular reduction,
// so a seed gives the same corpus on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  long below(long n) { return long(g_() % std::uint64_t(n)); }
  Fp nonzero(int p) { return Fp(1 + below(p - 1)); }

 private:
  std::mt19937_64 g_;
};

PolyP randomPoly(const Level& lv, Rng& rng, int maxDeg, int maxTerms, VarFamily fam = VarFamily::t);
// Sum of up to maxTerms terms f d^<k> with |k| <= maxOrder, deg f <= maxDeg.
DiffOp randomOp(const Level& lv, Rng& rng, long maxOrder, int maxDeg, int maxTerms);
// t_j -> t_j^(p^(m+1)) + p g_j^(p^m) with random g_j of degree <= gDeg, never all zero.
Lifting randomStrongLifting(const Level& lv, Rng& rng, int gDeg);
// Commuting nilpotent Higgs field of rank 1..maxN: conjugate of a strictly upper
// triangular commuting family, each A_i scaled by a random f_i(t') of degree
// <= coeffDeg (coeffDeg = 0 gives constant matrices).
HiggsModule randomHiggs(const Level& lv, Rng& rng, int maxN, int coeffDeg = 0);
// The rank-2 module with A_1 = [[0,1],[0,0]] and A_i = 0 otherwise.
HiggsModule nilpotentExample(const Level& lv);

// ---- JSON: polynomials are [[[e1,..,er], coeff], ...] with integer coefficients.
using Json = nlohmann::json;

Json polyToJson(const PolyP& f);
PolyP polyFromJson(const Json& j, const Level& lv, VarFamily fam);
Json liftingToJson(const Lifting& L);
Lifting liftingFromJson(const Json& j);
Json higgsToJson(const HiggsModule& F);
HiggsModule higgsFromJson(const Json& j);
Json dmoduleToJson(const DModule& E);
DModule dmoduleFromJson(const Json& j);
Level levelFromJson(const Json& j);

}  // namespace adiff
