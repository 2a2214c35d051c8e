#pragma once

#include <map>
#include <string>
#include <vector>

#include "adiff/frobenius.hpp"
#include "adiff/linalg.hpp"

namespace adiff {

using PolyMatrix = Matrix<PolyP>;
// Section sum_k S_k e_k of a free module of rank n.
using Section = std::vector<PolyP>;

PolyMatrix zeroMatrix(const Level& lv, int n, VarFamily fam = VarFamily::t);
PolyMatrix identityMatrix(const Level& lv, int n, VarFamily fam = VarFamily::t);
Section applyMatrix(const PolyMatrix& M, const Section& S);
// t'^b -> t^(b p^(m+1)) entrywise.
PolyMatrix pullbackEntries(const PolyMatrix& A, const Level& lv);

struct Diagnostics {
  bool ok = true;
  std::string message;
};

// Higgs field: A_i is the action of xi'_i, entries in t'.
struct HiggsModule {
  Level lv;
  int n = 0;
  std::vector<PolyMatrix> A;
};

// Smallest N with every product of N of the A_i zero; -1 if none up to maxN.
int nilpotencyIndex(const std::vector<PolyMatrix>& mats, int n, int maxN);
Diagnostics validateHiggs(const HiggsModule& F);

// Free D^(m)-module: M[i][l] is the action of d_i^[p^l] on the basis, l = 0..m.
struct DModule {
  Level lv;
  int n = 0;
  std::vector<std::vector<PolyMatrix>> M;
};

// The full action rho on sections, built from the generators by digit products
// and the Leibniz rule. Memoized; not safe to share between threads.
class DAction {
 public:
  explicit DAction(const DModule& E);

  const DModule& module() const { return E_; }
  // rho(d_i^<c>)(e_k) for all k, as the columns of a matrix.
  const PolyMatrix& basisImage(int i, long c);
  Section applyCoord(int i, long c, const Section& S);
  Section apply(const MultiIndex& k, const Section& S);
  Section apply(const DiffOp& P, const Section& S);
  // sum f_c Theta^c S; Theta is O_X-linear.
  Section applyZO(const ZOElem& z, const Section& S);
  PolyMatrix curvature(int i) { return basisImage(i, E_.lv.pm1()); }

 private:
  DModule E_;
  std::map<std::pair<int, long>, PolyMatrix> R_;
};

DModule pullback(const HiggsModule& F, const FrobData& L);
Diagnostics validateDModule(const DModule& E);
std::vector<PolyMatrix> curvatureOf(const DModule& E);

// Three forms of quasi-nilpotence; each returns the witnessing bound or -1 if none up to maxN.
int qnThetaPower(const DModule& E, int maxN);
int qnPartialVanishing(const DModule& E, int maxN);  // in units of p^(m+1)
int qnKAdic(const DModule& E, int maxN);

enum class InvariantMode {
  literal,  // Phi(P)(s) = P(s)
  twisted,  // Phi~(P)(s) = P(s)
};

struct InvariantSpace {
  int degBound = 0;
  long dimension = 0;
  int generatorRank = 0;
  std::vector<Section> basis;  // echelon basis, highest-degree pivots first
  std::vector<Section> generators;
};

struct InvariantsResult {
  InvariantMode mode = InvariantMode::twisted;
  int nilBound = 0;
  InvariantSpace at;    // degBound
  InvariantSpace next;  // degBound + p^(m+1)
  long expectedStep = 0;  // dimension growth predicted by a free module of the recovered rank
  bool stabilized = false;
  HiggsModule higgs;  // induced Higgs field on the generators
  bool higgsRecovered = false;
};

// Number of b in N^r with p^(m+1) |b| <= D.
long frobeniusMonomialCount(const Level& lv, int D);

InvariantsResult invariants(const DModule& E, const FrobData& L, int degBound, InvariantMode mode);

struct RoundTripReport {
  InvariantMode mode = InvariantMode::twisted;
  bool pullbackValid = false;
  bool basisInvariant = false;   // (a)
  bool dimensionMatches = false; // (b)
  bool rankRecovered = false;    // (c)
  bool stabilized = false;
  bool higgsMatches = false;     // recovered Higgs field equals the input
  long dimension = 0;
  long expectedDimension = 0;
  int rank = 0;
  std::string message;
  bool pass() const { return pullbackValid && basisInvariant && dimensionMatches && rankRecovered && stabilized && higgsMatches; }
};

RoundTripReport roundTrip(const HiggsModule& F, const FrobData& L, int degBound, InvariantMode mode);

// m = 0: Z[i][j] = coefficient of dt_j in zeta(dt'_i) = -t_i^(p-1) delta_ij - d_j(g_i).
std::vector<std::vector<PolyP>> ovCartierSplit(const FrobData& L);
// Connection matrices sum_i Z[i][j] A_i; compare with pullback(F).M[j][0].
std::vector<PolyMatrix> ovConnection(const HiggsModule& F, const FrobData& L);

}  // namespace adiff
