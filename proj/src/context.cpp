#include "adiff/context.hpp"

#include "adiff/scalars.hpp"

namespace adiff {

const char* errorName(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidContext: return "InvalidContext";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::LevelMismatch: return "LevelMismatch";
    case ErrorCode::NotPIntegral: return "NotPIntegral";
    case ErrorCode::NotALifting: return "NotALifting";
    case ErrorCode::NotStrong: return "NotStrong";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::NotCentral: return "NotCentral";
    case ErrorCode::NotQuasiNilpotent: return "NotQuasiNilpotent";
    case ErrorCode::NotStabilized: return "NotStabilized";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
  }
  return "Unknown";
}

long Level::pm() const { return ipow(p, m); }
long Level::pm1() const { return ipow(p, m + 1); }

void requireSameLevel(const Level& a, const Level& b, const char* where) {
  if (a != b)
    throw Error(ErrorCode::LevelMismatch, std::string(where) + ": operands live over different (p, m, r)");
}

Context Context::make(int p, int m, int r, int tauTrunc, int thetaTrunc, int degBound) {
  if (p < 2 || p > 7 || !isPrime(p))
    throw Error(ErrorCode::InvalidContext, "p must be a prime in [2, 7], got " + std::to_string(p));
  if (m < 0 || m > 3) throw Error(ErrorCode::InvalidContext, "m must be in [0, 3], got " + std::to_string(m));
  if (r < 1 || r > kMaxVars)
    throw Error(ErrorCode::InvalidContext, "r must be in [1, " + std::to_string(kMaxVars) + "], got " + std::to_string(r));
  Context c;
  c.level = Level{p, m, r};
  const long q = c.level.pm1();
  c.thetaTrunc = thetaTrunc > 0 ? thetaTrunc : 3;
  c.tauTrunc = tauTrunc > 0 ? tauTrunc : int(q * c.thetaTrunc);
  c.degBound = degBound > 0 ? degBound : int(3 * q);
  if (tauTrunc < 0 || thetaTrunc < 0 || degBound < 0)
    throw Error(ErrorCode::InvalidContext, "truncation parameters must be positive");
  if (long(c.tauTrunc) < q * c.thetaTrunc)
    throw Error(ErrorCode::InvalidContext, "tauTrunc must be at least p^(m+1) * thetaTrunc = " +
                                               std::to_string(q * c.thetaTrunc));
  return c;
}

}  // namespace adiff
