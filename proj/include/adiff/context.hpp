#pragma once

#include <stdexcept>
#include <string>

namespace adiff {

inline constexpr int kMaxVars = 3;

enum class ErrorCode {
  InvalidContext,
  InvalidInput,
  LevelMismatch,
  NotPIntegral,
  NotALifting,
  NotStrong,
  TruncationTooSmall,
  NotCentral,
  NotQuasiNilpotent,
  NotStabilized,
  SyntaxError,
  IndexOutOfRange,
  UnknownSuite,
};

const char* errorName(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Characteristic, level and number of coordinates. Cheap to copy; every
// algebraic object carries one so that mixing levels is caught at runtime.
struct Level {
  int p = 2;
  int m = 0;
  int r = 1;

  long pm() const;   // p^m
  long pm1() const;  // p^(m+1)
  bool operator==(const Level& o) const { return p == o.p && m == o.m && r == o.r; }
  bool operator!=(const Level& o) const { return !(*this == o); }
  Level withM(int mm) const { return Level{p, mm, r}; }
};

void requireSameLevel(const Level& a, const Level& b, const char* where);

struct Context {
  Level level;
  int tauTrunc = 0;
  int thetaTrunc = 0;
  int degBound = 0;

  // Zero truncation arguments pick defaults: thetaTrunc 3,
  // tauTrunc p^(m+1)*thetaTrunc, degBound 3*p^(m+1).
  static Context make(int p, int m, int r, int tauTrunc = 0, int thetaTrunc = 0, int degBound = 0);
};

}  // namespace adiff
