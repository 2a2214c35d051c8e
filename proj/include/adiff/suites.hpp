#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adiff/corpus.hpp"

namespace adiff {

enum class CaseStatus { pass, fail, skipped };
const char* statusName(CaseStatus s);

struct SuiteCase {
  std::string name;
  CaseStatus status = CaseStatus::pass;
  std::string expected;
  std::string actual;
  // Checks beyond the suite's stated claim: corrected variants, negative controls, extra properties.
  bool supplementary = false;
};

struct SuiteConfig {
  Context ctx;
  std::optional<Lifting> lift;
  std::string liftLabel = "std";
  std::uint64_t seed = 1;
};

struct SuiteReport {
  std::string suite;
  SuiteConfig config;
  std::vector<SuiteCase> cases;  // sorted by name
  double seconds = 0;

  int count(CaseStatus s, bool includeSupplementary = true) const;
  bool passed() const { return count(CaseStatus::fail) == 0; }
  bool primaryPassed() const { return count(CaseStatus::fail, false) == 0; }
};

// lucas, compd, ringlaws, kaneda, phi, phibar, bullet, vanderput, glue, descent, simpson, ov-compare.
const std::vector<std::string>& suiteNames();
// Also accepts "all". Throws UnknownSuite, or InvalidInput when a lifting is needed but absent.
SuiteReport runSuite(const std::string& name, const SuiteConfig& cfg);
Json reportToJson(const SuiteReport& r, bool timing);

}  // namespace adiff
