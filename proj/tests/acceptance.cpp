// One PASS/FAIL line per acceptance criterion. A criterion passes when every
// primary case of its sweep passes within the stated time; supplementary cases
// are summarised on info lines and never change the verdict.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "adiff/suites.hpp"

using namespace adiff;

namespace {

struct Run {
  std::string suite;
  int p, m, r;
  int thetaTrunc = 0;
};

struct Criterion {
  int id;
  const char* title;
  std::vector<Run> runs;
  double maxSeconds = 0;  // 0: no time bound stated
};

std::vector<Run> grid(const std::string& suite, std::vector<int> ps, std::vector<int> ms, std::vector<int> rs) {
  std::vector<Run> out;
  for (int p : ps)
    for (int m : ms)
      for (int r : rs) out.push_back({suite, p, m, r});
  return out;
}

std::vector<Run> concat(std::vector<std::vector<Run>> parts) {
  std::vector<Run> out;
  for (auto& v : parts) out.insert(out.end(), v.begin(), v.end());
  return out;
}

std::string label(const Run& r) {
  return r.suite + "(p=" + std::to_string(r.p) + ",m=" + std::to_string(r.m) + ",r=" + std::to_string(r.r) + ")";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "lucas: binom(p^(m+1), i) mod p^2 equals the closed form", grid("lucas", {2, 3, 5}, {0, 1, 2}, {1}), 1.0},
      {2, "compd: dpPowerFactor, gamma_k(tau^{p^(m+1)}) and brace values", grid("compd", {2, 3, 5}, {0, 1, 2}, {1})},
      {3, "ring laws on 200 random triples", grid("ringlaws", {2, 3}, {0, 1}, {1, 2}), 60.0},
      {4, "kaneda block matrices and anti-morphism", concat({grid("kaneda", {3, 5}, {0}, {1}), grid("kaneda", {2, 3}, {0, 1}, {1})})},
      {5, "Phi on derivations and divided derivations",
       concat({grid("phi", {2, 3, 5, 7}, {0}, {1}), grid("phi", {2, 3}, {1, 2}, {1}), grid("phi", {2, 3}, {0, 1}, {2})})},
      {6, "Phi(theta) = theta + Phi(d<p^m>)^p", concat({grid("phibar", {2, 3}, {0, 1}, {1, 2})})},
      {7, "bullet action", concat({grid("bullet", {2, 3, 5}, {0}, {1}), grid("bullet", {2, 3}, {1}, {1}), grid("bullet", {2, 3}, {0, 1}, {2})})},
      {8, "van der Put element at thetaTrunc 3", {{"vanderput", 2, 0, 1, 3}, {"vanderput", 3, 0, 1, 3}}},
      {9, "glueing cocycle and automorphisms", grid("glue", {2, 3}, {0, 1}, {1, 2})},
      {10, "Frobenius descent", {{"descent", 2, 0, 1}}},
      {11, "Simpson round trip with Phi(P)(s) = P(s)", grid("simpson", {2, 3}, {0, 1}, {1, 2}), 180.0},
      {12, "Ogus-Vologodsky splitting reproduces the connection", grid("ov-compare", {2, 3}, {0}, {1, 2})},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    int pass = 0, fail = 0, skip = 0, suppPass = 0, suppFail = 0;
    std::string firstFail;
    std::vector<std::string> suppFails;
    for (const Run& run : c.runs) {
      const Context ctx = Context::make(run.p, run.m, run.r, 0, run.thetaTrunc);
      SuiteConfig cfg{ctx, standardLifting(ctx.level), "std", 1};
      SuiteReport rep = runSuite(run.suite, cfg);
      for (const SuiteCase& k : rep.cases) {
        if (k.supplementary) {
          if (k.status == CaseStatus::pass) ++suppPass;
          else if (k.status == CaseStatus::fail) {
            ++suppFail;
            if (suppFails.size() < 3) suppFails.push_back(label(run) + " " + k.name);
          }
          continue;
        }
        if (k.status == CaseStatus::pass) ++pass;
        else if (k.status == CaseStatus::skipped) ++skip;
        else {
          ++fail;
          if (firstFail.empty()) firstFail = label(run) + " " + k.name + ": expected " + k.expected + ", got " + k.actual;
        }
      }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool inTime = c.maxSeconds == 0 || secs < c.maxSeconds;
    const bool ok = fail == 0 && pass > 0 && inTime;
    if (!ok) ++failed;
    std::printf("%s criterion %2d: %s [%d/%d primary cases", ok ? "PASS" : "FAIL", c.id, c.title, pass, pass + fail);
    if (skip) std::printf(", %d not applicable", skip);
    std::printf(", %.2f s", secs);
    if (c.maxSeconds > 0) std::printf(" of %.0f s allowed", c.maxSeconds);
    std::printf("]\n");
    if (!firstFail.empty()) std::printf("     first failure: %s\n", firstFail.c_str());
    std::printf("     info: supplementary %d pass, %d fail\n", suppPass, suppFail);
    for (const auto& s : suppFails) std::printf("     info: supplementary failure %s\n", s.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria pass\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
