#include "adiff/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <thread>

#include "adiff/expr.hpp"

namespace adiff {

const char* statusName(CaseStatus s) {
  switch (s) {
    case CaseStatus::pass: return "pass";
    case CaseStatus::fail: return "fail";
    case CaseStatus::skipped: return "skipped";
  }
  return "?";
}

int SuiteReport::count(CaseStatus s, bool includeSupplementary) const {
  return int(std::count_if(cases.begin(), cases.end(), [&](const SuiteCase& c) {
    return c.status == s && (includeSupplementary || !c.supplementary);
  }));
}

const std::vector<std::string>& suiteNames() {
  static const std::vector<std::string> names = {"lucas", "compd",   "ringlaws", "kaneda",  "phi",     "phibar",
                                                 "bullet", "vanderput", "glue",   "descent", "simpson", "ov-compare"};
  return names;
}

namespace {

// ---------------------------------------------------------------- helpers

std::string txt(const PolyP& f) { return render(f); }
std::string txt(const DiffOp& P) { return render(P); }
std::string txt(const ZOElem& z) { return render(z); }
std::string txt(const DescendedOp& D) { return render(D); }
template <class T>
std::string txt(const Matrix<T>& M) { return renderMatrix(M); }
template <class T>
std::string txt(const std::vector<T>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + txt(v[i]);
  return s + ")";
}

std::string pad(long i, int width = 2) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*ld", width, i);
  return buf;
}

class Recorder {
 public:
  explicit Recorder(std::vector<SuiteCase>& out) : out_(out) {}

  void add(const std::string& name, bool ok, std::string expected, std::string actual, bool supp = false) {
    out_.push_back({name, ok ? CaseStatus::pass : CaseStatus::fail, std::move(expected), std::move(actual), supp});
  }
  template <class T>
  void same(const std::string& name, const T& expected, const T& actual, bool supp = false) {
    add(name, expected == actual, txt(expected), txt(actual), supp);
  }
  void skip(const std::string& name, const std::string& why, bool supp = false) {
    out_.push_back({name, CaseStatus::skipped, "", why, supp});
  }

 private:
  std::vector<SuiteCase>& out_;
};

// Counts agreements over a sample and keeps the first counterexample.
class Tally {
 public:
  void record(bool ok, const std::function<std::string()>& describe) {
    ++total_;
    if (ok) ++good_;
    else if (first_.empty()) first_ = describe();
  }
  void report(Recorder& rec, const std::string& name, bool supp = false) const {
    std::string want = std::to_string(total_) + "/" + std::to_string(total_);
    std::string got = std::to_string(good_) + "/" + std::to_string(total_);
    if (!first_.empty()) got += "; first counterexample: " + first_;
    rec.add(name, good_ == total_, want, got, supp);
  }

 private:
  int good_ = 0, total_ = 0;
  std::string first_;
};

// Runs fn(0..n-1) on a small thread pool; results are written by index, so order is deterministic.
void parallelFor(int n, const std::function<void(int)>& fn) {
  const int workers = std::max(1, std::min<int>(n, int(std::thread::hardware_concurrency())));
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex mu;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

MultiIndex unit(const Level& lv, int i, long v = 1) { return MultiIndex::unit(lv.r, i, int(v)); }
PolyP mono(const Level& lv, const MultiIndex& e, long c = 1, VarFamily fam = VarFamily::t) {
  return PolyP::monomial(lv.p, e, ((c % lv.p) + lv.p) % lv.p, fam);
}

bool sameLifting(const Lifting& a, const Lifting& b) { return a.lv == b.lv && a.F == b.F; }

const Lifting& requireLifting(const SuiteConfig& cfg, const char* suite) {
  if (!cfg.lift) throw Error(ErrorCode::InvalidInput, std::string("suite '") + suite + "' needs a lifting (--lift)");
  return *cfg.lift;
}

FrobData validated(const Lifting& L, const Context& ctx) { return FrobData::validate(L, ctx); }

// The supplied lifting followed by `extra` random strong liftings with g of degree <= 4.
std::vector<std::pair<std::string, FrobData>> liftingSample(const SuiteConfig& cfg, const char* suite, int extra, Rng& rng) {
  std::vector<std::pair<std::string, FrobData>> out;
  out.emplace_back(cfg.liftLabel, validated(requireLifting(cfg, suite), cfg.ctx));
  for (int k = 1; k <= extra; ++k)
    out.emplace_back("rand" + pad(k), validated(randomStrongLifting(cfg.ctx.level, rng, 4), cfg.ctx));
  return out;
}

ZOElem thetaPart(const ZOElem& z, long deg) {
  ZOElem r(z.level(), z.family());
  for (const auto& [c, f] : z.terms())
    if (c.total() == deg) r.addTerm(c, f);
  return r;
}

ZOElem powZO(const ZOElem& z, long e) {
  ZOElem r = ZOElem::one(z.level(), z.family());
  for (long k = 0; k < e; ++k) r = r * z;
  return r;
}

ZOElem randomZO(const Level& lv, Rng& rng, long maxTheta, int maxDeg, int terms) {
  ZOElem z(lv);
  for (int k = 0; k < terms; ++k) {
    MultiIndex c(lv.r);
    long left = maxTheta;
    for (int i = 0; i < lv.r; ++i) {
      c[i] = int(rng.below(left + 1));
      left -= c[i];
    }
    z.addTerm(c, randomPoly(lv, rng, maxDeg, 2));
  }
  return z;
}

// ---------------------------------------------------------------- lucas

void suiteLucas(const SuiteConfig& cfg, Recorder& rec) {
  const Level& lv = cfg.ctx.level;
  const int p = lv.p;
  const long q = lv.pm1(), pm = lv.pm(), p2 = long(p) * p;
  auto modp2 = [&](long v) { return ((v % p2) + p2) % p2; };
  const long pFact = Integer(factorial(p) % Integer(p2)).get_si();
  for (long i = 0; i <= q; ++i) {
    const long actual = binomModPSquare(q, i, p);
    long closed = 0;
    bool onGrid = i % pm == 0;
    long k = i / pm;
    if (i == 0 || i == q) closed = 1;
    else if (onGrid) closed = modp2((k % 2 ? -1 : 1) * pFact);
    const std::string tag = "binom(" + std::to_string(q) + "," + pad(i, 3) + ")";
    rec.add(tag + " closed form", actual == closed, std::to_string(closed), std::to_string(actual));

    Integer exact = binomial(q, i) % Integer(p2);
    rec.add(tag + " exact residue", exact.get_si() == actual, exact.get_str(), std::to_string(actual), true);

    if (onGrid && i != 0 && i != q) {
      // binom(p^(m+1), k p^m) = (p/k) binom(p^(m+1)-1, k p^m - 1) = (-1)^(k+1) p / k mod p^2
      long u = long(invModP(modP(k, p), p));
      long corrected = modp2((k % 2 ? 1 : -1) * p * u);
      rec.add(tag + " corrected form (-1)^(k+1) p/k", actual == corrected, std::to_string(corrected), std::to_string(actual), true);
    }
  }
}

// ---------------------------------------------------------------- compd

void suiteCompd(const SuiteConfig& cfg, Recorder& rec) {
  const Level& lv = cfg.ctx.level;
  const int p = lv.p;
  const long q = lv.pm1(), pm = lv.pm();
  const int K = 20;
  GammaTower tower(DPElem::basis(lv, unit(lv, 0, q), onePoly(lv), int(K * q)));
  for (long k = 1; k <= K; ++k) {
    const std::string tag = "k=" + pad(k);
    Integer f = dpPowerFactor(k, p);
    rec.add(tag + " dpPowerFactor in 1+pZ", modP(f, p) == 1, "1 mod " + std::to_string(p), f.get_str());

    DPElem expected = DPElem::basis(lv, unit(lv, 0, k * q), PolyP::constant(p, lv.r, long(modP(f, p))), int(K * q));
    const DPElem& actual = tower.gamma(k);
    rec.add(tag + " gamma_k(tau^{p^(m+1)})", actual == expected, render(expected), render(actual));

    Tally braces;
    for (long t = 0; t < q; ++t) {
      const long qq = t / pm;
      Integer b = braceBinom(k * q, t, p, lv.m), target = binomial(k * p + qq, qq);
      braces.record(b == target && modP(b, p) == 1, [&] {
        return "t=" + std::to_string(t) + ": " + b.get_str() + " vs binom = " + target.get_str();
      });
    }
    braces.report(rec, tag + " brace(k p^(m+1), t) = binom(kp+q_t, q_t) in 1+pZ");
  }
}

// ---------------------------------------------------------------- ringlaws

void suiteRingLaws(const SuiteConfig& cfg, Recorder& rec) {
  const Level& lv = cfg.ctx.level;
  const int N = 200;
  Rng rng(cfg.seed);
  struct Sample {
    DiffOp P, Q, R;
    PolyP f;
  };
  std::vector<Sample> samples;
  for (int k = 0; k < N; ++k) {
    Sample s;
    s.P = randomOp(lv, rng, 2 * lv.pm1(), 3, 3);
    s.Q = randomOp(lv, rng, 2 * lv.pm1(), 3, 3);
    s.R = randomOp(lv, rng, 2 * lv.pm1(), 3, 3);
    s.f = randomPoly(lv, rng, 3, 4);
    samples.push_back(std::move(s));
  }
  std::vector<std::array<bool, 3>> ok(static_cast<std::size_t>(N));
  parallelFor(N, [&](int k) {
    const Sample& s = samples[std::size_t(k)];
    ok[std::size_t(k)][0] = (s.P * s.Q) * s.R == s.P * (s.Q * s.R);
    ok[std::size_t(k)][1] = applyOp(s.P * s.Q, s.f) == applyOp(s.P, applyOp(s.Q, s.f));
    ok[std::size_t(k)][2] = pairOp(s.P, taylor(s.f, lv, int(s.P.order()))) == applyOp(s.P, s.f);
  });
  const char* names[3] = {"associativity (PQ)R = P(QR)", "action applyOp(PQ, f) = P(Q(f))", "duality pairOp(P, taylor(f)) = P(f)"};
  for (int law = 0; law < 3; ++law) {
    Tally t;
    for (int k = 0; k < N; ++k) {
      const Sample& s = samples[std::size_t(k)];
      t.record(ok[std::size_t(k)][std::size_t(law)], [&] { return "P = " + render(s.P) + ", Q = " + render(s.Q) + ", R = " + render(s.R) + ", f = " + render(s.f); });
    }
    t.report(rec, names[law]);
  }
}

// ---------------------------------------------------------------- kaneda

void suiteKaneda(const SuiteConfig& cfg, Recorder& rec) {
  const Level& lv = cfg.ctx.level;
  const int p = lv.p;
  const ZOElem zero(lv), one = ZOElem::one(lv), theta = ZOElem::theta(lv, 0);
  if (lv.m == 0 && lv.r == 1) {
    const DiffOp d = DiffOp::partial(lv, 0, 1);
    for (int k = 0; k < p; ++k) {
      // [[0, theta I_k], [I_(p-k), 0]]
      Matrix<ZOElem> expected(p, p, zero);
      for (int a = 0; a < k; ++a) expected(a, p - k + a) = theta;
      for (int a = 0; a < p - k; ++a) expected(k + a, a) = one;
      rec.same("block form K(d^" + std::to_string(k) + ")", expected, kanedaMatrix(powOp(d, k)));
    }
    Matrix<ZOElem> expected(p, p, zero);
    for (int a = 0; a < p; ++a) expected(a, a) = theta;
    rec.same("block form K(d^p) = theta I_p", expected, kanedaMatrix(powOp(d, p)));
  } else {
    rec.skip("block form", "stated for m = 0, r = 1");
  }

  Rng rng(cfg.seed);
  const int N = 100;
  std::vector<std::pair<DiffOp, DiffOp>> pairs;
  for (int k = 0; k < N; ++k) {
    DiffOp P = randomOp(lv, rng, 2 * lv.pm1(), 3, 3);
    DiffOp Q = randomOp(lv, rng, 2 * lv.pm1(), 3, 3);
    pairs.emplace_back(std::move(P), std::move(Q));
  }
  std::vector<char> morph(static_cast<std::size_t>(N)), inj(static_cast<std::size_t>(N));
  parallelFor(N, [&](int k) {
    const auto& [P, Q] = pairs[std::size_t(k)];
    Matrix<ZOElem> KP = kanedaMatrix(P), KQ = kanedaMatrix(Q);
    morph[std::size_t(k)] = kanedaMatrix(P * Q) == KQ * KP;
    inj[std::size_t(k)] = P == Q || kanedaMatrix(P - Q) != Matrix<ZOElem>(KP.rows(), KP.cols(), zero);
  });
  Tally t, u;
  for (int k = 0; k < N; ++k) {
    const auto& [P, Q] = pairs[std::size_t(k)];
    auto describe = [&] { return "P = " + render(P) + ", Q = " + render(Q); };
    t.record(morph[std::size_t(k)], describe);
    u.record(inj[std::size_t(k)], describe);
  }
  t.report(rec, "anti-morphism K(PQ) = K(Q) K(P)");
  u.report(rec, "injective on the sample", true);
}

// ---------------------------------------------------------------- phi, phibar

void suitePhi(const SuiteConfig& cfg, Recorder& rec) {
  const Context& ctx = cfg.ctx;
  const Level& lv = ctx.level;
  const int p = lv.p;
  Rng rng(cfg.seed);
  const auto sample = liftingSample(cfg, "phi", 10, rng);

  if (lv.m == 0) {
    FrobData S = validated(standardLifting(lv), ctx);
    for (int i = 0; i < lv.r; ++i) {
      DiffOp expected = DiffOp::basis(lv, unit(lv, i, p), mono(lv, unit(lv, i, p - 1), -1));
      rec.same("std Phi(d" + std::to_string(i + 1) + ") = -t^(p-1) d<p>", expected, phi(DiffOp::partial(lv, i, 1), S));
    }
  } else {
    rec.skip("std Phi(d) = -t^(p-1) d<p>", "stated for m = 0");
  }

  for (const auto& [name, L] : sample) {
    if (lv.m >= 1) {
      Tally t;
      forEachTotalDegreeLeq(lv.r, lv.pm() - 1, [&](const MultiIndex& n) {
        if (n.isZero()) return;
        ZOElem img = L.phiBasis(n);
        t.record(img.isZero(), [&] { return "n = " + n.str() + ": " + render(img); });
      });
      t.report(rec, "[" + name + "] Phi(d<n>) = 0 for 0 < |n| < p^m");
    }
    for (int i = 0; i < lv.r; ++i) {
      ZOElem expected(lv);
      expected.addTerm(unit(lv, i), mono(lv, unit(lv, i, (p - 1) * lv.pm()), -1));
      for (int j = 0; j < lv.r; ++j)
        expected.addTerm(unit(lv, j), -L.g()[std::size_t(j)].derivative(i).pow(lv.pm()));
      ZOElem actual = thetaPart(phiZO(DiffOp::partial(lv, i, lv.pm()), L), 1);
      rec.same("[" + name + "] theta-degree-1 part of Phi(d" + std::to_string(i + 1) + "<p^m>)", expected, actual);
    }
    DiffOp P = randomOp(lv, rng, lv.pm1(), 2, 3);
    PolyP f = randomPoly(lv, rng, 3, 3);
    rec.same("[" + name + "] O_X-linearity Phi(fP) = f Phi(P)", phi(P, L).leftMul(f), phi(P.leftMul(f), L), true);
  }
}

void suitePhibar(const SuiteConfig& cfg, Recorder& rec) {
  const Level& lv = cfg.ctx.level;
  Rng rng(cfg.seed);
  const auto sample = liftingSample(cfg, "phibar", 10, rng);
  for (const auto& [name, L] : sample)
    for (int i = 0; i < lv.r; ++i) {
      ZOElem expected = ZOElem::theta(lv, i) + powZO(L.phiBasis(unit(lv, i, lv.pm())), lv.p);
      rec.same("[" + name + "] Phi(theta" + std::to_string(i + 1) + ") = theta + Phi(d<p^m>)^p", expected, L.phiTheta(i));
    }
}

// ---------------------------------------------------------------- bullet

void suiteBullet(const SuiteConfig& cfg, Recorder& rec) {
  const Context& ctx = cfg.ctx;
  const Level& lv = ctx.level;
  const int p = lv.p;
  Rng rng(cfg.seed);
  const auto sample = liftingSample(cfg, "bullet", 10, rng);
  const DiffOp d = DiffOp::partial(lv, 0, 1);

  if (lv.m == 0) {
    FrobData S = validated(standardLifting(lv), ctx);
    for (int k = 1; k <= 2 * p; ++k) {
      ZOElem expected = ZOElem::fromPoly(lv, mono(lv, unit(lv, 0, k - 1), k));
      expected.addTerm(unit(lv, 0), mono(lv, unit(lv, 0, p + k - 1), -1));
      ZOElem actual = bullet(d, ZOElem::fromPoly(lv, mono(lv, unit(lv, 0, k))), S);
      rec.same("std d . t^" + pad(k) + " = (k - t^p theta) t^(k-1)", expected, actual);
    }
    if (lv.r == 1) {
      const ZOElem zero(lv, VarFamily::tprime);
      Matrix<ZOElem> expected(p, p, zero);
      for (int b = 1; b < p; ++b) {
        ZOElem e = ZOElem::fromPoly(lv, PolyP::constant(p, 1, b, VarFamily::tprime));
        e.addTerm(unit(lv, 0), mono(lv, unit(lv, 0), -1, VarFamily::tprime));
        expected(b - 1, b) = e;
      }
      ZOElem corner(lv, VarFamily::tprime);
      corner.addTerm(unit(lv, 0), PolyP::constant(p, 1, p - 1, VarFamily::tprime));
      expected(p - 1, 0) = corner;
      rec.same("std bullet matrix of d", expected, bulletMatrix(d, S));
    } else {
      rec.skip("std bullet matrix of d", "displayed for r = 1");
    }
    if (p == 2) {
      const DiffOp d3 = DiffOp::partial(lv, 0, 3), d2 = DiffOp::partial(lv, 0, 2);
      for (int e = 1; e <= 3; ++e) {
        PolyP f = mono(lv, unit(lv, 0, e));
        ZOElem expected = ZOElem::fromPoly(lv, applyOp(d, f)) * phiZO(d2, S) + ZOElem::fromPoly(lv, f) * phiZO(d3, S);
        rec.same("std p=2 d^3 . t^" + std::to_string(e) + " = d(f) Phi(d^2) + f Phi(d^3)", expected, bullet(d3, ZOElem::fromPoly(lv, f), S));
      }
    }
    ZOElem th = ZOElem::theta(lv, 0);
    ZOElem img = S.phiTheta(0);
    rec.add("std theta . 1 = Phi(theta) differs from theta", img != th, "!= " + render(th), render(img), true);
  } else {
    rec.skip("std d . t^k", "stated for m = 0");
  }

  for (const auto& [name, L] : sample) {
    Tally low;
    for (int k = 0; k < 5; ++k) {
      // The formula concerns d<n> with n != 0; at n = 0 it would count f twice.
      DiffOp P(lv), raw = randomOp(lv, rng, lv.pm(), 3, 3);
      for (const auto& [k, c] : raw.terms())
        if (!k.isZero()) P.addTerm(k, c);
      PolyP f = randomPoly(lv, rng, 3, 3);
      ZOElem lhs = bullet(P, ZOElem::fromPoly(lv, f), L);
      ZOElem rhs = ZOElem::fromPoly(lv, applyOp(P, f)) + ZOElem::fromPoly(lv, f) * phiZO(P, L);
      low.record(lhs == rhs, [&] { return "P = " + render(P) + ", f = " + render(f); });
    }
    low.report(rec, "[" + name + "] P . f = P(f) + f Phi(P) for order <= p^m");
  }

  for (std::size_t s = 0; s < std::min<std::size_t>(3, sample.size()); ++s) {
    const auto& [name, L] = sample[s];
    Tally mod;
    for (int k = 0; k < 10; ++k) {
      DiffOp P = randomOp(lv, rng, lv.pm1(), 2, 2), Q = randomOp(lv, rng, lv.pm1(), 2, 2);
      ZOElem z = randomZO(lv, rng, 1, 2, 2);
      mod.record(bullet(P * Q, z, L) == bullet(P, bullet(Q, z, L), L),
                 [&] { return "P = " + render(P) + ", Q = " + render(Q) + ", z = " + render(z); });
    }
    mod.report(rec, "[" + name + "] module law (PQ) . z = P . (Q . z)");
  }
}

// ---------------------------------------------------------------- vanderput

void suiteVanDerPut(const SuiteConfig& cfg, Recorder& rec) {
  const Context& ctx = cfg.ctx;
  const Level& lv = ctx.level;
  const int p = lv.p, N = ctx.thetaTrunc;
  if (lv.m != 0) {
    rec.skip("van der Put element", "stated for m = 0");
    return;
  }
  FrobData S = validated(standardLifting(lv), ctx);
  DiffOp Hexp(lv), invExp(lv);
  for (int k = 1; k <= N; ++k) {
    const long pk = ipow(p, k);
    Hexp.addTerm(unit(lv, 0, pk), mono(lv, unit(lv, 0, pk - 1), -1));
    invExp.addTerm(unit(lv, 0, pk), mono(lv, unit(lv, 0, p * (ipow(p, k - 1) - 1))));
  }
  const ZOElem H = phiTilde(DiffOp::partial(lv, 0, 1), N, S);
  rec.same("H = Phi~(d) = -sum t^(p^k-1) d<p^k>", Hexp, toDiffOp(H));
  rec.same("Phi^-1(d<p>) = sum t^(p(p^(k-1)-1)) d<p^k>", invExp, phiCenterInv(DiffOp::partial(lv, 0, p), N, S));

  const DiffOp dpm1 = powOp(DiffOp::partial(lv, 0, 1), p - 1);
  ZOElem lhs(lv);
  for (const auto& [c, f] : H.terms()) lhs.addTerm(c, applyOp(dpm1, f));
  lhs = (lhs + powZO(H, p)).truncatedFrobenius(N);
  rec.same("d^(p-1)(H) + H^p = d<p>", ZOElem::theta(lv, 0), lhs);
}

// ---------------------------------------------------------------- glue

void suiteGlue(const SuiteConfig& cfg, Recorder& rec) {
  const Context& ctx = cfg.ctx;
  const Level& lv = ctx.level;
  Rng rng(cfg.seed);
  std::vector<Lifting> lifts = {requireLifting(cfg, "glue")};
  while (lifts.size() < 3) {
    Lifting L = randomStrongLifting(lv, rng, 3);
    if (std::none_of(lifts.begin(), lifts.end(), [&](const Lifting& o) { return sameLifting(o, L); })) lifts.push_back(L);
  }
  std::vector<FrobData> F;
  for (const auto& L : lifts) F.push_back(validated(L, ctx));
  auto u12 = glueDerivation(F[0], F[1]), u23 = glueDerivation(F[1], F[2]), u13 = glueDerivation(F[0], F[2]);
  std::vector<PolyP> sum;
  for (int j = 0; j < lv.r; ++j) sum.push_back(u12[std::size_t(j)] + u23[std::size_t(j)]);
  rec.same("cocycle u13 = u12 + u23", u13, sum);

  const int N = ctx.thetaTrunc;
  GlueAuto a12 = glueAuto(lv, u12, N), a23 = glueAuto(lv, u23, N), a13 = glueAuto(lv, u13, N);
  Tally t;
  forEachTotalDegreeLeq(lv.r, N, [&](const MultiIndex& c) {
    ZOElem x(lv);
    x.addTerm(c, onePoly(lv));
    ZOElem lhs = a12.apply(a23.apply(x)), rhs = a13.apply(x);
    t.record(lhs == rhs, [&] { return "w^" + c.str() + ": " + render(lhs, "w") + " vs " + render(rhs, "w"); });
  });
  t.report(rec, "phi12 phi23 = phi13 on monomials of degree <= " + std::to_string(N));
  rec.add("u12 nonzero for distinct liftings", std::any_of(u12.begin(), u12.end(), [](const PolyP& f) { return !f.isZero(); }),
          "!= 0", txt(u12), true);
}

// ---------------------------------------------------------------- descent

// Fraction-free elimination over F_p[t'] (one variable).
PolyP divideExact(PolyP a, const PolyP& b) {
  PolyP q(a.p(), 1, a.family());
  const auto& [bl, bc] = *b.terms().rbegin();
  const Fp binv = invModP(bc, a.p());
  while (!a.isZero()) {
    const auto [al, ac] = *a.terms().rbegin();
    if (al[0] < bl[0]) throw Error(ErrorCode::InvalidInput, "inexact polynomial division");
    MultiIndex e = al - bl;
    Fp c = mulP(ac, binv, a.p());
    q.addTerm(e, c);
    a -= b.mulMonomial(e, c);
  }
  return q;
}

PolyP determinant(std::vector<std::vector<PolyP>> M, int p) {
  const int n = int(M.size());
  PolyP prev = PolyP::constant(p, 1, 1, VarFamily::tprime);
  bool negate = false;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    while (piv < n && M[piv][k].isZero()) ++piv;
    if (piv == n) return PolyP(p, 1, VarFamily::tprime);
    if (piv != k) {
      std::swap(M[piv], M[k]);
      negate = !negate;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) M[i][j] = divideExact(M[i][j] * M[k][k] - M[i][k] * M[k][j], prev);
      M[i][k] = PolyP(p, 1, VarFamily::tprime);
    }
    prev = M[k][k];
  }
  return negate ? -M[n - 1][n - 1] : M[n - 1][n - 1];
}

void suiteDescent(const SuiteConfig& cfg, Recorder& rec) {
  const Context& ctx = cfg.ctx;
  const Level& lv = ctx.level;
  const int p = lv.p, s = 1;
  if (lv.m + s > 3) {
    rec.skip("descent", "level m+1 exceeds the supported range");
    return;
  }
  const Context up = Context::make(p, lv.m + s, lv.r, 0, ctx.thetaTrunc);
  const Level& lu = up.level;

  for (int i = 0; i < lv.r; ++i)
    for (int l = 0; l <= lv.m; ++l) {
      DiffOp gen = DiffOp::partial(lv, i, ipow(p, l));
      DescendedOp expected{lv, s, {}};
      expected.addTerm(unit(lv, i, ipow(p, l)), onePoly(lv));
      const std::string tag = "d" + std::to_string(i + 1) + "^[" + std::to_string(ipow(p, l)) + "]";
      rec.same("frobDescend(levelRaise(" + tag + ")) = " + tag, expected, frobDescend(levelRaise(gen, s), s));

      DescendedOp corrected = frobDescend(DiffOp::partial(lu, i, ipow(p, l + s)), s);
      rec.same("frobDescend(d" + std::to_string(i + 1) + "^[p^(l+s)]) = " + tag, expected, corrected, true);
    }
  for (int i = 0; i < lv.r; ++i)
    rec.add("levelRaise(theta" + std::to_string(i + 1) + ") = 0", levelRaise(DiffOp::partial(lv, i, lv.pm1()), s).isZero(), "0",
            render(levelRaise(DiffOp::partial(lv, i, lv.pm1()), s)), true);

  // Compatible standard liftings: t -> t^(p^(m+2)) on X and u -> u^(p^(m+1)) on X^(1).
  FrobData Lu = validated(standardLifting(lv), ctx);
  FrobData LX = validated(frobeniusTwistLifting(standardLifting(lv), s), up);
  Tally square;
  forEachTotalDegreeLeq(lv.r, 4, [&](const MultiIndex& k) {
    DiffOp b = DiffOp::basis(lu, k);
    DescendedOp lhs = frobDescend(phi(b, LX), s), rhs = phiDescended(frobDescend(b, s), Lu);
    square.record(lhs == rhs, [&] { return "k = " + k.str() + ": " + render(lhs) + " vs " + render(rhs); });
  });
  square.report(rec, "Phi-compatibility square on d<k>, |k| <= 4");

  Rng rng(cfg.seed);
  Tally ring;
  for (int k = 0; k < 10; ++k) {
    ZOElem a = randomZO(lu, rng, 1, 2, 2), b = randomZO(lu, rng, 1, 2, 2);
    DescendedOp lhs = frobDescend(toDiffOp(a * b), s);
    DescendedOp rhs = descendedCentralProduct(frobDescend(toDiffOp(a), s), frobDescend(toDiffOp(b), s));
    ring.record(lhs == rhs, [&] { return "a = " + render(a) + ", b = " + render(b); });
  }
  ring.report(rec, "frobDescend is multiplicative on centralizers", true);

  const long q = lv.pm1();
  if (lv.r != 1) {
    rec.skip("End_O_X'(O_X) = D^(m+1) of order < p^(m+1)", "dimension count stated for r = 1");
  } else if (q > 5) {
    rec.skip("End_O_X'(O_X) = D^(m+1) of order < p^(m+1)", "determinant too large for the desk check");
  } else {
    std::vector<std::vector<PolyP>> rows;
    for (long a = 0; a < q; ++a)
      for (long k = 0; k < q; ++k) {
        DiffOp op = DiffOp::basis(lu, unit(lu, 0, k), mono(lu, unit(lu, 0, a)));
        Matrix<PolyP> M = quotientMatrix(op, lv.m + 1);
        std::vector<PolyP> flat;
        for (int x = 0; x < M.rows(); ++x)
          for (int y = 0; y < M.cols(); ++y) flat.push_back(M(x, y));
        rows.push_back(std::move(flat));
      }
    const long dim = long(rows.size()), target = ipow(p, int(2 * (lv.m + 1) * lv.r));
    PolyP det = determinant(rows, p);
    const bool unitDet = !det.isZero() && det.totalDegree() == 0;
    rec.add("End_O_X'(O_X) = D^(m+1) of order < p^(m+1)", dim == target && unitDet,
            std::to_string(target) + " basis operators, unit determinant",
            std::to_string(dim) + " basis operators, determinant " + render(det));
  }
}

// ---------------------------------------------------------------- simpson

void suiteSimpson(const SuiteConfig& cfg, Recorder& rec) {
  const Context& ctx = cfg.ctx;
  const Level& lv = ctx.level;
  const FrobData L = validated(requireLifting(cfg, "simpson"), ctx);
  const int D = ctx.degBound;
  Rng rng(cfg.seed);

  std::vector<std::pair<std::string, HiggsModule>> corpus;
  corpus.emplace_back("example", nilpotentExample(lv));
  for (int k = 1; k <= 20; ++k) corpus.emplace_back("rand" + pad(k), randomHiggs(lv, rng, 3));
  const bool variants = lv.m == 0 && (lv.p == 2 || lv.p == 3);
  const std::size_t constantCount = corpus.size();
  if (variants)
    for (int k = 1; k <= 5; ++k) corpus.emplace_back("varying" + pad(k), randomHiggs(lv, rng, 3, 1));
  {
    HiggsModule zero{lv, 1, std::vector<PolyMatrix>(std::size_t(lv.r), zeroMatrix(lv, 1, VarFamily::tprime))};
    corpus.emplace_back("zero", zero);
  }

  struct Outcome {
    RoundTripReport literal, twisted;
    bool qnAgree = false, curvatureOk = false;
    std::string qn;
  };
  std::vector<Outcome> out(corpus.size());
  parallelFor(int(corpus.size()), [&](int idx) {
    const HiggsModule& F = corpus[std::size_t(idx)].second;
    Outcome& o = out[std::size_t(idx)];
    o.literal = roundTrip(F, L, D, InvariantMode::literal);
    o.twisted = roundTrip(F, L, D, InvariantMode::twisted);
    DModule E = pullback(F, L);
    const int bound = F.n + 1;
    int a = qnThetaPower(E, bound), b = qnPartialVanishing(E, bound), c = qnKAdic(E, bound);
    o.qnAgree = (a >= 0) == (b >= 0) && (b >= 0) == (c >= 0);
    o.qn = std::to_string(a) + "/" + std::to_string(b) + "/" + std::to_string(c);
    auto T = curvatureOf(E);
    bool ok = nilpotencyIndex(T, E.n, E.n + 1) >= 0 && nilpotencyIndex(T, E.n, E.n + 1) <= nilpotencyIndex(F.A, F.n, F.n + 1);
    for (std::size_t i = 0; i < T.size(); ++i)
      for (std::size_t j = i + 1; j < T.size(); ++j) ok = ok && T[i] * T[j] == T[j] * T[i];
    o.curvatureOk = ok;
  });

  auto describe = [](const RoundTripReport& r) {
    std::string s = std::string(r.pullbackValid ? "" : "pullback invalid; ") + "1(x)s invariant " +
                    (r.basisInvariant ? "yes" : "no") + ", dim " + std::to_string(r.dimension) + "/" +
                    std::to_string(r.expectedDimension) + ", rank " + std::to_string(r.rank) + ", stabilized " +
                    (r.stabilized ? "yes" : "no") + ", higgs read off 1(x)e_k " + (r.higgsMatches ? "matches" : "differs");
    return s;
  };
  for (std::size_t idx = 0; idx < corpus.size(); ++idx) {
    const auto& [name, F] = corpus[idx];
    const Outcome& o = out[idx];
    const bool primary = idx < constantCount && name != "zero";
    const std::string tag = "[" + name + " n=" + std::to_string(F.n) + "] ";
    const std::string want = "dim " + std::to_string(o.literal.expectedDimension) + ", rank " + std::to_string(F.n);
    rec.add(tag + "round trip, Phi(P)(s) = P(s)", o.literal.pass(), want, describe(o.literal), !primary);
    rec.add(tag + "round trip, Phi~(P)(s) = P(s)", o.twisted.pass(), want, describe(o.twisted), true);
    rec.add(tag + "quasi-nilpotence criteria agree", o.qnAgree, "all finite", o.qn, true);
    rec.add(tag + "curvature commutes, nilpotent within the Higgs index", o.curvatureOk, "yes", o.curvatureOk ? "yes" : "no", true);
  }

  if (lv.m == 0 && sameLifting(L.lifting(), standardLifting(lv))) {
    HiggsModule F = nilpotentExample(lv);
    rec.same("[example] curvature equals A", pullbackEntries(F.A[0], lv), curvatureOf(pullback(F, L))[0], true);
  }
}

// ---------------------------------------------------------------- ov-compare

void suiteOV(const SuiteConfig& cfg, Recorder& rec) {
  const Level& lv = cfg.ctx.level;
  if (lv.m != 0) {
    rec.skip("Ogus-Vologodsky comparison", "stated for m = 0");
    return;
  }
  Rng rng(cfg.seed);
  const auto sample = liftingSample(cfg, "ov-compare", 10, rng);
  std::vector<HiggsModule> modules = {nilpotentExample(lv)};
  for (int k = 0; k < 3; ++k) modules.push_back(randomHiggs(lv, rng, 3));
  for (const auto& [name, L] : sample) {
    Tally t;
    for (std::size_t k = 0; k < modules.size(); ++k) {
      const HiggsModule& F = modules[k];
      auto conn = ovConnection(F, L);
      DModule E = pullback(F, L);
      for (int j = 0; j < lv.r; ++j)
        t.record(conn[std::size_t(j)] == E.M[std::size_t(j)][0], [&] {
          return "module " + std::to_string(k) + ", d" + std::to_string(j + 1) + ": " + renderMatrix(conn[std::size_t(j)]) +
                 " vs " + renderMatrix(E.M[std::size_t(j)][0]);
        });
    }
    t.report(rec, "[" + name + "] zeta reproduces the pullback connection");

    auto Z = ovCartierSplit(L);
    Tally w;
    for (int i = 0; i < lv.r; ++i)
      for (int j = 0; j < lv.r; ++j) {
        PolyP lin = L.w()[std::size_t(i)].coeff(unit(lv, j));
        w.record(lin == Z[std::size_t(i)][std::size_t(j)], [&] { return render(lin) + " vs " + render(Z[std::size_t(i)][std::size_t(j)]); });
      }
    w.report(rec, "[" + name + "] zeta is the linear part of the divided Frobenius", true);
  }
}

using SuiteFn = void (*)(const SuiteConfig&, Recorder&);

SuiteFn lookup(const std::string& name) {
  if (name == "lucas") return suiteLucas;
  if (name == "compd") return suiteCompd;
  if (name == "ringlaws") return suiteRingLaws;
  if (name == "kaneda") return suiteKaneda;
  if (name == "phi") return suitePhi;
  if (name == "phibar") return suitePhibar;
  if (name == "bullet") return suiteBullet;
  if (name == "vanderput") return suiteVanDerPut;
  if (name == "glue") return suiteGlue;
  if (name == "descent") return suiteDescent;
  if (name == "simpson") return suiteSimpson;
  if (name == "ov-compare") return suiteOV;
  return nullptr;
}

}  // namespace

SuiteReport runSuite(const std::string& name, const SuiteConfig& cfg) {
  std::vector<std::string> names;
  if (name == "all") names = suiteNames();
  else if (lookup(name)) names = {name};
  else throw Error(ErrorCode::UnknownSuite, "unknown suite '" + name + "'");

  auto start = std::chrono::steady_clock::now();
  SuiteReport rep{name, cfg, {}, 0};
  for (const auto& n : names) {
    std::vector<SuiteCase> cases;
    Recorder rec(cases);
    lookup(n)(cfg, rec);
    for (auto& c : cases) {
      if (names.size() > 1) c.name = n + "/" + c.name;
      rep.cases.push_back(std::move(c));
    }
  }
  std::stable_sort(rep.cases.begin(), rep.cases.end(), [](const SuiteCase& a, const SuiteCase& b) { return a.name < b.name; });
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

Json reportToJson(const SuiteReport& r, bool timing) {
  const Context& c = r.config.ctx;
  Json j;
  j["suite"] = r.suite;
  j["context"] = {{"p", c.level.p}, {"m", c.level.m}, {"r", c.level.r}, {"tauTrunc", c.tauTrunc}, {"thetaTrunc", c.thetaTrunc}, {"degBound", c.degBound}};
  j["lift"] = r.config.liftLabel;
  j["seed"] = r.config.seed;
  Json cases = Json::array();
  for (const auto& k : r.cases)
    cases.push_back({{"name", k.name}, {"status", statusName(k.status)}, {"expected", k.expected}, {"actual", k.actual}, {"supplementary", k.supplementary}});
  j["cases"] = cases;
  j["summary"] = {{"pass", r.count(CaseStatus::pass)}, {"fail", r.count(CaseStatus::fail)}, {"skipped", r.count(CaseStatus::skipped)}};
  j["status"] = r.passed() ? "pass" : "fail";
  if (timing) j["wallTime"] = r.seconds;
  return j;
}

}  // namespace adiff
