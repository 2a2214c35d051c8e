#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "adiff/expr.hpp"
#include "adiff/suites.hpp"

using namespace adiff;

namespace {

struct Options {
  int p = 2, m = 0, r = 1;
  int tauTrunc = 0, thetaTrunc = 0, degBound = 0;
  std::string lift = "std";
  std::string module;
  std::string mode = "literal";
  std::string suite = "all";
  std::uint64_t seed = 1;
  bool json = false;
  bool timing = false;
  std::vector<std::string> args;
};

Json readJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidInput, path + ": " + e.what());
  }
}

void requireLevel(const Level& got, const Level& want, const std::string& what) {
  if (got != want)
    throw Error(ErrorCode::LevelMismatch, what + " is at (p,m,r) = (" + std::to_string(got.p) + "," + std::to_string(got.m) + "," +
                                              std::to_string(got.r) + "), flags give (" + std::to_string(want.p) + "," +
                                              std::to_string(want.m) + "," + std::to_string(want.r) + ")");
}

std::optional<Lifting> loadLifting(const Options& o, const Level& lv) {
  if (o.lift == "none") return std::nullopt;
  if (o.lift == "std") return standardLifting(lv);
  Lifting L = liftingFromJson(readJson(o.lift));
  requireLevel(L.lv, lv, "lifting '" + o.lift + "'");
  return L;
}

FrobData frob(const Options& o, const Context& ctx) {
  auto L = loadLifting(o, ctx.level);
  if (!L) throw Error(ErrorCode::InvalidInput, "this command needs a lifting (--lift)");
  return FrobData::validate(*L, ctx);
}

// Accepts either corpus kind; a Higgs module is pulled back along the lifting.
DModule loadDModule(const Options& o, const FrobData& L) {
  if (o.module.empty()) throw Error(ErrorCode::InvalidInput, "--module is required");
  Json j = readJson(o.module);
  if (j.value("kind", "") == "higgs") {
    HiggsModule F = higgsFromJson(j);
    requireLevel(F.lv, L.level(), "module");
    return pullback(F, L);
  }
  DModule E = dmoduleFromJson(j);
  requireLevel(E.lv, L.level(), "module");
  return E;
}

HiggsModule loadHiggs(const Options& o, const Level& lv) {
  if (o.module.empty()) throw Error(ErrorCode::InvalidInput, "--module is required");
  HiggsModule F = higgsFromJson(readJson(o.module));
  requireLevel(F.lv, lv, "module");
  return F;
}

InvariantMode parseMode(const std::string& s) {
  if (s == "literal") return InvariantMode::literal;
  if (s == "twisted") return InvariantMode::twisted;
  throw Error(ErrorCode::InvalidInput, "--mode must be literal or twisted");
}

const std::string& arg(const Options& o, std::size_t i) {
  if (o.args.size() <= i) throw Error(ErrorCode::InvalidInput, "expected " + std::to_string(i + 1) + " expression argument(s)");
  return o.args[i];
}

PolyP asPoly(const DiffOp& P) {
  if (P.order() > 0) throw Error(ErrorCode::InvalidInput, "expected a function, got " + render(P));
  return P.coeff(MultiIndex(P.level().r));
}

Json matricesJson(const std::vector<PolyMatrix>& mats) {
  Json out = Json::array();
  for (const auto& M : mats) {
    Json rows = Json::array();
    for (int i = 0; i < M.rows(); ++i) {
      Json row = Json::array();
      for (int j = 0; j < M.cols(); ++j) row.push_back(render(M(i, j)));
      rows.push_back(row);
    }
    out.push_back(rows);
  }
  return out;
}

void emit(const Options& o, const std::string& text, const Json& j) {
  if (o.json) std::cout << j.dump(2) << "\n";
  else std::cout << text << "\n";
}

int run(const std::string& cmd, const Options& o) {
  const Context ctx = Context::make(o.p, o.m, o.r, o.tauTrunc, o.thetaTrunc, o.degBound);
  const Level& lv = ctx.level;
  auto single = [&](const std::string& out) {
    emit(o, out, Json{{"result", out}});
    return 0;
  };

  if (cmd == "mul") return single(render(parseExpr(arg(o, 0), lv) * parseExpr(arg(o, 1), lv)));
  if (cmd == "apply") return single(render(applyOp(parseExpr(arg(o, 0), lv), asPoly(parseExpr(arg(o, 1), lv)))));
  if (cmd == "phi") return single(render(phi(parseExpr(arg(o, 0), lv), frob(o, ctx))));
  if (cmd == "phitilde") return single(render(toDiffOp(phiTilde(parseExpr(arg(o, 0), lv), ctx.thetaTrunc, frob(o, ctx)))));
  if (cmd == "bullet") {
    ZOElem z = toZO(parseExpr(o.args.size() > 1 ? o.args[1] : "1", lv));
    return single(render(toDiffOp(bullet(parseExpr(arg(o, 0), lv), z, frob(o, ctx)))));
  }
  if (cmd == "kaneda-matrix") {
    Matrix<ZOElem> K = kanedaMatrix(parseExpr(arg(o, 0), lv));
    Json rows = Json::array();
    for (int i = 0; i < K.rows(); ++i) {
      Json row = Json::array();
      for (int j = 0; j < K.cols(); ++j) row.push_back(render(K(i, j)));
      rows.push_back(row);
    }
    emit(o, renderMatrix(K), Json{{"result", rows}});
    return 0;
  }
  if (cmd == "curvature") {
    auto T = curvatureOf(loadDModule(o, frob(o, ctx)));
    std::ostringstream s;
    for (std::size_t i = 0; i < T.size(); ++i) s << (i ? "\n" : "") << "theta" << i + 1 << " = " << renderMatrix(T[i]);
    emit(o, s.str(), Json{{"curvature", matricesJson(T)}});
    return 0;
  }
  if (cmd == "pullback") {
    const FrobData L = frob(o, ctx);
    DModule E = pullback(loadHiggs(o, lv), L);
    std::ostringstream s;
    for (int i = 0; i < lv.r; ++i)
      for (int l = 0; l <= lv.m; ++l)
        s << (i || l ? "\n" : "") << "d" << i + 1 << "<" << ipow(lv.p, l) << "> = " << renderMatrix(E.M[std::size_t(i)][std::size_t(l)]);
    emit(o, s.str(), dmoduleToJson(E));
    return 0;
  }
  if (cmd == "invariants") {
    const FrobData L = frob(o, ctx);
    DModule E = loadDModule(o, L);
    InvariantsResult res = invariants(E, L, ctx.degBound, parseMode(o.mode));
    std::ostringstream s;
    s << "mode " << o.mode << "\ndegree bound " << res.at.degBound << ": dimension " << res.at.dimension << ", generators "
      << res.at.generatorRank << "\ndegree bound " << res.next.degBound << ": dimension " << res.next.dimension
      << "\nstabilized " << (res.stabilized ? "yes" : "no") << "\nhiggs " << (res.higgsRecovered ? "recovered" : "not recovered");
    if (res.higgsRecovered)
      for (std::size_t i = 0; i < res.higgs.A.size(); ++i) s << "\nA" << i + 1 << " = " << renderMatrix(res.higgs.A[i]);
    Json j{{"mode", o.mode},
           {"degBound", res.at.degBound},
           {"dimension", res.at.dimension},
           {"generatorRank", res.at.generatorRank},
           {"nextDimension", res.next.dimension},
           {"stabilized", res.stabilized},
           {"higgsRecovered", res.higgsRecovered}};
    if (res.higgsRecovered) j["higgs"] = higgsToJson(res.higgs);
    emit(o, s.str(), j);
    return res.stabilized && res.higgsRecovered ? 0 : 1;
  }
  if (cmd == "roundtrip") {
    const FrobData L = frob(o, ctx);
    RoundTripReport rep = roundTrip(loadHiggs(o, lv), L, ctx.degBound, parseMode(o.mode));
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    std::ostringstream s;
    s << "mode " << o.mode << "\npullback valid " << yn(rep.pullbackValid) << "\nbasis invariant " << yn(rep.basisInvariant)
      << "\ndimension " << rep.dimension << "/" << rep.expectedDimension << "\nrank " << rep.rank << "\nstabilized "
      << yn(rep.stabilized) << "\nhiggs read off 1(x)e_k matches " << yn(rep.higgsMatches) << "\n" << (rep.pass() ? "PASS" : "FAIL");
    if (!rep.message.empty()) s << " (" << rep.message << ")";
    Json j{{"mode", o.mode},
           {"pullbackValid", rep.pullbackValid},
           {"basisInvariant", rep.basisInvariant},
           {"dimension", rep.dimension},
           {"expectedDimension", rep.expectedDimension},
           {"rank", rep.rank},
           {"stabilized", rep.stabilized},
           {"higgsMatches", rep.higgsMatches},
           {"status", rep.pass() ? "pass" : "fail"}};
    emit(o, s.str(), j);
    return rep.pass() ? 0 : 1;
  }
  if (cmd == "verify") {
    SuiteConfig cfg{ctx, loadLifting(o, lv), o.lift, o.seed};
    SuiteReport rep = runSuite(o.suite, cfg);
    if (o.json) {
      std::cout << reportToJson(rep, o.timing).dump(2) << "\n";
    } else {
      for (const auto& c : rep.cases) {
        std::cout << statusName(c.status) << "  " << c.name;
        if (c.supplementary) std::cout << "  (supplementary)";
        if (c.status == CaseStatus::fail) std::cout << "\n    expected: " << c.expected << "\n    actual:   " << c.actual;
        if (c.status == CaseStatus::skipped) std::cout << "  [" << c.actual << "]";
        std::cout << "\n";
      }
      std::cout << rep.suite << ": " << rep.count(CaseStatus::pass) << " pass, " << rep.count(CaseStatus::fail) << " fail, "
                << rep.count(CaseStatus::skipped) << " skipped";
      if (o.timing) std::cout << " in " << rep.seconds << " s";
      std::cout << "\n" << (rep.passed() ? "PASS" : "FAIL") << "\n";
    }
    return rep.passed() ? 0 : 1;
  }
  throw Error(ErrorCode::InvalidInput, "unknown subcommand '" + cmd + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arithmetic differential operators of level m in characteristic p"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--p", o.p, "characteristic");
    sub->add_option("--m", o.m, "level");
    sub->add_option("--r", o.r, "number of coordinates");
    sub->add_option("--tau-trunc", o.tauTrunc, "divided-power truncation (0: default)");
    sub->add_option("--theta-trunc", o.thetaTrunc, "theta truncation (0: default)");
    sub->add_option("--deg-bound", o.degBound, "degree bound for invariants (0: default)");
    sub->add_option("--lift", o.lift, "lifting JSON file, 'std' or 'none'");
    sub->add_option("--seed", o.seed, "seed for random samples");
    sub->add_flag("--json", o.json, "machine-readable output");
  };
  struct Spec {
    const char* name;
    const char* help;
    int exprs;
  };
  const Spec specs[] = {{"mul", "product of two operators", 2},
                        {"apply", "apply an operator to a function", 2},
                        {"phi", "Frobenius Phi of an operator", 1},
                        {"phitilde", "twisted Frobenius, truncated at --theta-trunc", 1},
                        {"bullet", "P . z on the centralizer (z defaults to 1)", -1},
                        {"kaneda-matrix", "matrix of an operator over the center", 1},
                        {"curvature", "curvature matrices of a module", 0},
                        {"pullback", "D-module pulled back from a Higgs module", 0},
                        {"invariants", "invariant sections of a module", 0},
                        {"roundtrip", "Higgs -> D-module -> Higgs check", 0},
                        {"verify", "run a verification suite", 0}};
  for (const auto& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    common(sub);
    if (s.exprs != 0) sub->add_option("expr", o.args, "operator expressions")->expected(s.exprs > 0 ? s.exprs : 1, 2)->required();
    const std::string name = s.name;
    if (name == "curvature" || name == "pullback" || name == "invariants" || name == "roundtrip")
      sub->add_option("--module", o.module, "Higgs or D-module JSON file")->required();
    if (name == "invariants" || name == "roundtrip") sub->add_option("--mode", o.mode, "literal or twisted");
    if (name == "verify") {
      sub->add_option("--suite", o.suite, "suite name or 'all'");
      sub->add_flag("--timing", o.timing, "include wall time");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    return run(app.get_subcommands().front()->get_name(), o);
  } catch (const Error& e) {
    std::cerr << "error[" << errorName(e.code()) << "]: " << e.what() << "\n";
    return 2;
  }
}
