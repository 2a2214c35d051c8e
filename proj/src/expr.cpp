#include "adiff/expr.hpp"

#include <cctype>
#include <vector>

namespace adiff {

long symmetricResidue(Fp c, int p) {
  long x = long(c % Fp(p));
  return x > p / 2 ? x - p : x;
}

namespace {

std::string monomialText(const MultiIndex& e, const char* var, bool prime) {
  std::string s;
  for (int i = 0; i < e.size(); ++i) {
    if (!e[i]) continue;
    if (!s.empty()) s += "*";
    s += var + std::to_string(i + 1);
    if (prime) s += "'";
    if (e[i] != 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

std::string partialText(const MultiIndex& k) {
  std::string s;
  for (int i = 0; i < k.size(); ++i) {
    if (!k[i]) continue;
    if (!s.empty()) s += "*";
    s += "d" + std::to_string(i + 1);
    if (k[i] != 1) s += "<" + std::to_string(k[i]) + ">";
  }
  return s;
}

struct Piece {
  long c;
  std::string body;
};

void appendPieces(std::vector<Piece>& out, const PolyP& f, const std::string& tail) {
  const bool prime = f.family() == VarFamily::tprime;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    std::string mono = monomialText(it->first, "t", prime);
    std::string body = mono;
    if (!tail.empty()) body = body.empty() ? tail : body + "*" + tail;
    out.push_back({symmetricResidue(it->second, f.p()), body});
  }
}

std::string join(const std::vector<Piece>& pieces) {
  if (pieces.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    long c = pieces[i].c;
    const bool neg = c < 0;
    if (neg) c = -c;
    if (i == 0) s += neg ? "-" : "";
    else s += neg ? " - " : " + ";
    if (pieces[i].body.empty()) s += std::to_string(c);
    else if (c == 1) s += pieces[i].body;
    else s += std::to_string(c) + "*" + pieces[i].body;
  }
  return s;
}

template <class Terms, class Tail>
std::string renderGraded(const Terms& terms, Tail tail) {
  std::vector<Piece> pieces;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) appendPieces(pieces, it->second, tail(it->first));
  return join(pieces);
}

}  // namespace

std::string render(const PolyP& f) {
  std::vector<Piece> pieces;
  appendPieces(pieces, f, "");
  return join(pieces);
}

std::string render(const DiffOp& P) { return renderGraded(P.terms(), partialText); }

std::string render(const ZOElem& z, const char* var) {
  return renderGraded(z.terms(), [var](const MultiIndex& c) { return monomialText(c, var, false); });
}

std::string render(const DPElem& w) {
  std::string s = renderGraded(w.terms(), [](const MultiIndex& s) {
    std::string out;
    for (int i = 0; i < s.size(); ++i) {
      if (!s[i]) continue;
      if (!out.empty()) out += "*";
      out += "tau" + std::to_string(i + 1) + "^{" + std::to_string(s[i]) + "}";
    }
    return out;
  });
  if (w.truncated()) s += " + O(tau^" + std::to_string(w.trunc() + 1) + ")";
  return s;
}

std::string render(const DescendedOp& D) {
  return renderGraded(D.terms, [](const MultiIndex& k) {
    std::string s;
    for (int i = 0; i < k.size(); ++i) {
      if (!k[i]) continue;
      if (!s.empty()) s += "*";
      s += "du" + std::to_string(i + 1);
      if (k[i] != 1) s += "<" + std::to_string(k[i]) + ">";
    }
    return s;
  });
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
 public:
  Parser(const std::string& s, const Level& lv) : s_(s), lv_(lv) {}

  DiffOp parse() {
    DiffOp r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::SyntaxError, "syntax error at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  long natural() {
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected a number");
    long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_++] - '0');
      if (v > 1000000000L) fail("number too large");
    }
    return v;
  }

  int index() {
    std::size_t at = pos_;
    long i = natural();
    if (i < 1 || i > lv_.r)
      throw Error(ErrorCode::IndexOutOfRange, "variable index " + std::to_string(i) + " at offset " + std::to_string(at) +
                                                  " outside 1.." + std::to_string(lv_.r));
    return int(i - 1);
  }

  DiffOp expr() {
    DiffOp r(lv_);
    bool neg = accept('-');
    r = neg ? -term() : term();
    while (true) {
      if (accept('+')) r += term();
      else if (accept('-')) r -= term();
      else return r;
    }
  }

  DiffOp term() {
    DiffOp r = atom();
    while (accept('*')) r = r * atom();
    return r;
  }

  DiffOp atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long v = natural();
      return DiffOp::fromPoly(lv_, PolyP::constant(lv_.p, lv_.r, v % lv_.p));
    }
    if (c == 't') {
      ++pos_;
      int i = index();
      long e = accept('^') ? natural() : 1;
      return DiffOp::fromPoly(lv_, PolyP::monomial(lv_.p, MultiIndex::unit(lv_.r, i, int(e))));
    }
    if (c == 'd') {
      ++pos_;
      int i = index();
      long k = 1;
      if (accept('<')) {
        k = natural();
        if (!accept('>')) fail("expected '>'");
      }
      return DiffOp::partial(lv_, i, k);
    }
    if (c == '(') {
      ++pos_;
      DiffOp r = expr();
      if (!accept(')')) fail("expected ')'");
      if (accept('^')) r = powOp(r, natural());
      return r;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  const Level lv_;
  std::size_t pos_ = 0;
};

}  // namespace

DiffOp parseExpr(const std::string& text, const Level& lv) { return Parser(text, lv).parse(); }

}  // namespace adiff
