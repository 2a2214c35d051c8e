#pragma once

#include <string>

#include "adiff/dpalg.hpp"
#include "adiff/diffop.hpp"

namespace adiff {

// Coefficients print as symmetric residues, so 2 in F_3 prints as -1.
long symmetricResidue(Fp c, int p);

std::string render(const PolyP& f);
std::string render(const DiffOp& P);
std::string render(const ZOElem& z, const char* var = "theta");
std::string render(const DPElem& w);
std::string render(const DescendedOp& D);
template <class T>
std::string renderMatrix(const Matrix<T>& M) {
  std::string s = "[";
  for (int i = 0; i < M.rows(); ++i) {
    s += i ? ", [" : "[";
    for (int j = 0; j < M.cols(); ++j) s += (j ? ", " : "") + render(M(i, j));
    s += "]";
  }
  return s + "]";
}

// expr := ['-'] term (('+'|'-') term)*
// term := atom ('*' atom)*
// atom := int | 't'idx('^'nat)? | 'd'idx('<'nat'>')? | '(' expr ')' ('^'nat)?
// Throws SyntaxError (message carries the offset) or IndexOutOfRange.
DiffOp parseExpr(const std::string& text, const Level& lv);

}  // namespace adiff
