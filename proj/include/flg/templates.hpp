#pragma once

#include <variant>
#include <vector>

#include "flg/abelian.hpp"
#include "flg/formula.hpp"

namespace flg {

struct PhiN {
  int n = 2;
};

struct PsiPK {
  Integer p = 2;
  int k = 1;
};

struct PiP {
  Integer p = 2;
};

// z^n = [x_1, y_1]...[x_g, y_g] -> z = [u_1, w_1]...[u_k, w_k], closed by an outer Az.
struct SigmaGNK {
  int g = 1;
  int n = 1;
  int k = 1;
};

struct Presentation {
  int generators = 0;
  std::vector<Word> relators;
};

// Relators, U and W are words in the presentation's generators, which become
// the variables x1..xm.
struct ConjPair {
  Presentation presentation;
  Word u;
  Word w;
};

using TemplateParams = std::variant<PhiN, PsiPK, PiP, SigmaGNK, ConjPair>;

// Upper bound on p^k in psi; the disjunction has 1 + p^k members.
inline constexpr Integer kMaxPsiModulus = 1024;

struct TemplateSentences {
  FormulaPtr sentence;
  FormulaPtr dual;  // tau for ConjPair, null otherwise
};

TemplateSentences build_template(const TemplateParams& params);

std::string describe(const TemplateParams& params);

}  // namespace flg
