#pragma once

#include <tuple>
#include <vector>

#include "flg/formula.hpp"
#include "flg/templates.hpp"

// Formulas used by the round-trip checks: hand-written sentences in printed
// form plus every template family.
namespace corpus {

using namespace flg;

inline const char* const kHandwritten[] = {
    "1 = 1",
    "1 != 1",
    "x = 1",
    "x*y != y*x",
    "x' = y'",
    "<aB>' = <bA>",
    "Ax (x = x)",
    "Ex (x != 1)",
    "!(x = 1)",
    "!(x = 1 & y = 1)",
    "!Ax (x = 1)",
    "(x = 1 & y = 1)",
    "(x = 1 | y = 1 | z = 1)",
    "(x = 1 -> y = 1)",
    "((x = 1 | y = 1) & z = 1)",
    "((x = 1 -> y = 1) -> z = 1)",
    "(Ax (x = 1) | Ey (y != 1))",
    "Ax Ey (x*y = y*x)",
    "Ax (!(x = 1) -> Ey (y*y = x))",
    "Ex (x*<ab> = <ba>*x)",
    "Ay (y'*<a>*y != <b>)",
    "Ax Ay (x*y*x'*y' = 1 -> Ez (x = z*z | y = z*z))",
    "Au Av Ew (u*v = w & w*w != u)",
    "Ax (x = 1 | !(x*x = 1))",
    "Ex Ay (!(x*y = y*x) | y = 1)",
    "Ax Ey Az (x = y*z)",
    "Ex Ey Az (z*x = y*z)",
    "Ax1 Ax2 Ey ((x1 = 1 & x2 = 1) -> y = 1)",
};

inline std::vector<TemplateParams> templates() {
  const GroupContext f2(2);
  auto w = [&](const char* t) { return parse_word(t, f2); };
  std::vector<TemplateParams> out;
  for (int n = 2; n <= 5; ++n) out.emplace_back(PhiN{n});
  for (auto [p, k] : {std::pair<Integer, int>{2, 1}, {2, 2}, {3, 1}, {3, 2}, {5, 1}}) out.emplace_back(PsiPK{p, k});
  for (Integer p : {2, 3, 5}) out.emplace_back(PiP{p});
  for (auto [g, n, k] : {std::tuple{1, 1, 1}, {1, 2, 1}, {2, 3, 1}, {2, 2, 2}}) out.emplace_back(SigmaGNK{g, n, k});
  out.emplace_back(ConjPair{Presentation{2, {}}, w("a"), w("b")});
  out.emplace_back(ConjPair{Presentation{2, {w("abAB")}}, w("a"), w("b")});
  out.emplace_back(ConjPair{Presentation{2, {w("aa"), w("bbb")}}, w("ab"), w("ba")});
  return out;
}

// Every template sentence and dual, after the hand-written formulas.
inline std::vector<FormulaPtr> formulas() {
  std::vector<FormulaPtr> out;
  for (const char* t : kHandwritten) out.push_back(parse_formula(t));
  for (const auto& t : templates()) {
    const auto s = build_template(t);
    out.push_back(s.sentence);
    if (s.dual) out.push_back(s.dual);
  }
  return out;
}

}  // namespace corpus
