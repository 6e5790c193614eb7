#include "flg/templates.hpp"

namespace flg {

namespace {

FormulaPtr eq(Term a, Term b) { return Formula::atom(std::move(a), std::move(b), true); }
FormulaPtr ne(Term a, Term b) { return Formula::atom(std::move(a), std::move(b), false); }

FormulaPtr all(std::vector<FormulaPtr> ops) {
  return ops.size() == 1 ? ops.front() : Formula::compound(Connective::And, std::move(ops));
}

FormulaPtr any(std::vector<FormulaPtr> ops) {
  return ops.size() == 1 ? ops.front() : Formula::compound(Connective::Or, std::move(ops));
}

FormulaPtr implies(FormulaPtr a, FormulaPtr b) {
  return Formula::compound(Connective::Implies, {std::move(a), std::move(b)});
}

FormulaPtr close(const std::vector<std::pair<Quantifier, std::string>>& prefix, FormulaPtr body) {
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
    body = Formula::quantified(it->first, it->second, std::move(body));
  }
  return body;
}

Term one() { return Term{}; }

FormulaPtr commute(const Term& a, const Term& b) { return eq(a * b, b * a); }

std::string indexed(const char* name, int i) { return name + std::to_string(i); }

// Substitutes variable x_i for generator i.
Term word_term(const Word& w) {
  Term t;
  for (Letter l : w) t.factors.push_back(Factor::var(indexed("x", l > 0 ? l : -l), l < 0));
  return t;
}

Integer checked_power(Integer p, int k) {
  Integer q = 1;
  for (int i = 0; i < k; ++i) {
    if (q > kMaxPsiModulus / p) {
      throw Error(ErrorKind::InvalidParams,
                  "p^k exceeds " + std::to_string(kMaxPsiModulus) + " disjuncts");
    }
    q *= p;
  }
  return q;
}

FormulaPtr build_phi(const PhiN& t) {
  if (t.n < 2) throw Error(ErrorKind::InvalidParams, "phi_n needs n >= 2");
  if (t.n > 32) throw Error(ErrorKind::InvalidParams, "phi_n is limited to n <= 32");
  const Term x0 = var_term("x0"), x1 = var_term("x1"), x2 = var_term("x2"), y = var_term("y");
  std::vector<FormulaPtr> disjuncts;
  for (int i = 0; i < t.n; ++i) {
    for (int j = 0; j < t.n; ++j) {
      if (i == 0 && j == 0) continue;
      disjuncts.push_back(eq(power(x1, i) * power(x2, j), power(y, t.n)));
    }
  }
  FormulaPtr hyp = all({ne(x0, one()), commute(x0, x1), commute(x0, x2)});
  FormulaPtr concl = all({commute(x0, y), any(std::move(disjuncts))});
  return close({{Quantifier::ForAll, "x0"},
                {Quantifier::ForAll, "x1"},
                {Quantifier::ForAll, "x2"},
                {Quantifier::Exists, "y"}},
               implies(std::move(hyp), std::move(concl)));
}

FormulaPtr build_psi(const PsiPK& t) {
  if (!is_prime(t.p)) throw Error(ErrorKind::InvalidParams, "psi_{p,k} needs p prime");
  if (t.k < 1) throw Error(ErrorKind::InvalidParams, "psi_{p,k} needs k >= 1");
  const Integer q = checked_power(t.p, t.k);
  const Term x0 = var_term("x0"), x1 = var_term("x1"), y = var_term("y");
  std::vector<FormulaPtr> disjuncts{eq(x0, power(y, t.p))};
  for (Integer i = 0; i < q; ++i) disjuncts.push_back(eq(x1, power(x0, i) * power(y, q)));
  FormulaPtr hyp = all({ne(x0, one()), commute(x0, x1)});
  FormulaPtr concl = all({commute(x0, y), any(std::move(disjuncts))});
  return close({{Quantifier::ForAll, "x0"}, {Quantifier::ForAll, "x1"}, {Quantifier::Exists, "y"}},
               implies(std::move(hyp), std::move(concl)));
}

FormulaPtr build_pi(const PiP& t) {
  if (!is_prime(t.p)) throw Error(ErrorKind::InvalidParams, "pi_p needs p prime");
  if (t.p > kMaxPsiModulus) throw Error(ErrorKind::InvalidParams, "p is too large");
  const Term x = var_term("x"), y = var_term("y"), z = var_term("z");
  FormulaPtr concl = all({commute(x, y), ne(y, power(z, t.p))});
  return close({{Quantifier::ForAll, "x"}, {Quantifier::Exists, "y"}, {Quantifier::ForAll, "z"}},
               implies(ne(x, one()), std::move(concl)));
}

Term product_of_commutators(const char* a, const char* b, int count) {
  Term t;
  for (int i = 1; i <= count; ++i) t *= commutator(var_term(indexed(a, i)), var_term(indexed(b, i)));
  return t;
}

FormulaPtr build_sigma(const SigmaGNK& t) {
  if (t.g < 1 || t.n < 1 || t.k < 1) {
    throw Error(ErrorKind::InvalidParams, "sigma(g,n,k) needs g, n, k >= 1");
  }
  if (t.g > 16 || t.k > 16 || t.n > 64) {
    throw Error(ErrorKind::InvalidParams, "sigma(g,n,k) is limited to g, k <= 16 and n <= 64");
  }
  std::vector<std::pair<Quantifier, std::string>> prefix{{Quantifier::ForAll, "z"}};
  for (int i = 1; i <= t.g; ++i) prefix.emplace_back(Quantifier::ForAll, indexed("x", i));
  for (int i = 1; i <= t.g; ++i) prefix.emplace_back(Quantifier::ForAll, indexed("y", i));
  for (int i = 1; i <= t.k; ++i) prefix.emplace_back(Quantifier::Exists, indexed("u", i));
  for (int i = 1; i <= t.k; ++i) prefix.emplace_back(Quantifier::Exists, indexed("w", i));
  const Term z = var_term("z");
  return close(prefix, implies(eq(power(z, t.n), product_of_commutators("x", "y", t.g)),
                               eq(z, product_of_commutators("u", "w", t.k))));
}

TemplateSentences build_conj(const ConjPair& t) {
  const int m = t.presentation.generators;
  if (m < 1 || m > kMaxRank) throw Error(ErrorKind::InvalidParams, "presentation needs 1..26 generators");
  auto check = [m](const Word& w, const char* what) {
    if (w.max_generator() > m) {
      throw Error(ErrorKind::InvalidParams, std::string(what) + " uses a letter outside the presentation");
    }
  };
  for (const Word& r : t.presentation.relators) check(r, "relator");
  check(t.u, "U");
  check(t.w, "W");

  std::vector<FormulaPtr> relations;
  for (const Word& r : t.presentation.relators) relations.push_back(eq(word_term(r), one()));
  // The empty conjunction is written as the true atom 1 = 1.
  if (relations.empty()) relations.push_back(eq(one(), one()));

  const Term y = var_term("y");
  const Term conj_u = inverse(y) * word_term(t.u) * y;
  auto matrix = [&](bool equal) {
    std::vector<FormulaPtr> ops = relations;
    ops.push_back(Formula::atom(word_term(t.w), conj_u, equal));
    return Formula::compound(Connective::And, std::move(ops));
  };

  std::vector<std::pair<Quantifier, std::string>> sigma_prefix, tau_prefix;
  for (int i = 1; i <= m; ++i) {
    sigma_prefix.emplace_back(Quantifier::Exists, indexed("x", i));
    tau_prefix.emplace_back(Quantifier::ForAll, indexed("x", i));
  }
  sigma_prefix.emplace_back(Quantifier::ForAll, "y");
  tau_prefix.emplace_back(Quantifier::Exists, "y");
  return {close(sigma_prefix, matrix(false)), close(tau_prefix, matrix(true))};
}

}  // namespace

TemplateSentences build_template(const TemplateParams& params) {
  return std::visit(
      [](const auto& t) -> TemplateSentences {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, PhiN>) return {build_phi(t), nullptr};
        if constexpr (std::is_same_v<T, PsiPK>) return {build_psi(t), nullptr};
        if constexpr (std::is_same_v<T, PiP>) return {build_pi(t), nullptr};
        if constexpr (std::is_same_v<T, SigmaGNK>) return {build_sigma(t), nullptr};
        if constexpr (std::is_same_v<T, ConjPair>) return build_conj(t);
      },
      params);
}

std::string describe(const TemplateParams& params) {
  return std::visit(
      [](const auto& t) -> std::string {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, PhiN>) return "phi(n=" + std::to_string(t.n) + ")";
        if constexpr (std::is_same_v<T, PsiPK>) {
          return "psi(p=" + std::to_string(t.p) + ",k=" + std::to_string(t.k) + ")";
        }
        if constexpr (std::is_same_v<T, PiP>) return "pi(p=" + std::to_string(t.p) + ")";
        if constexpr (std::is_same_v<T, SigmaGNK>) {
          return "sigma(g=" + std::to_string(t.g) + ",n=" + std::to_string(t.n) +
                 ",k=" + std::to_string(t.k) + ")";
        }
        if constexpr (std::is_same_v<T, ConjPair>) {
          return "conj(m=" + std::to_string(t.presentation.generators) + ",U=" + to_string(t.u) +
                 ",W=" + to_string(t.w) + ")";
        }
      },
      params);
}

}  // namespace flg
