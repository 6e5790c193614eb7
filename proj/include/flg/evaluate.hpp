#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "flg/formula.hpp"
#include "flg/templates.hpp"
#include "flg/word.hpp"

namespace flg {

struct Binding {
  std::string name;
  std::variant<Word, long> value;

  friend bool operator==(const Binding&, const Binding&) = default;
};

struct Verdict {
  enum class Kind { Satisfied, HypothesisFalse, Refuted, BoundedSatisfied, NoWitnessWithinBudget };

  Kind kind = Kind::Satisfied;
  // Witnesses (Satisfied) or the counterexample (Refuted), in binding order.
  std::vector<Binding> bindings;
  int radius = 0;            // bounded verdicts only
  bool approximate = false;  // false only for exact answers
  // Result of substituting the witnesses back into the matrix; exact evaluators only.
  std::optional<bool> substitution_verified;

  const Binding* find(const std::string& name) const;
};

std::string_view to_string(Verdict::Kind kind);
// "SATISFIED i=0 j=1 y=a"
std::string summary_line(const Verdict& v);

using Assignment = std::map<std::string, Word>;

// Truth of a quantifier-free formula. Every variable must be assigned.
bool evaluate_matrix(const Formula& f, const Assignment& values);

Verdict eval_phi_n(const Word& x0, const Word& x1, const Word& x2, int n);
// The "disjunct" binding is 0 for x0 = y^p; otherwise the "i" binding names the disjunct.
Verdict eval_psi_pk(const Word& x0, const Word& x1, Integer p, int k);
Verdict eval_pi_p(const Word& x, Integer p);

struct BoundedCheckOptions {
  std::size_t max_evaluations = 50'000'000;
  unsigned jobs = 1;
};

Verdict bounded_check(const FormulaPtr& sentence, const GroupContext& ctx, int radius,
                      const BoundedCheckOptions& options = {});

}  // namespace flg
