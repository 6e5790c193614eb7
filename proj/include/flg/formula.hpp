#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "flg/word.hpp"

namespace flg {

// One factor of a product term: a variable or a free-group constant,
// optionally inverted ("x'" or "<ab>'").
struct Factor {
  enum class Kind { Variable, Constant };
  Kind kind = Kind::Variable;
  std::string name;  // variable name
  Word constant;     // constant value
  bool inverted = false;

  static Factor var(std::string name, bool inverted = false);
  static Factor constant_word(Word w, bool inverted = false);

  friend bool operator==(const Factor&, const Factor&) = default;
};

// Product of factors; the empty product is the identity "1".
struct Term {
  std::vector<Factor> factors;

  Term& operator*=(const Term& rhs);
  friend Term operator*(Term a, const Term& b) { return a *= b; }
  friend bool operator==(const Term&, const Term&) = default;
};

Term var_term(const std::string& name);
Term inverse(const Term& t);
Term power(const Term& t, long e);
Term commutator(const Term& x, const Term& y);

enum class Quantifier { ForAll, Exists };
enum class Connective { And, Or, Implies };

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

class Formula {
 public:
  enum class Kind { Atom, Not, Compound, Quantified };

  static FormulaPtr atom(Term lhs, Term rhs, bool equal = true);
  static FormulaPtr negation(FormulaPtr f);
  static FormulaPtr compound(Connective op, std::vector<FormulaPtr> operands);
  static FormulaPtr quantified(Quantifier q, std::string var, FormulaPtr body);

  Kind kind() const noexcept { return kind_; }
  // Atom
  const Term& lhs() const noexcept { return lhs_; }
  const Term& rhs() const noexcept { return rhs_; }
  bool equal() const noexcept { return equal_; }
  // Not / Compound / Quantified
  Connective connective() const noexcept { return op_; }
  const std::vector<FormulaPtr>& operands() const noexcept { return operands_; }
  Quantifier quantifier() const noexcept { return q_; }
  const std::string& variable() const noexcept { return var_; }
  const FormulaPtr& body() const { return operands_.front(); }

 private:
  Formula() = default;

  Kind kind_ = Kind::Atom;
  Term lhs_, rhs_;
  bool equal_ = true;
  Connective op_ = Connective::And;
  std::vector<FormulaPtr> operands_;
  Quantifier q_ = Quantifier::ForAll;
  std::string var_;
};

bool structurally_equal(const Formula& a, const Formula& b);

// ASCII grammar:
//   formula  := ("A" | "E") var formula | "!" formula
//             | "(" formula ")" | "(" formula (op formula)+ ")" | atom
//   op       := "&" | "|" | "->"          (one kind per group; "->" is binary)
//   atom     := term ("=" | "!=") term
//   term     := factor ("*" factor)*
//   factor   := ("1" | var | "<" word ">") "'"?
//   var      := [a-z][0-9]*
FormulaPtr parse_formula(std::string_view text);
std::string to_string(const Formula& f);

std::set<std::string> free_variables(const Formula& f);

struct PrenexClass {
  bool universal = true;  // Pi when true, Sigma otherwise
  int level = 0;

  // Pi_0 and Sigma_0 coincide.
  friend bool operator==(const PrenexClass& a, const PrenexClass& b) {
    return a.level == b.level && (a.level == 0 || a.universal == b.universal);
  }
};

PrenexClass pi(int level);
PrenexClass sigma(int level);
std::string to_string(const PrenexClass& c);

// Counts quantifier blocks of a prenex formula; no vacuous-quantifier collapse.
PrenexClass classify_prenex(const Formula& f);

struct PrenexParts {
  std::vector<std::pair<Quantifier, std::string>> prefix;
  FormulaPtr matrix;
};
PrenexParts split_prenex(const FormulaPtr& f);

}  // namespace flg
