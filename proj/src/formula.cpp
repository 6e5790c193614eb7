#include "flg/formula.hpp"

#include <cctype>

namespace flg {

Factor Factor::var(std::string name, bool inverted) {
  Factor f;
  f.kind = Kind::Variable;
  f.name = std::move(name);
  f.inverted = inverted;
  return f;
}

Factor Factor::constant_word(Word w, bool inverted) {
  Factor f;
  f.kind = Kind::Constant;
  f.constant = std::move(w);
  f.inverted = inverted;
  return f;
}

Term& Term::operator*=(const Term& rhs) {
  factors.insert(factors.end(), rhs.factors.begin(), rhs.factors.end());
  return *this;
}

Term var_term(const std::string& name) { return Term{{Factor::var(name)}}; }

Term inverse(const Term& t) {
  Term out;
  for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it) {
    Factor f = *it;
    f.inverted = !f.inverted;
    out.factors.push_back(std::move(f));
  }
  return out;
}

Term power(const Term& t, long e) {
  const Term base = e < 0 ? inverse(t) : t;
  Term out;
  for (long i = 0; i < (e < 0 ? -e : e); ++i) out *= base;
  return out;
}

Term commutator(const Term& x, const Term& y) { return x * y * inverse(x) * inverse(y); }

FormulaPtr Formula::atom(Term lhs, Term rhs, bool equal) {
  auto f = std::shared_ptr<Formula>(new Formula());
  f->kind_ = Kind::Atom;
  f->lhs_ = std::move(lhs);
  f->rhs_ = std::move(rhs);
  f->equal_ = equal;
  return f;
}

FormulaPtr Formula::negation(FormulaPtr body) {
  auto f = std::shared_ptr<Formula>(new Formula());
  f->kind_ = Kind::Not;
  f->operands_.push_back(std::move(body));
  return f;
}

FormulaPtr Formula::compound(Connective op, std::vector<FormulaPtr> operands) {
  if (operands.size() < 2 || (op == Connective::Implies && operands.size() != 2)) {
    throw Error(ErrorKind::InvalidParams, "connective with the wrong number of operands");
  }
  auto f = std::shared_ptr<Formula>(new Formula());
  f->kind_ = Kind::Compound;
  f->op_ = op;
  f->operands_ = std::move(operands);
  return f;
}

FormulaPtr Formula::quantified(Quantifier q, std::string var, FormulaPtr body) {
  auto f = std::shared_ptr<Formula>(new Formula());
  f->kind_ = Kind::Quantified;
  f->q_ = q;
  f->var_ = std::move(var);
  f->operands_.push_back(std::move(body));
  return f;
}

bool structurally_equal(const Formula& a, const Formula& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::Atom:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs() && a.equal() == b.equal();
    case Formula::Kind::Quantified:
      if (a.quantifier() != b.quantifier() || a.variable() != b.variable()) return false;
      break;
    case Formula::Kind::Compound:
      if (a.connective() != b.connective()) return false;
      break;
    case Formula::Kind::Not:
      break;
  }
  if (a.operands().size() != b.operands().size()) return false;
  for (std::size_t i = 0; i < a.operands().size(); ++i) {
    if (!structurally_equal(*a.operands()[i], *b.operands()[i])) return false;
  }
  return true;
}

namespace {

const GroupContext& constant_context() {
  static const GroupContext ctx(kMaxRank);
  return ctx;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  FormulaPtr parse() {
    FormulaPtr f = unary();
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  FormulaPtr unary() {
    skip();
    const char c = peek();
    if ((c == 'A' || c == 'E') && std::islower(static_cast<unsigned char>(peek(1)))) {
      ++pos_;
      std::string v = variable();
      return Formula::quantified(c == 'A' ? Quantifier::ForAll : Quantifier::Exists, std::move(v),
                                 unary());
    }
    if (c == '!' && peek(1) != '=') {
      ++pos_;
      return Formula::negation(unary());
    }
    if (c == '(') {
      ++pos_;
      FormulaPtr first = unary();
      skip();
      if (peek() == ')') {
        ++pos_;
        return first;
      }
      const Connective op = connective();
      std::vector<FormulaPtr> operands{std::move(first), unary()};
      for (;;) {
        skip();
        if (peek() == ')') {
          ++pos_;
          break;
        }
        const std::size_t at = pos_;
        if (connective() != op || op == Connective::Implies) {
          pos_ = at;
          fail("mixed or chained connectives need their own parentheses");
        }
        operands.push_back(unary());
      }
      return Formula::compound(op, std::move(operands));
    }
    return atom();
  }

  Connective connective() {
    skip();
    if (peek() == '&') {
      ++pos_;
      return Connective::And;
    }
    if (peek() == '|') {
      ++pos_;
      return Connective::Or;
    }
    if (peek() == '-' && peek(1) == '>') {
      pos_ += 2;
      return Connective::Implies;
    }
    fail("expected ')', '&', '|' or '->'");
  }

  FormulaPtr atom() {
    Term lhs = term();
    skip();
    bool equal = true;
    if (peek() == '=') {
      ++pos_;
    } else if (peek() == '!' && peek(1) == '=') {
      pos_ += 2;
      equal = false;
    } else {
      fail("expected '=' or '!='");
    }
    Term rhs = term();
    return Formula::atom(std::move(lhs), std::move(rhs), equal);
  }

  Term term() {
    Term t;
    for (;;) {
      skip();
      const char c = peek();
      if (c == '1') {
        ++pos_;
        if (peek() == '\'') ++pos_;
      } else if (c == '<') {
        ++pos_;
        const std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] != '>') ++pos_;
        if (pos_ == text_.size()) fail("unterminated constant");
        Word w;
        try {
          w = parse_word(text_.substr(start, pos_ - start), constant_context());
        } catch (const Error&) {
          pos_ = start;
          fail("malformed constant");
        }
        ++pos_;
        const bool inv = peek() == '\'';
        if (inv) ++pos_;
        t.factors.push_back(Factor::constant_word(std::move(w), inv));
      } else if (std::islower(static_cast<unsigned char>(c))) {
        std::string v = variable();
        const bool inv = peek() == '\'';
        if (inv) ++pos_;
        t.factors.push_back(Factor::var(std::move(v), inv));
      } else {
        fail("expected a term");
      }
      skip();
      if (peek() != '*') break;
      ++pos_;
    }
    return t;
  }

  std::string variable() {
    const std::size_t start = pos_;
    if (!std::islower(static_cast<unsigned char>(peek()))) fail("expected a variable");
    ++pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::SyntaxError, what + " at position " + std::to_string(pos_), pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string term_string(const Term& t) {
  if (t.factors.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < t.factors.size(); ++i) {
    const Factor& f = t.factors[i];
    if (i) s += "*";
    s += f.kind == Factor::Kind::Variable ? f.name : "<" + to_string(f.constant) + ">";
    if (f.inverted) s += "'";
  }
  return s;
}

std::string atom_string(const Formula& f) {
  return term_string(f.lhs()) + (f.equal() ? " = " : " != ") + term_string(f.rhs());
}

// Atoms are parenthesized under quantifiers and negations, bare elsewhere.
std::string wrapped(const Formula& f) {
  return f.kind() == Formula::Kind::Atom ? "(" + atom_string(f) + ")" : to_string(f);
}

}  // namespace

FormulaPtr parse_formula(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return atom_string(f);
    case Formula::Kind::Not:
      return "!" + wrapped(*f.body());
    case Formula::Kind::Quantified:
      return std::string(f.quantifier() == Quantifier::ForAll ? "A" : "E") + f.variable() + " " +
             wrapped(*f.body());
    case Formula::Kind::Compound: {
      const char* sep = f.connective() == Connective::And ? " & "
                        : f.connective() == Connective::Or ? " | "
                                                           : " -> ";
      std::string s = "(";
      for (std::size_t i = 0; i < f.operands().size(); ++i) {
        if (i) s += sep;
        const Formula& op = *f.operands()[i];
        s += op.kind() == Formula::Kind::Atom ? atom_string(op) : to_string(op);
      }
      return s + ")";
    }
  }
  return {};
}

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      for (const Term* t : {&f.lhs(), &f.rhs()}) {
        for (const Factor& x : t->factors) {
          if (x.kind == Factor::Kind::Variable && bound.count(x.name) == 0) out.insert(x.name);
        }
      }
      return;
    case Formula::Kind::Quantified: {
      const bool fresh = bound.insert(f.variable()).second;
      collect_free(*f.body(), bound, out);
      if (fresh) bound.erase(f.variable());
      return;
    }
    default:
      for (const auto& op : f.operands()) collect_free(*op, bound, out);
  }
}

bool has_quantifier(const Formula& f) {
  if (f.kind() == Formula::Kind::Quantified) return true;
  for (const auto& op : f.operands()) {
    if (has_quantifier(*op)) return true;
  }
  return false;
}

}  // namespace

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

PrenexClass pi(int level) { return {true, level}; }
PrenexClass sigma(int level) { return {false, level}; }

std::string to_string(const PrenexClass& c) {
  return std::string(c.universal ? "Pi_" : "Sigma_") + std::to_string(c.level);
}

PrenexParts split_prenex(const FormulaPtr& f) {
  PrenexParts parts;
  FormulaPtr cur = f;
  while (cur->kind() == Formula::Kind::Quantified) {
    parts.prefix.emplace_back(cur->quantifier(), cur->variable());
    cur = cur->body();
  }
  if (has_quantifier(*cur)) {
    throw Error(ErrorKind::NotPrenex, "quantifier inside the matrix: " + to_string(*cur));
  }
  parts.matrix = cur;
  return parts;
}

PrenexClass classify_prenex(const Formula& f) {
  const Formula* cur = &f;
  PrenexClass c;
  bool first = true;
  Quantifier last = Quantifier::ForAll;
  while (cur->kind() == Formula::Kind::Quantified) {
    if (first) {
      c.universal = cur->quantifier() == Quantifier::ForAll;
      c.level = 1;
      first = false;
    } else if (cur->quantifier() != last) {
      ++c.level;
    }
    last = cur->quantifier();
    cur = cur->body().get();
  }
  if (has_quantifier(*cur)) {
    throw Error(ErrorKind::NotPrenex, "quantifier inside the matrix: " + to_string(*cur));
  }
  return c;
}

}  // namespace flg
