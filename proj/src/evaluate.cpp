#include "flg/evaluate.hpp"

#include <atomic>
#include <set>

#include "flg/genus.hpp"
#include "flg/parallel.hpp"

namespace flg {

const Binding* Verdict::find(const std::string& name) const {
  for (const Binding& b : bindings) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

std::string_view to_string(Verdict::Kind kind) {
  switch (kind) {
    case Verdict::Kind::Satisfied: return "SATISFIED";
    case Verdict::Kind::HypothesisFalse: return "HYPOTHESIS_FALSE";
    case Verdict::Kind::Refuted: return "REFUTED";
    case Verdict::Kind::BoundedSatisfied: return "BOUNDED_SATISFIED";
    case Verdict::Kind::NoWitnessWithinBudget: return "NO_WITNESS_WITHIN_BUDGET";
  }
  return "?";
}

std::string summary_line(const Verdict& v) {
  std::string s(to_string(v.kind));
  for (const Binding& b : v.bindings) {
    s += " " + b.name + "=";
    if (const Word* w = std::get_if<Word>(&b.value)) {
      s += to_string(*w);
    } else {
      s += std::to_string(std::get<long>(b.value));
    }
  }
  return s;
}

namespace {

Word term_value(const Term& t, const Assignment& values) {
  WordBuilder b;
  for (const Factor& f : t.factors) {
    const Word* w = &f.constant;
    if (f.kind == Factor::Kind::Variable) {
      auto it = values.find(f.name);
      if (it == values.end()) throw Error(ErrorKind::InvalidParams, "unassigned variable " + f.name);
      w = &it->second;
    }
    if (f.inverted) {
      b.append_inverse(*w);
    } else {
      b.append(*w);
    }
  }
  return std::move(b).build();
}

}  // namespace

bool evaluate_matrix(const Formula& f, const Assignment& values) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return (term_value(f.lhs(), values) == term_value(f.rhs(), values)) == f.equal();
    case Formula::Kind::Not:
      return !evaluate_matrix(*f.body(), values);
    case Formula::Kind::Compound: {
      const auto& ops = f.operands();
      if (f.connective() == Connective::Implies) {
        return !evaluate_matrix(*ops[0], values) || evaluate_matrix(*ops[1], values);
      }
      const bool conj = f.connective() == Connective::And;
      for (const auto& op : ops) {
        if (evaluate_matrix(*op, values) != conj) return !conj;
      }
      return conj;
    }
    case Formula::Kind::Quantified:
      throw Error(ErrorKind::NotPrenex, "quantifier inside a matrix");
  }
  return false;
}

namespace {

bool commute(const Word& a, const Word& b) { return multiply(a, b) == multiply(b, a); }

// Inverse of a modulo m for gcd(a, m) = 1, in [0, m).
long inverse_mod(long a, long m) {
  long r0 = m, r1 = ((a % m) + m) % m, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const long q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(t0, t1) = std::pair{t1, t0 - q * t1};
  }
  return ((t0 % m) + m) % m;
}

// x = r^s for the root r of a nontrivial element commuting with x.
long exponent_over(const Word& r, const Word& x) {
  const std::optional<long> s = log_base(r, x);
  if (!s) throw std::logic_error("commuting element is not a power of the root");
  return *s;
}

bool verify(const TemplateParams& t, const Assignment& values) {
  const PrenexParts parts = split_prenex(build_template(t).sentence);
  return evaluate_matrix(*parts.matrix, values);
}

Verdict hypothesis_false(const TemplateParams& t, Assignment values) {
  Verdict v;
  v.kind = Verdict::Kind::HypothesisFalse;
  values["y"] = Word{};
  v.substitution_verified = verify(t, values);
  return v;
}

}  // namespace

Verdict eval_phi_n(const Word& x0, const Word& x1, const Word& x2, int n) {
  const PhiN t{n};
  if (n < 2) throw Error(ErrorKind::InvalidParams, "phi_n needs n >= 2");
  Assignment values{{"x0", x0}, {"x1", x1}, {"x2", x2}};
  if (x0.empty() || !commute(x0, x1) || !commute(x0, x2)) return hypothesis_false(t, values);

  const Word r = extract_root(x0).root;
  const long s = exponent_over(r, x1);
  const long u = exponent_over(r, x2);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      if ((i == 0 && j == 0) || (s * i + u * j) % n != 0) continue;
      Verdict v;
      v.kind = Verdict::Kind::Satisfied;
      const Word y = power(r, (s * i + u * j) / n);
      v.bindings = {{"i", i}, {"j", j}, {"y", y}};
      values["y"] = y;
      v.substitution_verified = verify(t, values);
      return v;
    }
  }
  throw std::logic_error("Z_n^2 -> Z_n has a nontrivial kernel");
}

Verdict eval_psi_pk(const Word& x0, const Word& x1, Integer p, int k) {
  const PsiPK t{p, k};
  if (!is_prime(p) || k < 1) throw Error(ErrorKind::InvalidParams, "psi_{p,k} needs p prime, k >= 1");
  long q = 1;
  for (int i = 0; i < k; ++i) {
    if (q > kMaxPsiModulus / p) throw Error(ErrorKind::InvalidParams, "p^k is too large");
    q *= static_cast<long>(p);
  }
  Assignment values{{"x0", x0}, {"x1", x1}};
  if (x0.empty() || !commute(x0, x1)) return hypothesis_false(t, values);

  const PowerDecomposition d = extract_root(x0);
  const long e = d.exponent;
  const long s = exponent_over(d.root, x1);
  Verdict v;
  v.kind = Verdict::Kind::Satisfied;
  Word y;
  if (e % p == 0) {
    y = power(d.root, e / p);
    v.bindings = {{"disjunct", 0L}, {"y", y}};
  } else {
    const long i = ((s % q + q) % q) * inverse_mod(e, q) % q;
    y = power(d.root, (s - e * i) / q);
    v.bindings = {{"disjunct", i + 1}, {"i", i}, {"y", y}};
  }
  values["y"] = y;
  v.substitution_verified = verify(t, values);
  return v;
}

Verdict eval_pi_p(const Word& x, Integer p) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidParams, "pi_p needs p prime");
  Verdict v;
  if (x.empty()) {
    v.kind = Verdict::Kind::HypothesisFalse;
    v.substitution_verified = true;
    return v;
  }
  const Word y = extract_root(x).root;
  v.kind = Verdict::Kind::Satisfied;
  v.bindings = {{"y", y}};
  // The universal z cannot be substituted; y is a p-th power iff p divides its root exponent.
  v.substitution_verified = commute(x, y) && extract_root(y).exponent % p != 0;
  return v;
}

namespace {

struct CompiledFactor {
  int var = -1;  // -1 for a constant
  Word constant;
  bool inverted = false;
};

struct CompiledNode {
  Formula::Kind kind = Formula::Kind::Atom;
  Connective op = Connective::And;
  bool equal = true;
  std::vector<CompiledFactor> lhs, rhs;
  std::vector<CompiledNode> children;
};

class BoundedChecker {
 public:
  BoundedChecker(const FormulaPtr& sentence, const GroupContext& ctx, int radius,
                 const BoundedCheckOptions& options)
      : options_(options) {
    if (radius < 0) throw Error(ErrorKind::InvalidParams, "radius must be nonnegative");
    const auto free = free_variables(*sentence);
    if (!free.empty()) {
      throw Error(ErrorKind::InvalidParams, "not a sentence: free variable " + *free.begin());
    }
    PrenexParts parts = split_prenex(sentence);
    for (const auto& [q, name] : parts.prefix) {
      if (index_.count(name)) throw Error(ErrorKind::InvalidParams, "variable " + name + " bound twice");
      index_[name] = static_cast<int>(prefix_.size());
      prefix_.emplace_back(q, name);
    }
    matrix_ = compile(*parts.matrix, ctx);
    ball_ = words_up_to(ctx, radius);
  }

  const std::vector<std::pair<Quantifier, std::string>>& prefix() const { return prefix_; }

  // Result of the relativized sentence plus the chain of decisive choices.
  bool run(std::vector<Binding>& trace) {
    std::vector<Word> vals(prefix_.size());
    if (prefix_.empty() || options_.jobs <= 1) return search(0, vals, trace);

    const bool universal = prefix_.front().first == Quantifier::ForAll;
    struct Slice {
      bool value = false;
      std::vector<Binding> trace;
    };
    auto slices = parallel_map(ball_.size(), options_.jobs, [&](std::size_t i) {
      std::vector<Word> local(prefix_.size());
      local[0] = ball_[i];
      Slice s;
      s.value = search(1, local, s.trace);
      return s;
    });
    for (std::size_t i = 0; i < slices.size(); ++i) {
      if (slices[i].value != universal) {
        trace.push_back({prefix_.front().second, ball_[i]});
        trace.insert(trace.end(), slices[i].trace.begin(), slices[i].trace.end());
        return !universal;
      }
    }
    return universal;
  }

 private:
  CompiledNode compile(const Formula& f, const GroupContext& ctx) const {
    CompiledNode n;
    n.kind = f.kind();
    if (f.kind() == Formula::Kind::Atom) {
      n.equal = f.equal();
      n.lhs = compile(f.lhs(), ctx);
      n.rhs = compile(f.rhs(), ctx);
      return n;
    }
    n.op = f.connective();
    for (const auto& op : f.operands()) n.children.push_back(compile(*op, ctx));
    return n;
  }

  std::vector<CompiledFactor> compile(const Term& t, const GroupContext& ctx) const {
    std::vector<CompiledFactor> out;
    for (const Factor& f : t.factors) {
      CompiledFactor c;
      c.inverted = f.inverted;
      if (f.kind == Factor::Kind::Variable) {
        c.var = index_.at(f.name);
      } else {
        if (f.constant.max_generator() > ctx.rank()) {
          throw Error(ErrorKind::ContextMismatch,
                      "constant <" + to_string(f.constant) + "> is outside F_" +
                          std::to_string(ctx.rank()));
        }
        c.constant = f.constant;
      }
      out.push_back(std::move(c));
    }
    return out;
  }

  static Word value(const std::vector<CompiledFactor>& t, const std::vector<Word>& vals) {
    WordBuilder b;
    for (const CompiledFactor& f : t) {
      const Word& w = f.var < 0 ? f.constant : vals[f.var];
      if (f.inverted) {
        b.append_inverse(w);
      } else {
        b.append(w);
      }
    }
    return std::move(b).build();
  }

  static bool eval(const CompiledNode& n, const std::vector<Word>& vals) {
    switch (n.kind) {
      case Formula::Kind::Atom:
        return (value(n.lhs, vals) == value(n.rhs, vals)) == n.equal;
      case Formula::Kind::Not:
        return !eval(n.children[0], vals);
      case Formula::Kind::Compound: {
        if (n.op == Connective::Implies) {
          return !eval(n.children[0], vals) || eval(n.children[1], vals);
        }
        const bool conj = n.op == Connective::And;
        for (const auto& c : n.children) {
          if (eval(c, vals) != conj) return !conj;
        }
        return conj;
      }
      case Formula::Kind::Quantified:
        break;
    }
    return false;
  }

  bool search(std::size_t level, std::vector<Word>& vals, std::vector<Binding>& trace) {
    if (level == prefix_.size()) {
      if (++evaluations_ > options_.max_evaluations) {
        throw Error(ErrorKind::BudgetExceeded,
                    "bounded check exceeded " + std::to_string(options_.max_evaluations) +
                        " matrix evaluations");
      }
      return eval(matrix_, vals);
    }
    const bool universal = prefix_[level].first == Quantifier::ForAll;
    for (const Word& w : ball_) {
      vals[level] = w;
      std::vector<Binding> sub;
      if (search(level + 1, vals, sub) != universal) {
        trace.push_back({prefix_[level].second, w});
        trace.insert(trace.end(), sub.begin(), sub.end());
        return !universal;
      }
    }
    return universal;
  }

  BoundedCheckOptions options_;
  std::vector<std::pair<Quantifier, std::string>> prefix_;
  std::map<std::string, int> index_;
  CompiledNode matrix_;
  std::vector<Word> ball_;
  std::atomic<std::size_t> evaluations_{0};
};

}  // namespace

Verdict bounded_check(const FormulaPtr& sentence, const GroupContext& ctx, int radius,
                      const BoundedCheckOptions& options) {
  BoundedChecker checker(sentence, ctx, radius, options);
  std::vector<Binding> trace;
  const bool holds = checker.run(trace);

  Verdict v;
  v.radius = radius;
  v.bindings = std::move(trace);
  const auto& prefix = checker.prefix();
  if (prefix.empty()) {
    v.kind = holds ? Verdict::Kind::Satisfied : Verdict::Kind::Refuted;
    return v;
  }
  const bool existential = std::all_of(prefix.begin(), prefix.end(),
                                       [](const auto& q) { return q.first == Quantifier::Exists; });
  v.approximate = true;
  if (holds) {
    v.kind = existential ? Verdict::Kind::Satisfied : Verdict::Kind::BoundedSatisfied;
    v.approximate = !existential;
  } else {
    v.kind = prefix.front().first == Quantifier::ForAll ? Verdict::Kind::Refuted
                                                        : Verdict::Kind::NoWitnessWithinBudget;
  }
  return v;
}

}  // namespace flg
