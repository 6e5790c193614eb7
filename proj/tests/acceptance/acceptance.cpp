// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>

#include "corpus.hpp"
#include "flg/abelian.hpp"
#include "flg/evaluate.hpp"
#include "flg/formula.hpp"
#include "flg/genus.hpp"
#include "flg/separation.hpp"
#include "flg/surface.hpp"
#include "flg/templates.hpp"
#include "flg/whitehead.hpp"
#include "oracles.hpp"

using namespace flg;

namespace {

const GroupContext F2(2);

Word w(const char* s) { return parse_word(s, F2); }

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Collects the first failure message; later ones only bump the count.
struct Checker {
  std::size_t failures = 0;
  std::string first;

  void expect(bool cond, const std::string& what) {
    if (cond) return;
    if (failures++ == 0) first = what;
  }
  Outcome done(const std::string& summary) const {
    if (failures == 0) return {true, summary};
    return {false, std::to_string(failures) + " failure(s), first: " + first};
  }
};

int failed = 0;

void criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > limit_s) {
    out.ok = false;
    out.detail += "; exceeded time limit";
  }
  if (!out.ok) ++failed;
  std::printf("%s %2d %s: %s (%.1f s, limit %.0f s)\n", out.ok ? "PASS" : "FAIL", id, name, out.detail.c_str(),
              secs, limit_s);
  std::fflush(stdout);
}

Word binding_word(const Verdict& v, const char* name) {
  const Binding* b = v.find(name);
  if (!b || !std::holds_alternative<Word>(b->value)) throw std::runtime_error(std::string("missing binding ") + name);
  return std::get<Word>(b->value);
}

Outcome wicks() {
  const oracle::CommutatorSet set(8);
  Checker c;
  std::size_t cases = 0;
  for (const auto& x : oracle::ball(2, 8)) {
    const Word u = oracle::word(x);
    if (!is_cyclically_reduced(u) || exponent_vector(u, F2) != ExponentVector{0, 0}) continue;
    ++cases;
    const auto v = is_commutator(u, F2);
    const bool yes = v.kind == CommutatorVerdict::Kind::Yes;
    c.expect(yes == set.contains(u), "disagreement on " + to_string(u));
    if (yes && !u.empty()) c.expect(commutator(v.split->x, v.split->y) == u, "bad split for " + to_string(u));
  }
  return c.done(std::to_string(cases) + " words agree with the oracle");
}

Outcome genus_square() {
  const Word z = power(w("abAB"), 2);
  const auto cert = genus(z, F2, SearchParams{3, 5});
  const auto* e = std::get_if<GenusExact>(&cert);
  Checker c;
  c.expect(e != nullptr, "certificate is not exact");
  if (e) {
    c.expect(e->genus == 2, "genus " + std::to_string(e->genus));
    c.expect(e->witness.pairs.size() == 2 && verify_expression(z, e->witness), "witness does not verify");
    c.expect(is_commutator(z, F2).kind == CommutatorVerdict::Kind::No, "lower bound 2 not certified");
  }
  return c.done("Exact(2) with verified witness");
}

Outcome scan() {
  const ScanReport r = duncan_howie_scan(6, 4, SearchParams{2, 5});
  Checker c;
  c.expect(r.violations.empty(), std::to_string(r.violations.size()) + " violations");
  for (const auto& inst : r.instances) {
    if (!inst.checked) continue;
    const auto u = certificate_upper(inst.certificate);
    c.expect(u && inst.n < 2 * *u, "n >= 2g at " + to_string(inst.z));
    const auto wit = certificate_witness(inst.certificate);
    c.expect(wit && verify_expression(power(inst.z, inst.n), *wit), "unverified witness at " + to_string(inst.z));
  }
  c.expect(r.checked > 0, "nothing checked");
  return c.done(std::to_string(r.instances.size()) + " instances, " + std::to_string(r.checked) +
                " checked, 0 violations");
}

Outcome ftable() {
  Checker c;
  const auto e12 = f_lower_table(1, 2, 6, 4);
  c.expect(!e12.lower_bound && e12.instances == 0, "f(1,2) has instances");
  const auto e11 = f_lower_table(1, 1, 6, 4);
  c.expect(e11.lower_bound && *e11.lower_bound == 1, "f(1,1) lower bound is not 1");
  return c.done("f(1,2) = NoInstances, f(1,1) = 1");
}

std::vector<Word> commuting(std::mt19937_64& rng, std::size_t count) {
  const Word r = oracle::random_word(rng, 2, 4, 1);
  const Word g = oracle::random_word(rng, 2, 4);
  std::vector<Word> out;
  for (std::size_t i = 0; i < count; ++i) {
    long e = static_cast<long>(rng() % 15) - 7;
    if (i == 0 && e == 0) e = 1;
    out.push_back(conjugate(power(r, e), g));
  }
  return out;
}

// m such that the cyclic core of y is t^m with t primitive-period; y is a
// p-th power iff p divides m.
long core_multiplicity(const Word& y) {
  std::vector<Letter> c = oracle::letters(y);
  while (c.size() > 1 && c.front() == -c.back()) c = std::vector<Letter>(c.begin() + 1, c.end() - 1);
  const std::size_t n = c.size();
  for (std::size_t period = 1; period <= n; ++period) {
    if (n % period != 0) continue;
    bool repeats = true;
    for (std::size_t i = period; i < n && repeats; ++i) repeats = c[i] == c[i - period];
    if (repeats) return static_cast<long>(n / period);
  }
  return 1;
}

Outcome sentence_truth() {
  constexpr int kTrials = 10000;
  Checker c;
  std::mt19937_64 rng(2024);
  for (int n : {2, 3, 4}) {
    const auto matrix = split_prenex(build_template(PhiN{n}).sentence).matrix;
    for (int t = 0; t < kTrials; ++t) {
      const auto xs = commuting(rng, 3);
      const auto v = eval_phi_n(xs[0], xs[1], xs[2], n);
      const bool ok = v.kind == Verdict::Kind::Satisfied &&
                      evaluate_matrix(*matrix, {{"x0", xs[0]}, {"x1", xs[1]}, {"x2", xs[2]}, {"y", binding_word(v, "y")}});
      c.expect(ok, "phi_" + std::to_string(n) + " at x0=" + to_string(xs[0]));
    }
  }
  for (Integer p : {2, 3}) {
    for (int k : {1, 2}) {
      const auto matrix = split_prenex(build_template(PsiPK{p, k}).sentence).matrix;
      for (int t = 0; t < kTrials; ++t) {
        const auto xs = commuting(rng, 2);
        const auto v = eval_psi_pk(xs[0], xs[1], p, k);
        const bool ok = v.kind == Verdict::Kind::Satisfied &&
                        evaluate_matrix(*matrix, {{"x0", xs[0]}, {"x1", xs[1]}, {"y", binding_word(v, "y")}});
        c.expect(ok, "psi at x0=" + to_string(xs[0]) + " x1=" + to_string(xs[1]));
      }
    }
  }
  for (Integer p : {2, 3}) {
    for (int t = 0; t < kTrials; ++t) {
      const Word x = commuting(rng, 1)[0];
      const auto v = eval_pi_p(x, p);
      bool ok = v.kind == Verdict::Kind::Satisfied;
      if (ok) {
        const Word y = binding_word(v, "y");
        // y commutes with x and is not a p-th power
        ok = multiply(x, y) == multiply(y, x) && !y.empty() && core_multiplicity(y) % p != 0;
      }
      c.expect(ok, "pi at x=" + to_string(x));
    }
  }
  return c.done("9 families x 10^4 instantiations satisfied and re-verified");
}

Outcome szmielew() {
  Checker c;
  std::size_t compared = 0;
  auto compare = [&](std::size_t f, std::vector<long> orders) {
    const oracle::SmallAbelian g{static_cast<int>(f), orders};
    const AbelianDescriptor d{f, {orders.begin(), orders.end()}, {}};
    for (long p : {2L, 3L}) {
      for (unsigned k : {1u, 2u}) {
        const auto want = oracle::szmielew(g, p, k);
        const auto got = szmielew_ranks(d, p, k);
        ++compared;
        c.expect(got.rho1 == want.rho1 && got.rho2 == want.rho2 && got.rho3 == want.rho3,
                 to_string(d) + " p=" + std::to_string(p) + " k=" + std::to_string(k));
      }
    }
  };
  for (long d = 2; d <= 16; ++d) compare(0, {d});
  for (long d = 2; d <= 8; ++d) {
    for (long e = 2; e <= 8; ++e) compare(0, {d, e});
  }
  for (long d = 2; d <= 8; ++d) compare(1, {d});
  compare(1, {});

  const AbelianDescriptor z{1, {}, {}};
  for (Integer p : {2, 3, 5}) {
    c.expect(!elementarily_equivalent(z, AbelianDescriptor::localization(PrimeSet({p}))),
             "Z equivalent to Z[1/" + std::to_string(p) + "]");
  }
  std::vector<std::vector<Integer>> subsets;
  for (int mask = 0; mask < 8; ++mask) {
    std::vector<Integer> s;
    for (int i = 0; i < 3; ++i) {
      if (mask >> i & 1) s.push_back(i == 0 ? 2 : i == 1 ? 3 : 5);
    }
    subsets.push_back(s);
  }
  for (const auto& s1 : subsets) {
    for (const auto& s2 : subsets) {
      const bool eq = elementarily_equivalent(AbelianDescriptor::localization(PrimeSet(s1)),
                                              AbelianDescriptor::localization(PrimeSet(s2)));
      c.expect(eq == (s1 == s2), "localization equivalence mismatch");
    }
    for (Integer p : {2, 3, 5, 7}) {
      Integer pk = 1;
      for (unsigned k = 1; k <= 3; ++k) {
        pk *= p;
        const Integer want = std::find(s1.begin(), s1.end(), p) == s1.end() ? pk : 1;
        c.expect(localized_quotient_structure(PrimeSet(s1), p, k) == want, "quotient order mismatch");
      }
    }
  }
  return c.done(std::to_string(compared) + " rank triples agree; equivalence and quotient tables exact");
}

Outcome surface() {
  Checker c;
  const auto& k = SurfacePresentation::instance();
  const FgAbelianGroup ab(4, IntMatrix{{2}, {2}, {2}, {2}});
  c.expect(ab.structure() == InvariantFactors{3, {2}}, "abelianization is not Z^3 + Z/2");
  const std::vector<Integer> abcd{1, 1, 1, 1};
  c.expect(ab.coordinates(abcd).torsion == std::vector<Integer>{1} && ab.element_order(abcd) == 2,
           "abcd is not the torsion generator");
  c.expect(max_piece_length() == 1, "piece length is not 1");
  c.expect(dehn_reduce(k.relator()).final.empty(), "relator does not reduce");
  std::mt19937_64 rng(77);
  for (int t = 0; t < 1000; ++t) {
    Word x;
    const int count = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < count; ++i) {
      x = multiply(x, conjugate((rng() & 1) ? k.relator() : inverse(k.relator()), oracle::random_word(rng, 4, 8)));
    }
    c.expect(dehn_reduce(x).final.empty(), "product not reduced: " + to_string(x));
  }
  const std::vector<Word> s{parse_word("abcd", k.context())};
  c.expect(find_separating_retraction(s) == 1, "separating retraction is not r_1");
  return c.done("Z^3 + Z/2, pieces 1, 1000 relator products reduce, r_1 separates abcd");
}

Outcome primitivity() {
  Checker c;
  std::mt19937_64 rng(88);
  for (int t = 0; t < 1000; ++t) {
    const Word x = oracle::random_primitive(rng, 2, 14);
    c.expect(is_primitive(x, F2), "image not primitive: " + to_string(x));
  }
  c.expect(!is_primitive(w("abAB"), F2), "[a,b] primitive");
  c.expect(!is_primitive(w("aa"), F2), "a^2 primitive");
  std::set<std::vector<Letter>> powers;
  for (const auto& r : oracle::ball(2, 8)) {
    if (r.empty()) continue;
    std::vector<Letter> p = r;
    for (int e = 2; e <= 8; ++e) {
      p = oracle::cat({p, r});
      if (!p.empty() && p.size() <= 8) powers.insert(p);
    }
  }
  for (const auto& p : powers) c.expect(!is_primitive(oracle::word(p), F2), "power primitive: " + to_string(oracle::word(p)));
  return c.done("1000 images primitive; [a,b], a^2 and " + std::to_string(powers.size()) + " proper powers not");
}

Outcome separation() {
  Checker c;
  std::mt19937_64 rng(99);
  int pairs = 0;
  while (pairs < 100) {
    const Word u = oracle::random_word(rng, 2, 6, 1), v = oracle::random_word(rng, 2, 6, 1);
    const bool distinct = exponent_vector(u, F2) != exponent_vector(v, F2) ||
                          canonical_cyclic(u).word().size() != canonical_cyclic(v).word().size();
    // u and u^-1 share every cycle type, so such pairs have no potential
    if (!distinct || are_conjugate(u, v) || are_conjugate(u, inverse(v))) continue;
    ++pairs;
    try {
      const auto s = separate_conjugacy_finite(u, v, F2);
      c.expect(s.degree <= 6 && cycle_type(evaluate_permutation(u, s.images)) != cycle_type(evaluate_permutation(v, s.images)),
               "bad witness for " + to_string(u) + ", " + to_string(v));
    } catch (const Error& e) {
      c.expect(false, "not separated: " + to_string(u) + ", " + to_string(v));
    }
  }
  for (int t = 0; t < 100; ++t) {
    const Word u = oracle::random_word(rng, 2, 6, 1);
    const Word v = conjugate(u, oracle::random_word(rng, 2, 4));
    bool raised = false;
    try {
      separate_conjugacy_finite(u, v, F2);
    } catch (const Error& e) {
      raised = e.kind() == ErrorKind::ArgsConjugate;
    }
    c.expect(raised, "no ArgsConjugate for " + to_string(u));
  }
  return c.done("100 pairs separated within degree 6; 100 conjugate pairs rejected");
}

Outcome logic() {
  Checker c;
  const auto all = corpus::formulas();
  c.expect(all.size() == 50, "corpus size " + std::to_string(all.size()));
  for (const char* t : corpus::kHandwritten) c.expect(to_string(*parse_formula(t)) == t, std::string("print ") + t);
  for (const auto& f : all) {
    const std::string text = to_string(*f);
    const auto back = parse_formula(text);
    c.expect(structurally_equal(*back, *f) && to_string(*back) == text, "round trip " + text);
  }
  for (const auto& t : corpus::templates()) {
    const auto s = build_template(t);
    if (std::holds_alternative<PiP>(t)) {
      c.expect(classify_prenex(*s.sentence) == pi(3), describe(t));
    } else if (std::holds_alternative<ConjPair>(t)) {
      c.expect(classify_prenex(*s.sentence) == sigma(2), describe(t));
      c.expect(s.dual && classify_prenex(*s.dual) == pi(2), describe(t) + " dual");
    } else {
      c.expect(classify_prenex(*s.sentence) == pi(2), describe(t));
    }
  }
  return c.done("50 formulas round trip; all template classes match");
}

}  // namespace

int main() {
  criterion(1, "Wicks-criterion exactness", 300, wicks);
  criterion(2, "genus of [a,b]^2", 60, genus_square);
  criterion(3, "power genus scan", 600, scan);
  criterion(4, "f lower table", 120, ftable);
  criterion(5, "sentence truth in free groups", 600, sentence_truth);
  criterion(6, "Szmielew suite", 300, szmielew);
  criterion(7, "surface suite", 120, surface);
  criterion(8, "primitivity suite", 300, primitivity);
  criterion(9, "conjugacy separation", 300, separation);
  criterion(10, "logic round trip and classification", 60, logic);
  return failed == 0 ? 0 : 1;
}
