#include "flg/cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "flg/abelian.hpp"
#include "flg/evaluate.hpp"
#include "flg/formula.hpp"
#include "flg/genus.hpp"
#include "flg/report.hpp"
#include "flg/separation.hpp"
#include "flg/surface.hpp"
#include "flg/templates.hpp"
#include "flg/whitehead.hpp"
#include "flg/word.hpp"

namespace flg::cli {

namespace {

struct Common {
  int rank = 2;
  std::string format;
  unsigned jobs = 1;
  std::uint64_t seed = 1;
  std::string out_path;
  bool timing = false;
};

struct Command {
  CLI::App* app;
  Format default_format;
  std::function<Report()> handler;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

Json expression_json(const CommutatorExpression& e) {
  Json arr = Json::array();
  for (const auto& [x, y] : e.pairs) arr.push_back(Json::array({to_string(x), to_string(y)}));
  return arr;
}

std::string expression_text(const CommutatorExpression& e) {
  if (e.pairs.empty()) return "1";
  std::string s;
  for (const auto& [x, y] : e.pairs) s += "[" + to_string(x) + "," + to_string(y) + "]";
  return s;
}

Json ints_json(const std::vector<Integer>& v) {
  Json arr = Json::array();
  for (Integer x : v) arr.push_back(x);
  return arr;
}

std::string join(const std::vector<long>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

std::string join(const std::vector<int>& v, const char* sep) {
  return join(std::vector<long>(v.begin(), v.end()), sep);
}

// Genus certificate fields shared by "genus of" and the scans.
Json certificate_json(const Word& z, const GenusCertificate& cert) {
  Json j = Json::object();
  if (const auto* nd = std::get_if<NotInDerivedGroup>(&cert)) {
    j["genus_lower"] = nullptr;
    j["genus_upper"] = nullptr;
    j["witness"] = nullptr;
    j["kind"] = "not_in_derived_group";
    j["exponents"] = nd->exponents;
    return j;
  }
  const std::optional<int> upper = certificate_upper(cert);
  const std::optional<CommutatorExpression> witness = certificate_witness(cert);
  j["genus_lower"] = certificate_lower(cert);
  j["genus_upper"] = upper ? Json(*upper) : Json(nullptr);
  j["witness"] = witness ? expression_json(*witness) : Json(nullptr);
  j["kind"] = std::holds_alternative<GenusExact>(cert) ? "exact" : "bounds";
  j["verified"] = witness ? Json(verify_expression(z, *witness)) : Json(nullptr);
  if (const auto* b = std::get_if<GenusBounds>(&cert)) j["budget_exceeded"] = b->budget_exceeded;
  return j;
}

std::string certificate_text(const Word& z, const GenusCertificate& cert) {
  if (const auto* nd = std::get_if<NotInDerivedGroup>(&cert)) {
    return "not in [F,F]: exponents " + join(nd->exponents, " ");
  }
  const std::optional<int> upper = certificate_upper(cert);
  const std::optional<CommutatorExpression> witness = certificate_witness(cert);
  std::string s = std::holds_alternative<GenusExact>(cert) ? "genus=" + std::to_string(*upper)
                                                            : "genus>=" + std::to_string(certificate_lower(cert)) +
                                                                  (upper ? " genus<=" + std::to_string(*upper) : "");
  if (witness) {
    s += " witness=" + expression_text(*witness) +
         " verified=" + yes_no(verify_expression(z, *witness));
  }
  if (const auto* b = std::get_if<GenusBounds>(&cert); b && b->budget_exceeded) s += " budget_exceeded";
  return s;
}

Json verdict_json(const Verdict& v) {
  Json j = Json::object();
  j["verdict"] = std::string(to_string(v.kind));
  Json bindings = Json::object();
  for (const Binding& b : v.bindings) {
    if (const Word* w = std::get_if<Word>(&b.value)) {
      bindings[b.name] = to_string(*w);
    } else {
      bindings[b.name] = std::get<long>(b.value);
    }
  }
  j["bindings"] = std::move(bindings);
  j["approximate"] = v.approximate;
  if (v.radius > 0 || v.kind == Verdict::Kind::BoundedSatisfied ||
      v.kind == Verdict::Kind::NoWitnessWithinBudget) {
    j["radius"] = v.radius;
  }
  j["substitution_verified"] = v.substitution_verified ? Json(*v.substitution_verified) : Json(nullptr);
  return j;
}

std::vector<std::string> verdict_text(const Verdict& v) {
  std::vector<std::string> lines{summary_line(v)};
  if (v.substitution_verified) {
    lines.push_back(std::string("substitution check: ") +
                    (*v.substitution_verified ? "verified" : "FAILED"));
  } else {
    lines.push_back("radius=" + std::to_string(v.radius) + " approximate=" + yes_no(v.approximate));
  }
  return lines;
}

Json ranks_json(const SzmielewRanks& r) { return Json{{"rho1", r.rho1}, {"rho2", r.rho2}, {"rho3", r.rho3}}; }

std::vector<Integer> parse_primes(const std::string& text) {
  std::vector<Integer> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw Error(ErrorKind::SyntaxError, "bad prime list: " + text);
    }
  }
  return out;
}

void add_common(CLI::App* app, Common& c, bool with_rank = true) {
  if (with_rank) {
    app->add_option("--rank", c.rank, "rank of the free group (default 2)")->check(CLI::Range(1, 26));
  }
  app->add_option("--format", c.format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  app->add_option("--jobs", c.jobs, "worker threads (default $FLG_JOBS or 1)")
      ->envname("FLG_JOBS")
      ->check(CLI::Range(1u, 256u));
  app->add_option("--seed", c.seed, "seed for randomized searches (default 1)");
  app->add_option("--out", c.out_path, "write output to this file instead of stdout");
  app->add_flag("--timing", c.timing, "include runtime in the report provenance");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"flg: free groups, commutator genus, Szmielew invariants and sentence templates", "flg"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  Common c;
  std::vector<Command> commands;
  auto ctx = [&c] { return GroupContext(c.rank); };
  auto leaf = [&](CLI::App* group, const std::string& name, const std::string& desc, Format fmt,
                  std::function<Report()> handler, bool with_rank = true) {
    CLI::App* sub = group->add_subcommand(name, desc);
    add_common(sub, c, with_rank);
    commands.push_back({sub, fmt, std::move(handler)});
    return sub;
  };

  // word
  CLI::App* word = app.add_subcommand("word", "free-group word arithmetic");
  word->require_subcommand(1);
  std::string w1, w2;
  {
    auto* sub = leaf(word, "reduce", "free reduction", Format::Text, [&] {
      Report r;
      r.command = "word reduce";
      r.parameters = {{"rank", c.rank}, {"word", w1}};
      const Word w = parse_word(w1, ctx());
      r.result = {{"reduced", to_string(w)}, {"length", w.size()}};
      r.text = {to_string(w)};
      return r;
    });
    sub->add_option("word", w1, "word in letters a-z/A-Z")->required();

    sub = leaf(word, "conj", "conjugacy test with witness g (g^-1 u g = v)", Format::Text, [&] {
      Report r;
      r.command = "word conj";
      r.parameters = {{"rank", c.rank}, {"u", w1}, {"v", w2}};
      const auto g = conjugator(parse_word(w1, ctx()), parse_word(w2, ctx()));
      r.result = {{"conjugate", g.has_value()}, {"conjugator", g ? Json(to_string(*g)) : Json(nullptr)}};
      r.text = {g ? "conjugate=yes g=" + to_string(*g) : "conjugate=no"};
      return r;
    });
    sub->add_option("u", w1)->required();
    sub->add_option("v", w2)->required();

    sub = leaf(word, "root", "unique root and exponent", Format::Text, [&] {
      Report r;
      r.command = "word root";
      r.parameters = {{"rank", c.rank}, {"word", w1}};
      const PowerDecomposition d = extract_root(parse_word(w1, ctx()));
      r.result = {{"root", to_string(d.root)}, {"exponent", d.exponent}};
      r.text = {"root=" + to_string(d.root) + " exp=" + std::to_string(d.exponent)};
      return r;
    });
    sub->add_option("word", w1)->required();

    sub = leaf(word, "expvec", "exponent-sum vector", Format::Text, [&] {
      Report r;
      r.command = "word expvec";
      r.parameters = {{"rank", c.rank}, {"word", w1}};
      const ExponentVector v = exponent_vector(parse_word(w1, ctx()), ctx());
      r.result = {{"exponents", v}};
      r.text = {"expvec=" + join(v, " ")};
      return r;
    });
    sub->add_option("word", w1)->required();
  }

  // auto
  CLI::App* aut = app.add_subcommand("auto", "Whitehead automorphisms (rank <= 4)");
  aut->require_subcommand(1);
  {
    auto* sub = leaf(aut, "primitive", "primitivity test", Format::Text, [&] {
      Report r;
      r.command = "auto primitive";
      r.parameters = {{"rank", c.rank}, {"word", w1}};
      const bool p = is_primitive(parse_word(w1, ctx()), ctx());
      r.result = {{"primitive", p}};
      r.text = {"primitive=" + yes_no(p)};
      return r;
    });
    sub->add_option("word", w1)->required();

    sub = leaf(aut, "minimize", "greedy Whitehead length minimization", Format::Text, [&] {
      Report r;
      r.command = "auto minimize";
      r.parameters = {{"rank", c.rank}, {"word", w1}};
      const MinimizationTrace t = minimize_length(parse_word(w1, ctx()), ctx());
      Json steps = Json::array();
      r.text.push_back("start=" + to_string(t.start));
      for (const auto& s : t.steps) {
        steps.push_back({{"automorphism", s.automorphism.describe()}, {"result", to_string(s.result)}});
        r.text.push_back("  " + s.automorphism.describe() + " => " + to_string(s.result));
      }
      r.text.push_back("final=" + to_string(t.final) + " length=" + std::to_string(t.final.size()));
      r.result = {{"start", to_string(t.start)}, {"steps", steps}, {"final", to_string(t.final)}};
      return r;
    });
    sub->add_option("word", w1)->required();
  }

  // abelian
  CLI::App* ab = app.add_subcommand("abelian", "abelian groups and Szmielew invariants");
  ab->require_subcommand(1);
  std::vector<std::string> relators;
  std::string element, g1, g2, primes;
  long p_opt = 2, k_opt = 1;
  {
    auto* sub = leaf(ab, "snf", "invariant factors of <generators; relator words>", Format::Text, [&] {
      Report r;
      r.command = "abelian snf";
      r.parameters = {{"rank", c.rank}, {"relators", relators}, {"element", element}};
      const GroupContext cx = ctx();
      IntMatrix m(static_cast<std::size_t>(c.rank));
      for (const std::string& rel : relators) {
        const ExponentVector v = exponent_vector(parse_word(rel, cx), cx);
        for (std::size_t i = 0; i < v.size(); ++i) m[i].push_back(v[i]);
      }
      const FgAbelianGroup g(static_cast<std::size_t>(c.rank), m);
      const AbelianDescriptor d = AbelianDescriptor::from(g.structure());
      r.result = {{"free_rank", g.structure().free_rank}, {"torsion", ints_json(g.structure().factors)},
                  {"group", to_string(d)}};
      r.text = {"group=" + to_string(d)};
      if (!element.empty()) {
        const ExponentVector v = exponent_vector(parse_word(element, cx), cx);
        const auto co = g.coordinates(std::vector<Integer>(v.begin(), v.end()));
        const Integer order = g.element_order(std::vector<Integer>(v.begin(), v.end()));
        r.result["element"] = {{"word", element},
                               {"torsion", ints_json(co.torsion)},
                               {"free", ints_json(co.free)},
                               {"order", order == 0 ? Json("infinite") : Json(order)}};
        r.text.push_back("element " + element + ": torsion=(" +
                         join(std::vector<long>(co.torsion.begin(), co.torsion.end()), ",") + ") free=(" +
                         join(std::vector<long>(co.free.begin(), co.free.end()), ",") +
                         ") order=" + (order == 0 ? std::string("infinite") : std::to_string(order)));
      }
      return r;
    });
    sub->add_option("relators", relators, "relator words");
    sub->add_option("--element", element, "word whose image to report");

    sub = leaf(ab, "ranks", "Szmielew ranks rho1..rho3 at (p, k)", Format::Text, [&] {
      Report r;
      r.command = "abelian ranks";
      r.parameters = {{"group", g1}, {"p", p_opt}, {"k", k_opt}};
      const AbelianDescriptor g = parse_abelian(g1);
      if (!is_prime(p_opt)) throw Error(ErrorKind::InvalidParams, "p must be prime");
      const SzmielewRanks s = szmielew_ranks(g, p_opt, static_cast<unsigned>(k_opt));
      const auto e = group_exponent(g);
      r.result = ranks_json(s);
      r.result["exponent"] = e ? Json(*e) : Json("infinite");
      r.text = {"rho1=" + std::to_string(s.rho1) + " rho2=" + std::to_string(s.rho2) +
                    " rho3=" + std::to_string(s.rho3),
                "exponent=" + (e ? std::to_string(*e) : std::string("infinite"))};
      return r;
    }, false);
    sub->add_option("group", g1, "descriptor such as \"Z^2 + Z/4\" or \"Z[1/2]\"")->required();
    sub->add_option("--p", p_opt, "prime")->check(CLI::PositiveNumber);
    sub->add_option("--k", k_opt, "exponent k >= 1")->check(CLI::PositiveNumber);

    sub = leaf(ab, "equiv", "elementary equivalence", Format::Text, [&] {
      Report r;
      r.command = "abelian equiv";
      r.parameters = {{"g", g1}, {"h", g2}};
      const AbelianDescriptor g = parse_abelian(g1), h = parse_abelian(g2);
      const bool eq = elementarily_equivalent(g, h);
      const auto points = relevant_prime_powers({&g, &h});
      const auto tg = rank_table(g, points), th = rank_table(h, points);
      Json diffs = Json::array();
      for (const auto& [key, value] : tg.entries) {
        const std::size_t other = th.entries.at(key);
        if (value == other) continue;
        diffs.push_back({{"p", std::get<0>(key)}, {"k", std::get<1>(key)}, {"i", std::get<2>(key)},
                         {"g", value}, {"h", other}});
      }
      r.result = {{"equivalent", eq},
                  {"exponent_g", tg.exponent ? Json(*tg.exponent) : Json("infinite")},
                  {"exponent_h", th.exponent ? Json(*th.exponent) : Json("infinite")},
                  {"differences", diffs}};
      r.text = {"equivalent=" + yes_no(eq)};
      for (const auto& d : diffs) {
        r.text.push_back("  rho" + std::to_string(d["i"].get<int>()) + "[" +
                         std::to_string(d["p"].get<long>()) + "," + std::to_string(d["k"].get<long>()) +
                         "]: " + std::to_string(d["g"].get<long>()) + " vs " +
                         std::to_string(d["h"].get<long>()));
      }
      if (static_cast<bool>(tg.exponent) != static_cast<bool>(th.exponent)) {
        r.text.push_back("  exponents differ: one finite, one infinite");
      }
      return r;
    }, false);
    sub->add_option("first", g1, "group descriptor")->required();
    sub->add_option("second", g2, "group descriptor")->required();

    sub = leaf(ab, "quotient", "order of Z[S^-1] / p^k", Format::Text, [&] {
      Report r;
      r.command = "abelian quotient";
      r.parameters = {{"primes", primes}, {"p", p_opt}, {"k", k_opt}};
      if (!is_prime(p_opt)) throw Error(ErrorKind::InvalidParams, "p must be prime");
      const PrimeSet s(parse_primes(primes));
      const Integer order = localized_quotient_structure(s, p_opt, static_cast<unsigned>(k_opt));
      r.result = {{"order", order}, {"cyclic", true}};
      r.text = {"quotient=" + (order == 1 ? std::string("0") : "Z/" + std::to_string(order))};
      return r;
    }, false);
    sub->add_option("--primes", primes, "comma-separated set S (empty for Z)");
    sub->add_option("--p", p_opt, "prime")->check(CLI::PositiveNumber);
    sub->add_option("--k", k_opt, "exponent k >= 1")->check(CLI::PositiveNumber);
  }

  // genus
  CLI::App* gen = app.add_subcommand("genus", "commutator genus (rank 2 for scans)");
  gen->require_subcommand(1);
  int gmax = 2, table_len = 5, max_len = 6, n_max = 4, g_opt = 1, n_opt = 2;
  {
    auto* sub = leaf(gen, "of", "genus certificate of a word", Format::Json, [&] {
      Report r;
      r.command = "genus of";
      r.parameters = {{"rank", c.rank}, {"word", w1}, {"gmax", gmax}, {"B", table_len}};
      const Word w = parse_word(w1, ctx());
      SearchParams sp;
      sp.g_max = gmax;
      sp.max_len = table_len;
      const GenusCertificate cert = genus(w, ctx(), sp);
      r.result = certificate_json(w, cert);
      r.text = {certificate_text(w, cert)};
      return r;
    });
    sub->add_option("word", w1)->required();
    sub->add_option("--gmax", gmax, "largest genus searched (1..3)")->check(CLI::Range(1, 3));
    sub->add_option("-B", table_len, "bound on |x|, |y| in the commutator table (1..8)")
        ->check(CLI::Range(1, 8));

    sub = leaf(gen, "wicks", "single-commutator test with split", Format::Text, [&] {
      Report r;
      r.command = "genus wicks";
      r.parameters = {{"rank", c.rank}, {"word", w1}};
      const CommutatorVerdict v = is_commutator(parse_word(w1, ctx()), ctx());
      if (v.kind == CommutatorVerdict::Kind::Yes) {
        const WicksSplit& s = *v.split;
        r.result = {{"commutator", true},
                    {"x", to_string(s.x)},
                    {"y", to_string(s.y)},
                    {"split", {to_string(s.a), to_string(s.b), to_string(s.c)}},
                    {"rotation", s.rotation}};
        r.text = {"commutator=yes x=" + to_string(s.x) + " y=" + to_string(s.y)};
      } else {
        const bool derived = v.kind == CommutatorVerdict::Kind::No;
        r.result = {{"commutator", false}, {"in_derived_group", derived}};
        r.text = {derived ? "commutator=no" : "commutator=no (not in [F,F])"};
      }
      return r;
    });
    sub->add_option("word", w1)->required();

    sub = leaf(gen, "dhscan", "scan z^n for n < 2 genus(z^n) over F_2", Format::Json, [&] {
      Report r;
      r.command = "genus dhscan";
      r.parameters = {{"L", max_len}, {"n_max", n_max}, {"gmax", gmax}, {"B", table_len}, {"jobs", c.jobs}};
      SearchParams sp;
      sp.g_max = gmax;
      sp.max_len = table_len;
      const ScanReport s = duncan_howie_scan(max_len, n_max, sp, c.jobs);
      Json violations = Json::array();
      std::size_t unchecked = 0;
      for (const ScanInstance& inst : s.instances) {
        const Word zn = power(inst.z, inst.n);
        Json rec = Json::object();
        rec["z"] = to_string(inst.z);
        rec["n"] = inst.n;
        const Json cj = certificate_json(zn, inst.certificate);
        rec["genus_lower"] = cj["genus_lower"];
        rec["genus_upper"] = cj["genus_upper"];
        rec["witness"] = cj["witness"];
        r.records.push_back(std::move(rec));
        if (!inst.checked) ++unchecked;
      }
      for (std::size_t i : s.violations) {
        violations.push_back({{"z", to_string(s.instances[i].z)}, {"n", s.instances[i].n}});
      }
      r.result = {{"instances", s.instances.size()},
                  {"checked", s.checked},
                  {"unchecked", unchecked},
                  {"violations", violations}};
      r.text = {"instances=" + std::to_string(s.instances.size()) + " checked=" +
                    std::to_string(s.checked) + " unchecked=" + std::to_string(unchecked),
                "violations=" + std::to_string(s.violations.size())};
      for (std::size_t i : s.violations) {
        r.text.push_back("  z=" + to_string(s.instances[i].z) + " n=" + std::to_string(s.instances[i].n));
      }
      return r;
    }, false);
    sub->add_option("-L", max_len, "largest |z|")->check(CLI::PositiveNumber);
    sub->add_option("--n-max", n_max, "largest exponent n")->check(CLI::Range(2, 64));
    sub->add_option("--gmax", gmax, "largest genus searched (1..3)")->check(CLI::Range(1, 3));
    sub->add_option("-B", table_len, "commutator table bound (1..8)")->check(CLI::Range(1, 8));

    sub = leaf(gen, "ftable", "certified lower bound for f(g, n) over F_2", Format::Json, [&] {
      Report r;
      r.command = "genus ftable";
      r.parameters = {{"g", g_opt}, {"n", n_opt}, {"L", max_len}, {"B", table_len}, {"jobs", c.jobs}};
      const FTableEntry e = f_lower_table(g_opt, n_opt, max_len, table_len, c.jobs);
      r.result = {{"g", e.g}, {"n", e.n}, {"f_lower", e.lower_bound ? Json(*e.lower_bound) : Json(nullptr)},
                  {"status", e.lower_bound ? "lower_bound" : "no_instances"}, {"instances", e.instances}};
      if (e.witness_z) {
        r.result["witness_z"] = to_string(*e.witness_z);
        r.result["power_certificate"] = certificate_json(power(*e.witness_z, n_opt), *e.power_certificate);
        r.result["z_certificate"] = certificate_json(*e.witness_z, *e.z_certificate);
      }
      r.text = {e.lower_bound ? "f(" + std::to_string(g_opt) + "," + std::to_string(n_opt) +
                                    ") >= " + std::to_string(*e.lower_bound) + " (z=" +
                                    to_string(*e.witness_z) + ")"
                              : "no instances"};
      r.text.push_back("instances=" + std::to_string(e.instances));
      return r;
    }, false);
    sub->add_option("--g", g_opt, "genus bound g (1..3)")->check(CLI::Range(1, 3));
    sub->add_option("--n", n_opt, "exponent n")->check(CLI::Range(1, 64));
    sub->add_option("-L", max_len, "largest |z|")->check(CLI::PositiveNumber);
    sub->add_option("-B", table_len, "commutator table bound (1..8)")->check(CLI::Range(1, 8));
  }

  // logic
  CLI::App* logic = app.add_subcommand("logic", "first-order sentences over free groups");
  logic->require_subcommand(1);
  std::string formula, tmpl, x0, x1, x2, x, u_opt, w_opt;
  int m_opt = 2, radius = 2, max_degree = 6;
  std::size_t max_evals = 50'000'000, samples = 200'000;
  auto template_params = [&]() -> TemplateParams {
    if (tmpl == "phi") return PhiN{n_opt};
    if (tmpl == "psi") return PsiPK{p_opt, static_cast<int>(k_opt)};
    if (tmpl == "pi") return PiP{p_opt};
    if (tmpl == "sigma") return SigmaGNK{g_opt, n_opt, static_cast<int>(k_opt)};
    const GroupContext cm(m_opt);
    ConjPair cp;
    cp.presentation.generators = m_opt;
    for (const std::string& rel : relators) cp.presentation.relators.push_back(parse_word(rel, cm));
    cp.u = parse_word(u_opt, cm);
    cp.w = parse_word(w_opt, cm);
    return cp;
  };
  {
    auto* sub = leaf(logic, "parse", "parse and print a formula", Format::Text, [&] {
      Report r;
      r.command = "logic parse";
      r.parameters = {{"formula", formula}};
      const FormulaPtr f = parse_formula(formula);
      const auto free = free_variables(*f);
      r.result = {{"formula", to_string(*f)}, {"free_variables", free}, {"sentence", free.empty()}};
      r.text = {to_string(*f)};
      return r;
    }, false);
    sub->add_option("formula", formula)->required();

    sub = leaf(logic, "classify", "prenex class", Format::Text, [&] {
      Report r;
      r.command = "logic classify";
      r.parameters = {{"formula", formula}};
      const PrenexClass pc = classify_prenex(*parse_formula(formula));
      r.result = {{"class", to_string(pc)}, {"universal", pc.universal}, {"level", pc.level}};
      r.text = {to_string(pc) + (pc.level == 0 ? " (= Sigma_0)" : "")};
      return r;
    }, false);
    sub->add_option("formula", formula)->required();

    sub = leaf(logic, "build", "build a sentence template", Format::Text, [&] {
      Report r;
      r.command = "logic build";
      const TemplateParams tp = template_params();
      r.parameters = {{"template", describe(tp)}};
      const TemplateSentences t = build_template(tp);
      const PrenexClass pc = classify_prenex(*t.sentence);
      r.result = {{"formula", to_string(*t.sentence)}, {"class", to_string(pc)}};
      r.text = {to_string(*t.sentence), "class=" + to_string(pc)};
      if (t.dual) {
        const PrenexClass dc = classify_prenex(*t.dual);
        r.result["dual"] = to_string(*t.dual);
        r.result["dual_class"] = to_string(dc);
        r.text.push_back(to_string(*t.dual));
        r.text.push_back("class=" + to_string(dc));
      }
      return r;
    }, false);
    sub->add_option("template", tmpl, "phi | psi | pi | sigma | conj")
        ->required()
        ->check(CLI::IsMember({"phi", "psi", "pi", "sigma", "conj"}));
    sub->add_option("--n", n_opt, "n (phi: n >= 2)")->check(CLI::PositiveNumber);
    sub->add_option("--p", p_opt, "prime p")->check(CLI::PositiveNumber);
    sub->add_option("--k", k_opt, "k >= 1")->check(CLI::PositiveNumber);
    sub->add_option("--g", g_opt, "g >= 1")->check(CLI::PositiveNumber);
    sub->add_option("--m", m_opt, "generator count of the presentation")->check(CLI::Range(1, 26));
    sub->add_option("--relator", relators, "relator word (repeatable)");
    sub->add_option("--u", u_opt, "word U");
    sub->add_option("--w", w_opt, "word W");

    sub = leaf(logic, "eval", "exact evaluation of phi / psi / pi at an instantiation", Format::Text, [&] {
      Report r;
      r.command = "logic eval";
      const GroupContext cx = ctx();
      Verdict v;
      if (tmpl == "phi") {
        r.parameters = {{"template", "phi"}, {"rank", c.rank}, {"n", n_opt}, {"x0", x0}, {"x1", x1}, {"x2", x2}};
        v = eval_phi_n(parse_word(x0, cx), parse_word(x1, cx), parse_word(x2, cx), n_opt);
      } else if (tmpl == "psi") {
        r.parameters = {{"template", "psi"}, {"rank", c.rank}, {"p", p_opt}, {"k", k_opt}, {"x0", x0}, {"x1", x1}};
        v = eval_psi_pk(parse_word(x0, cx), parse_word(x1, cx), p_opt, static_cast<int>(k_opt));
      } else {
        r.parameters = {{"template", "pi"}, {"rank", c.rank}, {"p", p_opt}, {"x", x}};
        v = eval_pi_p(parse_word(x, cx), p_opt);
      }
      r.result = verdict_json(v);
      r.text = verdict_text(v);
      return r;
    });
    sub->add_option("template", tmpl, "phi | psi | pi")->required()->check(CLI::IsMember({"phi", "psi", "pi"}));
    sub->add_option("--n", n_opt, "n >= 2")->check(CLI::PositiveNumber);
    sub->add_option("--p", p_opt, "prime p")->check(CLI::PositiveNumber);
    sub->add_option("--k", k_opt, "k >= 1")->check(CLI::PositiveNumber);
    sub->add_option("--x0", x0, "word for x0");
    sub->add_option("--x1", x1, "word for x1");
    sub->add_option("--x2", x2, "word for x2");
    sub->add_option("--x", x, "word for x (pi)");

    sub = leaf(logic, "check", "bounded model check on the ball of given radius", Format::Text, [&] {
      Report r;
      r.command = "logic check";
      r.parameters = {{"formula", formula}, {"rank", c.rank}, {"radius", radius}, {"max_evals", max_evals},
                      {"jobs", c.jobs}};
      BoundedCheckOptions opt;
      opt.max_evaluations = max_evals;
      opt.jobs = c.jobs;
      const Verdict v = bounded_check(parse_formula(formula), ctx(), radius, opt);
      r.result = verdict_json(v);
      r.text = verdict_text(v);
      return r;
    });
    sub->add_option("formula", formula)->required();
    sub->add_option("--radius", radius, "ball radius")->check(CLI::PositiveNumber);
    sub->add_option("--max-evals", max_evals, "matrix evaluation budget")->check(CLI::PositiveNumber);

    sub = leaf(logic, "separate", "finite symmetric quotient separating two conjugacy classes", Format::Text,
               [&] {
                 Report r;
                 r.command = "logic separate";
                 r.parameters = {{"rank", c.rank}, {"u", w1},         {"w", w2},
                                 {"max_degree", max_degree}, {"seed", c.seed}, {"samples", samples}};
                 SeparationOptions opt;
                 opt.max_degree = max_degree;
                 opt.seed = c.seed;
                 opt.samples_per_degree = samples;
                 const GroupContext cx = ctx();
                 const Word u = parse_word(w1, cx), w = parse_word(w2, cx);
                 const FiniteQuotientWitness fq = separate_conjugacy_finite(u, w, cx, opt);
                 Json images = Json::object();
                 r.text = {"degree=" + std::to_string(fq.degree)};
                 for (std::size_t g = 0; g < fq.images.size(); ++g) {
                   const std::string name = to_string(Word::generator(static_cast<Letter>(g + 1)));
                   images[name] = cycle_notation(fq.images[g]);
                   r.text.push_back(name + " -> " + cycle_notation(fq.images[g]));
                 }
                 r.result = {{"degree", fq.degree},
                             {"images", images},
                             {"cycle_type_u", fq.cycle_type_u},
                             {"cycle_type_w", fq.cycle_type_w}};
                 r.text.push_back("cycle types: [" + join(fq.cycle_type_u, ",") + "] vs [" +
                                  join(fq.cycle_type_w, ",") + "]");
                 return r;
               });
    sub->add_option("u", w1)->required();
    sub->add_option("w", w2)->required();
    sub->add_option("--max-degree", max_degree, "largest symmetric degree (2..8)")->check(CLI::Range(2, 8));
    sub->add_option("--samples", samples, "random tuples per non-exhaustive degree")->check(CLI::PositiveNumber);
  }

  // surface
  CLI::App* surf = app.add_subcommand("surface", "the surface group K = <a,b,c,d; aabbccdd>");
  surf->require_subcommand(1);
  std::vector<std::string> words;
  int m_index = 0, m_max = 10;
  const GroupContext k4(4);
  {
    auto* sub = leaf(surf, "dehn", "Dehn reduction trace", Format::Text, [&] {
      Report r;
      r.command = "surface dehn";
      r.parameters = {{"word", w1}};
      const DehnTrace t = dehn_reduce(parse_word(w1, k4));
      Json steps = Json::array();
      r.text.push_back("start=" + to_string(t.start));
      for (const DehnStep& s : t.steps) {
        steps.push_back({{"position", s.position},
                         {"replaced", to_string(s.replaced)},
                         {"replacement", to_string(s.replacement)}});
        r.text.push_back("  at " + std::to_string(s.position) + ": " + to_string(s.replaced) + " -> " +
                         to_string(s.replacement));
      }
      r.text.push_back("final=" + to_string(t.final) + " trivial=" + yes_no(t.final.empty()));
      r.result = {{"start", to_string(t.start)},
                  {"steps", steps},
                  {"conjugator", to_string(t.conjugator)},
                  {"final", to_string(t.final)},
                  {"trivial", t.final.empty()}};
      return r;
    }, false);
    sub->add_option("word", w1, "word over a-d")->required();

    sub = leaf(surf, "trivial", "word problem in K", Format::Text, [&] {
      Report r;
      r.command = "surface trivial";
      r.parameters = {{"word", w1}};
      const bool t = is_trivial_in_K(parse_word(w1, k4));
      r.result = {{"trivial", t}};
      r.text = {"trivial=" + yes_no(t)};
      return r;
    }, false);
    sub->add_option("word", w1, "word over a-d")->required();

    leaf(surf, "pieces", "small-cancellation check of the symmetrized relator set", Format::Text, [&] {
      Report r;
      r.command = "surface pieces";
      const std::size_t piece = max_piece_length();
      const bool c16 = 6 * piece < 8;
      r.result = {{"max_piece_length", piece},
                  {"relator_length", 8},
                  {"symmetrized_size", SurfacePresentation::instance().symmetrized().size()},
                  {"c_prime_one_sixth", c16}};
      r.text = {"max_piece_length=" + std::to_string(piece) + " relator_length=8",
                std::string("C'(1/6) ") + (c16 ? "holds" : "fails")};
      return r;
    }, false);

    sub = leaf(surf, "retract", "apply the retraction r_m onto <a, b>", Format::Text, [&] {
      Report r;
      r.command = "surface retract";
      r.parameters = {{"m", m_index}, {"words", words}};
      const Retraction ret = retraction(m_index);
      Json images = Json::array();
      for (const Word& img : ret.images) images.push_back(to_string(img));
      Json results = Json::array();
      for (const std::string& s : words) {
        const Word img = apply_retraction(ret, parse_word(s, k4));
        results.push_back({{"word", s}, {"image", to_string(img)}});
        r.text.push_back(s + " -> " + to_string(img));
      }
      r.result = {{"m", m_index}, {"generator_images", images}, {"images", results}};
      return r;
    }, false);
    sub->add_option("words", words, "words over a-d")->required();
    sub->add_option("--m", m_index, "retraction index m >= 0")->check(CLI::NonNegativeNumber);

    sub = leaf(surf, "separate", "smallest r_m killing no element of the set", Format::Text, [&] {
      Report r;
      r.command = "surface separate";
      r.parameters = {{"words", words}, {"m_max", m_max}};
      std::vector<Word> set;
      for (const std::string& s : words) set.push_back(parse_word(s, k4));
      const std::optional<int> m = find_separating_retraction(set, m_max);
      r.result = {{"found", m.has_value()}, {"m", m ? Json(*m) : Json(nullptr)}};
      r.text = {m ? "m=" + std::to_string(*m) : "not found for m <= " + std::to_string(m_max)};
      return r;
    }, false);
    sub->add_option("words", words, "words over a-d")->required();
    sub->add_option("--m-max", m_max, "largest m tried")->check(CLI::NonNegativeNumber);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    const CLI::App* shown = &app;
    for (const Command& cmd : commands) {
      if (cmd.app->parsed()) shown = cmd.app;
    }
    err << shown->help();
    return 2;
  }

  const Command* selected = nullptr;
  for (const Command& cmd : commands) {
    if (cmd.app->parsed()) selected = &cmd;
  }
  if (selected == nullptr) {
    err << app.help();
    return 2;
  }
  const Format format = c.format.empty() ? selected->default_format
                                         : (c.format == "json" ? Format::Json : Format::Text);

  std::string rendered;
  int code = 0;
  try {
    const auto start = std::chrono::steady_clock::now();
    Report r = selected->handler();
    if (c.timing) {
      r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    rendered = emit_report(r, format);
  } catch (const Error& e) {
    code = 1;
    if (format == Format::Json) {
      Report r;
      r.command = selected->app->get_parent()->get_name() + " " + selected->app->get_name();
      r.result["error"] = {{"kind", std::string(to_string(e.kind()))},
                           {"message", e.what()},
                           {"position", e.position() ? Json(*e.position()) : Json(nullptr)}};
      rendered = emit_report(r, format);
    } else {
      err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
      return code;
    }
  }

  if (!c.out_path.empty()) {
    std::ofstream file(c.out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << c.out_path << "\n";
      return 1;
    }
    file << rendered;
  } else {
    out << rendered;
  }
  return code;
}

}  // namespace flg::cli
