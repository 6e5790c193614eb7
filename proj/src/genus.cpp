#include "flg/genus.hpp"

#include <algorithm>

#include "flg/parallel.hpp"

namespace flg {

Word CommutatorExpression::value() const {
  WordBuilder b;
  for (const auto& [x, y] : pairs) b.append(commutator(x, y));
  return std::move(b).build();
}

bool verify_expression(const Word& z, const CommutatorExpression& expr) { return expr.value() == z; }

namespace {

bool is_zero(const ExponentVector& v) {
  return std::all_of(v.begin(), v.end(), [](long e) { return e == 0; });
}

Word rotated(const Word& w, std::size_t k) {
  std::vector<Letter> out(w.begin() + k, w.end());
  out.insert(out.end(), w.begin(), w.begin() + k);
  return Word::reduce(out);
}

// rot[at + i] == rot[start + len - 1 - i]^-1 for i < len.
bool inverse_block(const Word& rot, std::size_t start, std::size_t len, std::size_t at) {
  for (std::size_t i = 0; i < len; ++i) {
    if (rot[at + i] != -rot[start + len - 1 - i]) return false;
  }
  return true;
}

CommutatorExpression conjugated(const CommutatorExpression& e, const Word& h) {
  CommutatorExpression out;
  const Word hi = inverse(h);
  for (const auto& [x, y] : e.pairs) out.pairs.emplace_back(conjugate(x, hi), conjugate(y, hi));
  return out;
}

}  // namespace

CommutatorVerdict is_commutator(const Word& w, const GroupContext& ctx) {
  if (!is_zero(exponent_vector(w, ctx))) return {CommutatorVerdict::Kind::NotInDerivedGroup, {}};
  auto [outer, core] = cyclic_decompose(w);
  const std::size_t n = core.size();
  if (n == 0) return {CommutatorVerdict::Kind::Yes, WicksSplit{}};
  if (n % 2 != 0) return {CommutatorVerdict::Kind::No, {}};
  const std::size_t half = n / 2;

  for (std::size_t k = 0; k < n; ++k) {
    const Word rot = rotated(core, k);
    for (std::size_t la = half + 1; la-- > 0;) {
      for (std::size_t lb = half - la + 1; lb-- > 0;) {
        const std::size_t lc = half - la - lb;
        if (!inverse_block(rot, 0, la, half)) continue;
        if (!inverse_block(rot, la, lb, half + la)) continue;
        if (!inverse_block(rot, la + lb, lc, half + la + lb)) continue;

        WicksSplit s;
        s.a = rot.slice(0, la);
        s.b = rot.slice(la, lb);
        s.c = rot.slice(la + lb, lc);
        s.rotation = k;
        const Word h = multiply(outer, core.slice(0, k));
        const Word hi = inverse(h);
        if (s.c.empty()) {
          s.x = conjugate(s.a, hi);
          s.y = conjugate(s.b, hi);
        } else if (s.a.empty() || s.b.empty()) {
          s.x = conjugate(s.a.empty() ? s.b : s.a, hi);
          s.y = conjugate(s.c, hi);
        } else {
          s.x = conjugate(multiply(s.a, s.b), hi);
          s.y = conjugate(multiply(s.c, inverse(s.a)), hi);
        }
        return {CommutatorVerdict::Kind::Yes, std::move(s)};
      }
    }
  }
  return {CommutatorVerdict::Kind::No, {}};
}

std::vector<Word> words_up_to(const GroupContext& ctx, int n) {
  std::vector<Letter> alphabet;
  for (int g = 1; g <= ctx.rank(); ++g) {
    alphabet.push_back(g);
    alphabet.push_back(-g);
  }
  std::vector<Word> out{Word{}};
  std::size_t layer_begin = 0;
  for (int len = 1; len <= n; ++len) {
    const std::size_t layer_end = out.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (Letter l : alphabet) {
        const Word& base = out[i];
        if (!base.empty() && base.back() == -l) continue;
        std::vector<Letter> letters(base.begin(), base.end());
        letters.push_back(l);
        out.push_back(Word::reduce(letters));
      }
    }
    layer_begin = layer_end;
  }
  return out;
}

std::shared_ptr<const CommutatorTable> CommutatorTable::build(const GroupContext& ctx, int max_len,
                                                              std::size_t max_pairs) {
  const std::vector<Word> words = words_up_to(ctx, max_len);
  if (words.size() > max_pairs / std::max<std::size_t>(words.size(), 1)) {
    throw Error(ErrorKind::BudgetExceeded,
                "commutator table with B = " + std::to_string(max_len) + " needs " +
                    std::to_string(words.size()) + "^2 pairs, over the budget of " +
                    std::to_string(max_pairs));
  }
  auto table = std::shared_ptr<CommutatorTable>(new CommutatorTable(ctx, max_len));
  for (const Word& x : words) {
    for (const Word& y : words) {
      Word v = commutator(x, y);
      auto [it, inserted] = table->index_.try_emplace(v, table->values_.size());
      if (!inserted) continue;
      table->values_.push_back(std::move(v));
      table->witnesses_.emplace_back(x, y);
    }
  }
  return table;
}

const std::pair<Word, Word>* CommutatorTable::find(const Word& value) const {
  auto it = index_.find(value);
  return it == index_.end() ? nullptr : &witnesses_[it->second];
}

int certificate_lower(const GenusCertificate& c) {
  if (auto* e = std::get_if<GenusExact>(&c)) return e->genus;
  if (auto* b = std::get_if<GenusBounds>(&c)) return b->lower;
  return 0;
}

std::optional<int> certificate_upper(const GenusCertificate& c) {
  if (auto* e = std::get_if<GenusExact>(&c)) return e->genus;
  if (auto* b = std::get_if<GenusBounds>(&c)) return b->upper;
  return std::nullopt;
}

std::optional<CommutatorExpression> certificate_witness(const GenusCertificate& c) {
  if (auto* e = std::get_if<GenusExact>(&c)) return e->witness;
  if (auto* b = std::get_if<GenusBounds>(&c)) return b->witness;
  return std::nullopt;
}

GenusEngine::GenusEngine(const GroupContext& ctx, SearchParams params) : ctx_(ctx), params_(params) {
  if (params_.g_max < 1 || params_.g_max > 3) {
    throw Error(ErrorKind::InvalidParams, "g_max must lie in [1, 3]");
  }
  if (params_.max_len < 1 || params_.max_len > 8) {
    throw Error(ErrorKind::InvalidParams, "B must lie in [1, 8]");
  }
}

const CommutatorTable* GenusEngine::table() const {
  std::call_once(table_once_, [this] {
    try {
      table_ = CommutatorTable::build(ctx_, params_.max_len, params_.max_pairs);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
    }
  });
  return table_.get();
}

GenusCertificate GenusEngine::genus(const Word& w) const {
  ExponentVector ev = exponent_vector(w, ctx_);
  if (!is_zero(ev)) return NotInDerivedGroup{std::move(ev)};
  if (w.empty()) return GenusExact{0, {}, 0};

  const CommutatorVerdict wicks = is_commutator(w, ctx_);
  if (wicks.kind == CommutatorVerdict::Kind::Yes) {
    return GenusExact{1, CommutatorExpression{{{wicks.split->x, wicks.split->y}}}, 1};
  }

  GenusBounds bounds;
  bounds.lower = 2;
  bounds.search = params_;
  if (params_.g_max < 2) return bounds;

  const CommutatorTable* t = table();
  if (t == nullptr) {
    bounds.budget_exceeded = true;
    return bounds;
  }

  // Search the canonical conjugate so that conjugate inputs get identical answers.
  const auto [c, h] = canonical_with_conjugator(w);
  auto finish = [&](CommutatorExpression e) {
    e = conjugated(e, h);
    return e;
  };

  // Every rotation P^-1 c P of the core; a split there conjugates back by P.
  for (std::size_t k = 0; k < std::max<std::size_t>(c.size(), 1); ++k) {
    const Word rot = rotated(c, k);
    for (const Word& c1 : t->values()) {
      const Word rest = multiply(inverse(c1), rot);
      if (const auto* p2 = t->find(rest)) {
        const Word back = c.slice(0, k);
        return GenusExact{2, finish(conjugated({{*t->find(c1), *p2}}, back)), 2};
      }
    }
  }
  if (params_.g_max < 3) return bounds;

  if (t->size() > params_.max_probes / std::max<std::size_t>(t->size(), 1)) {
    bounds.budget_exceeded = true;
    return bounds;
  }
  for (const Word& c1 : t->values()) {
    const Word r1 = multiply(inverse(c1), c);
    for (const Word& c2 : t->values()) {
      const Word rest = multiply(inverse(c2), r1);
      if (const auto* p3 = t->find(rest)) {
        bounds.upper = 3;
        bounds.witness = finish({{*t->find(c1), *t->find(c2), *p3}});
        return bounds;
      }
    }
  }
  return bounds;
}

GenusCertificate genus(const Word& w, const GroupContext& ctx, const SearchParams& params) {
  return GenusEngine(ctx, params).genus(w);
}

std::vector<Word> derived_class_representatives(const GroupContext& ctx, int max_len) {
  std::vector<Word> reps;
  for (const Word& w : words_up_to(ctx, max_len)) {
    if (w.empty() || !is_cyclically_reduced(w)) continue;
    if (!is_zero(exponent_vector(w, ctx))) continue;
    const CyclicWord cw = canonical_cyclic(w);
    if (cw.word() != w) continue;
    if (canonical_cyclic(inverse(w)) < cw) continue;
    reps.push_back(w);
  }
  return reps;
}

ScanReport duncan_howie_scan(int max_len, int n_max, const SearchParams& params, unsigned jobs) {
  const auto start = std::chrono::steady_clock::now();
  const GroupContext f2(2);
  const GenusEngine engine(f2, params);

  ScanReport report;
  report.max_len = max_len;
  report.n_max = n_max;
  report.search = params;

  for (const Word& z : derived_class_representatives(f2, max_len)) {
    for (int n = 2; n <= n_max; ++n) {
      ScanInstance inst;
      inst.z = z;
      inst.n = n;
      report.instances.push_back(std::move(inst));
    }
  }

  auto certs = parallel_map(report.instances.size(), jobs, [&](std::size_t i) {
    const ScanInstance& inst = report.instances[i];
    return engine.genus(power(inst.z, inst.n));
  });

  for (std::size_t i = 0; i < report.instances.size(); ++i) {
    ScanInstance& inst = report.instances[i];
    inst.certificate = std::move(certs[i]);
    const std::optional<int> upper = certificate_upper(inst.certificate);
    if (!upper) {
      inst.note = "no certified upper bound within g_max";
      continue;
    }
    if (*upper > params.g_max) {
      inst.note = "upper bound exceeds g_max";
      continue;
    }
    inst.checked = true;
    ++report.checked;
    if (inst.n >= 2 * *upper) {
      inst.violation = true;
      inst.note = "n >= 2g";
      report.violations.push_back(i);
    }
  }
  report.runtime = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  return report;
}

FTableEntry f_lower_table(int g, int n, int max_len, int search_len, unsigned jobs) {
  if (g < 1 || n < 1 || max_len < 1) {
    throw Error(ErrorKind::InvalidParams, "g, n and L must be positive");
  }
  const GroupContext f2(2);
  SearchParams params;
  params.g_max = g;
  params.max_len = search_len;
  const GenusEngine engine(f2, params);

  const std::vector<Word> reps = derived_class_representatives(f2, max_len);
  struct Row {
    GenusCertificate power_cert;
    std::optional<GenusCertificate> z_cert;
  };
  auto rows = parallel_map(reps.size(), jobs, [&](std::size_t i) {
    Row row{engine.genus(power(reps[i], n)), std::nullopt};
    const std::optional<int> upper = certificate_upper(row.power_cert);
    if (upper && *upper <= g) row.z_cert = engine.genus(reps[i]);
    return row;
  });

  FTableEntry entry;
  entry.g = g;
  entry.n = n;
  entry.max_len = max_len;
  entry.search_len = search_len;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (!rows[i].z_cert) continue;
    ++entry.instances;
    const int lower = certificate_lower(*rows[i].z_cert);
    if (!entry.lower_bound || lower > *entry.lower_bound) {
      entry.lower_bound = lower;
      entry.witness_z = reps[i];
      entry.power_certificate = rows[i].power_cert;
      entry.z_certificate = rows[i].z_cert;
    }
  }
  return entry;
}

}  // namespace flg
