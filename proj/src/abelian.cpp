#include "flg/abelian.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <set>

namespace flg {

namespace {

Integer checked_mul(Integer a, Integer b) {
  Integer r = 0;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw Error(ErrorKind::BudgetExceeded, "integer overflow in Smith normal form");
  }
  return r;
}

Integer checked_sub(Integer a, Integer b) {
  Integer r = 0;
  if (__builtin_sub_overflow(a, b, &r)) {
    throw Error(ErrorKind::BudgetExceeded, "integer overflow in Smith normal form");
  }
  return r;
}

Integer mod(Integer a, Integer m) { return ((a % m) + m) % m; }

unsigned valuation(Integer n, Integer p) {
  unsigned v = 0;
  n = n < 0 ? -n : n;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

Integer ipow(Integer base, unsigned e) {
  Integer r = 1;
  for (unsigned i = 0; i < e; ++i) r = checked_mul(r, base);
  return r;
}

// Smith normal form: returns the diagonal and the left transform U with
// U * A * V = diag for some unimodular V.
struct SmithForm {
  std::vector<Integer> diagonal;
  std::vector<std::vector<Integer>> left;
};

SmithForm smith_form(std::size_t n, IntMatrix a) {
  // no relators at all
  if (a.empty()) a.assign(n, {});
  const std::size_t m = a.empty() ? 0 : a.front().size();
  for (const auto& row : a) {
    if (row.size() != m) throw Error(ErrorKind::InvalidParams, "ragged relation matrix");
  }
  if (a.size() != n) throw Error(ErrorKind::InvalidParams, "relation matrix needs one row per generator");

  std::vector<std::vector<Integer>> u(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;

  auto row_sub = [&](std::size_t dst, std::size_t src, Integer q) {
    for (std::size_t j = 0; j < m; ++j) a[dst][j] = checked_sub(a[dst][j], checked_mul(q, a[src][j]));
    for (std::size_t j = 0; j < n; ++j) u[dst][j] = checked_sub(u[dst][j], checked_mul(q, u[src][j]));
  };
  auto col_sub = [&](std::size_t dst, std::size_t src, Integer q) {
    for (std::size_t i = 0; i < n; ++i) a[i][dst] = checked_sub(a[i][dst], checked_mul(q, a[i][src]));
  };

  std::vector<Integer> diagonal;
  for (std::size_t t = 0; t < std::min(n, m); ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = n, pj = m;
      for (std::size_t i = t; i < n; ++i) {
        for (std::size_t j = t; j < m; ++j) {
          if (a[i][j] != 0 && (pi == n || std::llabs(a[i][j]) < std::llabs(a[pi][pj]))) {
            pi = i;
            pj = j;
          }
        }
      }
      if (pi == n) return {diagonal, u};
      std::swap(a[t], a[pi]);
      std::swap(u[t], u[pi]);
      for (auto& row : a) std::swap(row[t], row[pj]);

      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (a[i][t] == 0) continue;
        row_sub(i, t, a[i][t] / a[t][t]);
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < m; ++j) {
        if (a[t][j] == 0) continue;
        col_sub(j, t, a[t][j] / a[t][t]);
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold an offending row into the pivot row and retry.
      std::size_t bad = n;
      for (std::size_t i = t + 1; i < n && bad == n; ++i) {
        for (std::size_t j = t + 1; j < m; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            bad = i;
            break;
          }
        }
      }
      if (bad != n) {
        row_sub(t, bad, -1);
        continue;
      }
      if (a[t][t] < 0) {
        for (auto& x : a[t]) x = -x;
        for (auto& x : u[t]) x = -x;
      }
      diagonal.push_back(a[t][t]);
      break;
    }
  }
  return {diagonal, u};
}

}  // namespace

bool is_prime(Integer n) {
  if (n < 2) return false;
  for (Integer d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeSet::PrimeSet(std::vector<Integer> primes) : primes_(std::move(primes)) {
  for (Integer p : primes_) {
    if (!is_prime(p)) throw Error(ErrorKind::UnsupportedGroup, std::to_string(p) + " is not prime");
  }
  std::sort(primes_.begin(), primes_.end());
  primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
}

bool PrimeSet::contains(Integer p) const { return std::binary_search(primes_.begin(), primes_.end(), p); }

FgAbelianGroup::FgAbelianGroup(std::size_t generators, IntMatrix relations)
    : generators_(generators) {
  SmithForm snf = smith_form(generators, std::move(relations));
  const std::size_t r = snf.diagonal.size();
  structure_.free_rank = generators - r;
  for (std::size_t i = 0; i < r; ++i) {
    if (snf.diagonal[i] == 1) continue;
    structure_.factors.push_back(snf.diagonal[i]);
    torsion_rows_.push_back(snf.left[i]);
  }
  for (std::size_t i = r; i < generators; ++i) free_rows_.push_back(snf.left[i]);
}

FgAbelianGroup::Coordinates FgAbelianGroup::coordinates(const std::vector<Integer>& element) const {
  if (element.size() != generators_) {
    throw Error(ErrorKind::InvalidParams, "element must have one entry per generator");
  }
  auto dot = [&](const std::vector<Integer>& row) {
    Integer s = 0;
    for (std::size_t j = 0; j < generators_; ++j) s += checked_mul(row[j], element[j]);
    return s;
  };
  Coordinates c;
  for (std::size_t i = 0; i < torsion_rows_.size(); ++i) {
    c.torsion.push_back(mod(dot(torsion_rows_[i]), structure_.factors[i]));
  }
  for (const auto& row : free_rows_) c.free.push_back(dot(row));
  return c;
}

Integer FgAbelianGroup::element_order(const std::vector<Integer>& element) const {
  const Coordinates c = coordinates(element);
  for (Integer x : c.free) {
    if (x != 0) return 0;
  }
  Integer order = 1;
  for (std::size_t i = 0; i < c.torsion.size(); ++i) {
    const Integer d = structure_.factors[i];
    order = std::lcm(order, d / std::gcd(d, c.torsion[i]));
  }
  return order;
}

InvariantFactors invariant_factors(std::size_t generators, const IntMatrix& relations) {
  return FgAbelianGroup(generators, relations).structure();
}

AbelianDescriptor AbelianDescriptor::from(const InvariantFactors& f) {
  return {f.free_rank, f.factors, {}};
}

AbelianDescriptor AbelianDescriptor::localization(PrimeSet s) { return {0, {}, {std::move(s)}}; }

namespace {

class DescriptorParser {
 public:
  explicit DescriptorParser(std::string_view text) : text_(text) {}

  AbelianDescriptor parse() {
    AbelianDescriptor g;
    skip();
    if (pos_ == text_.size()) fail("empty group descriptor");
    term(g);
    for (;;) {
      skip();
      if (pos_ == text_.size()) break;
      expect('+');
      term(g);
    }
    return g;
  }

 private:
  void term(AbelianDescriptor& g) {
    skip();
    expect('Z');
    if (peek() == '^') {
      ++pos_;
      g.free_rank += static_cast<std::size_t>(number());
    } else if (peek() == '/') {
      ++pos_;
      const Integer d = number();
      if (d == 0) fail("Z/0 is not a finite cyclic group; write Z");
      if (d >= 2) g.cyclic.push_back(d);
    } else if (peek() == '[') {
      ++pos_;
      std::vector<Integer> primes;
      for (;;) {
        skip();
        expect('1');
        expect('/');
        const Integer p = number();
        if (!is_prime(p)) {
          throw Error(ErrorKind::UnsupportedGroup,
                      "localization must list primes, got 1/" + std::to_string(p), pos_);
        }
        primes.push_back(p);
        skip();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        expect(']');
        break;
      }
      g.localized.emplace_back(std::move(primes));
    } else {
      g.free_rank += 1;
    }
  }

  Integer number() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    if (pos_ - start > 12) fail("number too large");
    return std::stoll(std::string(text_.substr(start, pos_ - start)));
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::SyntaxError, what + " at position " + std::to_string(pos_), pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

AbelianDescriptor parse_abelian(std::string_view text) { return DescriptorParser(text).parse(); }

std::string to_string(const AbelianDescriptor& g) {
  std::vector<std::string> terms;
  if (g.free_rank == 1) terms.emplace_back("Z");
  if (g.free_rank > 1) terms.push_back("Z^" + std::to_string(g.free_rank));
  for (Integer d : g.cyclic) terms.push_back("Z/" + std::to_string(d));
  for (const PrimeSet& s : g.localized) {
    if (s.empty()) {
      terms.emplace_back("Z");
      continue;
    }
    std::string t = "Z[";
    for (std::size_t i = 0; i < s.primes().size(); ++i) {
      if (i) t += ",";
      t += "1/" + std::to_string(s.primes()[i]);
    }
    terms.push_back(t + "]");
  }
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += " + ";
    out += terms[i];
  }
  return out;
}

// Closed forms for a direct sum of cyclic, free and localized terms, with
// v_j = v_p(d_j):
//   rho1 = #{j : v_j >= k}
//   rho2 = f + #{j : v_j >= k} + #{l : p not in S_l}
//   rho3 = #{j : v_j == k}
SzmielewRanks szmielew_ranks(const AbelianDescriptor& g, Integer p, unsigned k) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidParams, std::to_string(p) + " is not prime");
  if (k == 0) throw Error(ErrorKind::InvalidParams, "k must be positive");
  SzmielewRanks r;
  for (Integer d : g.cyclic) {
    const unsigned v = valuation(d, p);
    if (v >= k) ++r.rho1;
    if (v == k) ++r.rho3;
  }
  r.rho2 = g.free_rank + r.rho1;
  for (const PrimeSet& s : g.localized) {
    if (!s.contains(p)) ++r.rho2;
  }
  return r;
}

std::optional<Integer> group_exponent(const AbelianDescriptor& g) {
  if (g.free_rank > 0 || !g.localized.empty()) return std::nullopt;
  Integer e = 1;
  for (Integer d : g.cyclic) e = std::lcm(e, d);
  return e;
}

std::vector<std::pair<Integer, unsigned>> relevant_prime_powers(
    const std::vector<const AbelianDescriptor*>& groups) {
  std::map<Integer, unsigned> top;  // prime -> largest exponent seen
  for (const AbelianDescriptor* g : groups) {
    for (Integer d : g->cyclic) {
      Integer n = d;
      for (Integer q = 2; q * q <= n; ++q) {
        if (n % q != 0) continue;
        unsigned v = 0;
        while (n % q == 0) {
          n /= q;
          ++v;
        }
        top[q] = std::max(top[q], v);
      }
      if (n > 1) top[n] = std::max(top[n], 1u);
    }
    for (const PrimeSet& s : g->localized) {
      for (Integer q : s.primes()) top.try_emplace(q, 0u);
    }
  }
  Integer generic = 2;
  while (top.count(generic) != 0) {
    do {
      ++generic;
    } while (!is_prime(generic));
  }
  top.emplace(generic, 0u);

  std::vector<std::pair<Integer, unsigned>> points;
  for (const auto& [q, v] : top) {
    for (unsigned k = 1; k <= v + 1; ++k) points.emplace_back(q, k);
  }
  return points;
}

SzmielewRankTable rank_table(const AbelianDescriptor& g,
                             const std::vector<std::pair<Integer, unsigned>>& points) {
  SzmielewRankTable t;
  t.exponent = group_exponent(g);
  for (const auto& [p, k] : points) {
    const SzmielewRanks r = szmielew_ranks(g, p, k);
    t.entries[{p, k, 1}] = r.rho1;
    t.entries[{p, k, 2}] = r.rho2;
    t.entries[{p, k, 3}] = r.rho3;
  }
  return t;
}

bool elementarily_equivalent(const AbelianDescriptor& g, const AbelianDescriptor& h) {
  if (group_exponent(g) != group_exponent(h)) return false;
  const auto points = relevant_prime_powers({&g, &h});
  return rank_table(g, points).entries == rank_table(h, points).entries;
}

Integer localized_quotient_structure(const PrimeSet& s, Integer p, unsigned k) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidParams, std::to_string(p) + " is not prime");
  if (k == 0) throw Error(ErrorKind::InvalidParams, "k must be positive");
  return s.contains(p) ? 1 : ipow(p, k);
}

PrimeSet localization_from_characteristic(const CharacteristicSequence& seq) {
  std::vector<Integer> primes;
  for (const auto& [p, e] : seq) {
    if (e.infinite) primes.push_back(p);
  }
  return PrimeSet(std::move(primes));
}

}  // namespace flg
