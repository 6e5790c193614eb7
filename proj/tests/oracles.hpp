#pragma once

// Brute-force reference implementations used only by the tests. They follow
// the textbook definitions directly and share no code with the library beyond
// the Word type.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <thread>
#include <vector>

#include "flg/word.hpp"

namespace oracle {

using flg::Letter;
using flg::Word;

// Stack-based free reduction of a raw letter list.
inline std::vector<Letter> reduce(const std::vector<Letter>& raw) {
  std::vector<Letter> st;
  for (Letter l : raw) {
    if (!st.empty() && st.back() == -l) {
      st.pop_back();
    } else {
      st.push_back(l);
    }
  }
  return st;
}

inline std::vector<Letter> letters(const Word& w) { return {w.begin(), w.end()}; }

inline std::vector<Letter> inv(const std::vector<Letter>& w) {
  std::vector<Letter> out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
  return out;
}

inline std::vector<Letter> cat(std::initializer_list<std::vector<Letter>> parts) {
  std::vector<Letter> raw;
  for (const auto& p : parts) raw.insert(raw.end(), p.begin(), p.end());
  return reduce(raw);
}

// All reduced words of length <= n, by length.
inline std::vector<std::vector<Letter>> ball(int rank, int n) {
  std::vector<std::vector<Letter>> out{{}};
  std::size_t begin = 0;
  for (int len = 1; len <= n; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (int g = 1; g <= rank; ++g) {
        for (Letter l : {g, -g}) {
          if (!out[i].empty() && out[i].back() == -l) continue;
          auto w = out[i];
          w.push_back(l);
          out.push_back(std::move(w));
        }
      }
    }
    begin = end;
  }
  return out;
}

inline Word word(const std::vector<Letter>& w) { return Word::reduce(w); }

// Largest e such that w = r^e for some r with |r| <= |w|, and that r.
inline std::pair<std::vector<Letter>, long> root(const std::vector<Letter>& w, int rank) {
  std::pair<std::vector<Letter>, long> best{w, 1};
  if (w.empty()) return best;
  for (const auto& r : ball(rank, static_cast<int>(w.size()))) {
    if (r.empty()) continue;
    std::vector<Letter> p;
    for (long e = 1; e <= static_cast<long>(w.size()); ++e) {
      p = cat({p, r});
      if (p == w && e > best.second) best = {r, e};
    }
  }
  return best;
}

// u ~ v iff g^-1 u g = v for some g with |g| <= |u| + |v|.
inline bool conjugate(const std::vector<Letter>& u, const std::vector<Letter>& v, int rank) {
  for (const auto& g : ball(rank, static_cast<int>(u.size() + v.size()))) {
    if (cat({inv(g), u, g}) == v) return true;
  }
  return false;
}

// Encodes a reduced word over F_2 of length <= 8 as a dense index.
inline std::size_t encode_f2(const Letter* w, std::size_t n) {
  static const std::size_t offsets[] = {0, 1, 5, 21, 85, 341, 1365, 5461, 21845, 87381};
  std::size_t code = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Letter l = w[i];
    code = code * 4 + static_cast<std::size_t>(l == 1 ? 0 : l == -1 ? 1 : l == 2 ? 2 : 3);
  }
  return offsets[n] + code;
}

// Membership table for { [x, y] : |x|, |y| <= bound } restricted to values of
// length <= 8, over F_2. Evaluated by plain stack reduction on all pairs.
class CommutatorSet {
 public:
  explicit CommutatorSet(int bound, unsigned threads = std::max(1u, std::thread::hardware_concurrency())) {
    const auto words = ball(2, bound);
    std::vector<std::vector<char>> partial(threads, std::vector<char>(87381, 0));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        Letter st[64];
        auto& mark = partial[t];
        for (std::size_t i = t; i < words.size(); i += threads) {
          const auto& x = words[i];
          for (const auto& y : words) {
            std::size_t n = 0;
            auto push = [&](Letter l) {
              if (n && st[n - 1] == -l) {
                --n;
              } else {
                st[n++] = l;
              }
            };
            for (Letter l : x) push(l);
            for (Letter l : y) push(l);
            for (auto it = x.rbegin(); it != x.rend(); ++it) push(-*it);
            for (auto it = y.rbegin(); it != y.rend(); ++it) push(-*it);
            if (n <= 8) mark[encode_f2(st, n)] = 1;
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    marks_.assign(87381, 0);
    for (const auto& p : partial) {
      for (std::size_t i = 0; i < p.size(); ++i) marks_[i] |= p[i];
    }
  }

  bool contains(const Word& w) const {
    if (w.size() > 8) return false;
    return marks_[encode_f2(w.letters().data(), w.size())] != 0;
  }

 private:
  std::vector<char> marks_;
};

// Finite or rank-one-free abelian group Z^f + Z/d_1 + ... + Z/d_t (f <= 1),
// with elements as coordinate vectors (free coordinate first).
struct SmallAbelian {
  int free_rank = 0;
  std::vector<long> orders;

  std::size_t dim() const { return static_cast<std::size_t>(free_rank) + orders.size(); }

  std::vector<long> normalize(std::vector<long> x) const {
    for (std::size_t i = 0; i < orders.size(); ++i) {
      const std::size_t j = i + static_cast<std::size_t>(free_rank);
      x[j] = ((x[j] % orders[i]) + orders[i]) % orders[i];
    }
    return x;
  }

  bool is_zero(const std::vector<long>& x) const {
    const auto n = normalize(x);
    return std::all_of(n.begin(), n.end(), [](long v) { return v == 0; });
  }

  // x in mG: search for y with m*y = x, torsion coordinates coordinatewise.
  bool in_multiple(const std::vector<long>& x, long m) const {
    const auto n = normalize(x);
    if (free_rank && n[0] % m != 0) return false;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      const long target = n[i + static_cast<std::size_t>(free_rank)];
      bool found = false;
      for (long y = 0; y < orders[i] && !found; ++y) found = (m * y) % orders[i] == target;
      if (!found) return false;
    }
    return true;
  }

  // Order of x, 0 if infinite.
  long order(const std::vector<long>& x) const {
    const auto n = normalize(x);
    if (free_rank && n[0] != 0) return 0;
    long k = 1;
    std::vector<long> acc = n;
    while (!is_zero(acc)) {
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += n[i];
      ++k;
    }
    return k;
  }

  // Representatives: free coordinate in [0, box), torsion coordinates complete.
  std::vector<std::vector<long>> elements(long box) const {
    std::vector<std::vector<long>> out{{}};
    std::vector<long> ranges;
    if (free_rank) ranges.push_back(box);
    ranges.insert(ranges.end(), orders.begin(), orders.end());
    for (long r : ranges) {
      std::vector<std::vector<long>> next;
      for (const auto& v : out) {
        for (long c = 0; c < r; ++c) {
          auto w = v;
          w.push_back(c);
          next.push_back(std::move(w));
        }
      }
      out = std::move(next);
    }
    return out;
  }
};

// Every nonzero coefficient vector in [0, m)^t gives a combination that is not
// zero (strong = false) or not in mG (strong = true).
inline bool independent(const SmallAbelian& g, const std::vector<std::vector<long>>& family, long m,
                        bool strong) {
  const std::size_t t = family.size();
  std::vector<long> e(t, 0);
  for (;;) {
    std::size_t i = 0;
    while (i < t && ++e[i] == m) e[i++] = 0;
    if (i == t) return true;
    std::vector<long> sum(g.dim(), 0);
    for (std::size_t j = 0; j < t; ++j) {
      for (std::size_t c = 0; c < sum.size(); ++c) sum[c] += e[j] * family[j][c];
    }
    if (strong ? g.in_multiple(sum, m) : g.is_zero(sum)) return false;
  }
}

inline std::size_t max_family(const SmallAbelian& g, const std::vector<std::vector<long>>& pool, long m,
                              bool strong, std::vector<std::vector<long>>& family, std::size_t from) {
  std::size_t best = family.size();
  for (std::size_t i = from; i < pool.size(); ++i) {
    family.push_back(pool[i]);
    if (independent(g, family, m, strong)) best = std::max(best, max_family(g, pool, m, strong, family, i + 1));
    family.pop_back();
  }
  return best;
}

struct Ranks {
  std::size_t rho1, rho2, rho3;
};

// Szmielew ranks straight from the definitions: rho1 counts elements of order
// p^k independent mod p^k, rho2 any elements independent mod p^k in the
// strong sense, rho3 elements of order p^k independent in the strong sense.
inline Ranks szmielew(const SmallAbelian& g, long p, unsigned k) {
  long m = 1;
  for (unsigned i = 0; i < k; ++i) m *= p;
  const auto all = g.elements(m);
  std::vector<std::vector<long>> of_order, nonzero_mod;
  for (const auto& x : all) {
    if (g.order(x) == m) of_order.push_back(x);
    if (!g.in_multiple(x, m)) nonzero_mod.push_back(x);
  }
  std::vector<std::vector<long>> fam;
  Ranks r{};
  r.rho1 = max_family(g, of_order, m, false, fam, 0);
  r.rho2 = max_family(g, nonzero_mod, m, true, fam, 0);
  r.rho3 = max_family(g, of_order, m, true, fam, 0);
  return r;
}

inline Word random_word(std::mt19937_64& rng, int rank, std::size_t max_len, std::size_t min_len = 0) {
  std::uniform_int_distribution<std::size_t> len_dist(min_len, max_len);
  std::uniform_int_distribution<int> gen(1, rank);
  const std::size_t len = len_dist(rng);
  std::vector<Letter> w;
  while (w.size() < len) {
    Letter l = gen(rng) * ((rng() & 1) ? 1 : -1);
    if (!w.empty() && w.back() == -l) continue;
    w.push_back(l);
  }
  return Word::reduce(w);
}

// Image of generator `which` under a random product of elementary Nielsen
// moves applied to the standard basis.
inline Word random_primitive(std::mt19937_64& rng, int rank, int moves) {
  std::vector<std::vector<Letter>> basis;
  for (int g = 1; g <= rank; ++g) basis.push_back({g});
  std::uniform_int_distribution<int> pick(0, rank - 1);
  for (int s = 0; s < moves; ++s) {
    const int i = pick(rng);
    int j = pick(rng);
    if (rank > 1) {
      while (j == i) j = pick(rng);
    }
    switch (rng() % 5) {
      case 0: if (i != j) basis[i] = cat({basis[i], basis[j]}); break;
      case 1: if (i != j) basis[i] = cat({basis[i], inv(basis[j])}); break;
      case 2: if (i != j) basis[i] = cat({basis[j], basis[i]}); break;
      case 3: basis[i] = inv(basis[i]); break;
      default: std::swap(basis[i], basis[j]); break;
    }
  }
  return word(basis[static_cast<std::size_t>(pick(rng))]);
}

}  // namespace oracle
