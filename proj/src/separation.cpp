#include "flg/separation.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>

namespace flg {

std::vector<int> cycle_type(const Permutation& p) {
  std::vector<int> lengths;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.rbegin(), lengths.rend());
  return lengths;
}

std::string cycle_notation(const Permutation& p) {
  std::string s;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    s += "(";
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = true;
      if (j != i) s += " ";
      s += std::to_string(j + 1);
    }
    s += ")";
  }
  return s.empty() ? "()" : s;
}

namespace {

Permutation inverse_of(const Permutation& p) {
  Permutation inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return inv;
}

class Searcher {
 public:
  Searcher(const Word& u, const Word& w, int rank) : u_(u), w_(w), rank_(rank) {}

  // Images of u and w have different cycle types.
  bool separates(const std::vector<Permutation>& images) {
    inverses_.resize(images.size());
    for (std::size_t g = 0; g < images.size(); ++g) inverses_[g] = inverse_of(images[g]);
    return cycle_type(image(u_, images)) != cycle_type(image(w_, images));
  }

  Permutation image(const Word& word, const std::vector<Permutation>& images) const {
    const std::size_t n = images.front().size();
    Permutation out(n);
    for (std::size_t x = 0; x < n; ++x) {
      int pt = static_cast<int>(x);
      for (Letter l : word) {
        const auto g = static_cast<std::size_t>((l > 0 ? l : -l) - 1);
        pt = l > 0 ? images[g][pt] : inverses_[g][pt];
      }
      out[x] = pt;
    }
    return out;
  }

  int rank() const { return rank_; }

 private:
  const Word& u_;
  const Word& w_;
  int rank_;
  std::vector<Permutation> inverses_;
};

std::vector<Permutation> all_permutations(int n) {
  std::vector<Permutation> out;
  Permutation p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

FiniteQuotientWitness make_witness(Searcher& s, const Word& u, const Word& w,
                                   std::vector<Permutation> images) {
  FiniteQuotientWitness out;
  out.degree = static_cast<int>(images.front().size());
  out.cycle_type_u = cycle_type(s.image(u, images));
  out.cycle_type_w = cycle_type(s.image(w, images));
  out.images = std::move(images);
  return out;
}

}  // namespace

Permutation evaluate_permutation(const Word& w, const std::vector<Permutation>& images) {
  if (images.empty()) throw Error(ErrorKind::InvalidParams, "no generator images");
  if (w.max_generator() > static_cast<int>(images.size())) {
    throw Error(ErrorKind::ContextMismatch, "word uses a generator without an image");
  }
  Permutation out(images.front().size());
  std::iota(out.begin(), out.end(), 0);
  for (Letter l : w) {
    const Permutation& g = images[static_cast<std::size_t>((l > 0 ? l : -l) - 1)];
    const Permutation step = l > 0 ? g : inverse_of(g);
    for (int& pt : out) pt = step[static_cast<std::size_t>(pt)];
  }
  return out;
}

FiniteQuotientWitness separate_conjugacy_finite(const Word& u, const Word& w,
                                                const GroupContext& ctx,
                                                const SeparationOptions& options) {
  if (u.max_generator() > ctx.rank() || w.max_generator() > ctx.rank()) {
    throw Error(ErrorKind::ContextMismatch, "argument outside F_" + std::to_string(ctx.rank()));
  }
  if (options.max_degree < 2 || options.max_degree > 8) {
    throw Error(ErrorKind::InvalidParams, "max degree must lie in [2, 8]");
  }
  if (are_conjugate(u, w)) {
    throw Error(ErrorKind::ArgsConjugate,
                to_string(u) + " and " + to_string(w) + " are conjugate in F_" +
                    std::to_string(ctx.rank()));
  }
  const int r = ctx.rank();
  Searcher searcher(u, w, r);

  for (int n = 2; n <= options.max_degree; ++n) {
    const std::vector<Permutation> perms = all_permutations(n);
    // (n!)^r, saturating at the exhaustive limit.
    std::size_t tuples = 1;
    bool exhaustive = true;
    for (int g = 0; g < r && exhaustive; ++g) {
      if (tuples > options.exhaustive_limit / perms.size()) {
        exhaustive = false;
      } else {
        tuples *= perms.size();
      }
    }

    std::vector<Permutation> images(static_cast<std::size_t>(r));
    if (exhaustive) {
      // Mixed-radix counter, generator a varying fastest.
      std::vector<std::size_t> digit(static_cast<std::size_t>(r), 0);
      for (std::size_t t = 0; t < tuples; ++t) {
        for (std::size_t g = 0; g < digit.size(); ++g) images[g] = perms[digit[g]];
        if (searcher.separates(images)) return make_witness(searcher, u, w, images);
        for (std::size_t g = 0; g < digit.size(); ++g) {
          if (++digit[g] < perms.size()) break;
          digit[g] = 0;
        }
      }
    } else {
      std::mt19937_64 rng(options.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(n));
      for (std::size_t t = 0; t < options.samples_per_degree; ++t) {
        for (auto& img : images) img = perms[rng() % perms.size()];
        if (searcher.separates(images)) return make_witness(searcher, u, w, images);
      }
    }
  }
  throw Error(ErrorKind::NotFoundWithinBudget,
              "no separating image in Sym(n) for n <= " + std::to_string(options.max_degree));
}

}  // namespace flg
