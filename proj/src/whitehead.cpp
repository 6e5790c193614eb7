#include "flg/whitehead.hpp"

#include <array>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>

namespace flg {

namespace {

void require_rank(const GroupContext& ctx) {
  if (ctx.rank() > kMaxWhiteheadRank) {
    throw Error(ErrorKind::RankTooLarge, "Whitehead machinery supports rank <= 4, got " +
                                             std::to_string(ctx.rank()));
  }
}

}  // namespace

WhiteheadAutomorphism::WhiteheadAutomorphism(WhiteheadKind kind, GroupContext ctx,
                                             std::vector<Word> images, Letter multiplier)
    : kind_(kind), ctx_(ctx), images_(std::move(images)), multiplier_(multiplier) {
  if (!is_free_basis(images_, ctx_)) {
    throw Error(ErrorKind::InvalidParams, "generator images are not a free basis: " + describe());
  }
}

WhiteheadAutomorphism WhiteheadAutomorphism::type_one(const GroupContext& ctx,
                                                      std::span<const Letter> image) {
  if (image.size() != static_cast<std::size_t>(ctx.rank())) {
    throw Error(ErrorKind::InvalidParams, "Type I image must list one letter per generator");
  }
  std::vector<Word> images;
  for (Letter l : image) images.push_back(free_reduce(std::array{l}, ctx));
  return WhiteheadAutomorphism(WhiteheadKind::TypeI, ctx, std::move(images), 0);
}

WhiteheadAutomorphism WhiteheadAutomorphism::type_two(const GroupContext& ctx, Letter multiplier,
                                                      std::span<const int> choice) {
  if (!ctx.valid(multiplier) || choice.size() != static_cast<std::size_t>(ctx.rank())) {
    throw Error(ErrorKind::InvalidParams, "malformed Type II specification");
  }
  const Word x = Word::generator(multiplier);
  const Word xi = flg::inverse(x);
  std::vector<Word> images;
  for (int g = 1; g <= ctx.rank(); ++g) {
    const Word y = Word::generator(g);
    if (g == std::abs(multiplier)) {
      images.push_back(y);
      continue;
    }
    switch (choice[static_cast<std::size_t>(g - 1)]) {
      case 0: images.push_back(y); break;
      case 1: images.push_back(multiply(y, x)); break;
      case 2: images.push_back(multiply(xi, y)); break;
      case 3: images.push_back(conjugate(y, x)); break;
      default: throw Error(ErrorKind::InvalidParams, "Type II choice must be 0..3");
    }
  }
  return WhiteheadAutomorphism(WhiteheadKind::TypeII, ctx, std::move(images), multiplier);
}

bool WhiteheadAutomorphism::is_identity() const {
  for (int g = 1; g <= ctx_.rank(); ++g) {
    if (images_[static_cast<std::size_t>(g - 1)] != Word::generator(g)) return false;
  }
  return true;
}

WhiteheadAutomorphism WhiteheadAutomorphism::inverse() const {
  if (kind_ == WhiteheadKind::TypeI) {
    std::vector<Letter> inv(static_cast<std::size_t>(ctx_.rank()));
    for (int g = 1; g <= ctx_.rank(); ++g) {
      const Letter l = images_[static_cast<std::size_t>(g - 1)].front();
      inv[static_cast<std::size_t>(std::abs(l) - 1)] = l > 0 ? g : -g;
    }
    return type_one(ctx_, inv);
  }
  // y -> x^e y x^f is undone by multiplier x^-1 with the same shape.
  std::vector<int> choice(static_cast<std::size_t>(ctx_.rank()), 0);
  const Word x = Word::generator(multiplier_);
  for (int g = 1; g <= ctx_.rank(); ++g) {
    if (g == std::abs(multiplier_)) continue;
    const Word& img = images_[static_cast<std::size_t>(g - 1)];
    const Word y = Word::generator(g);
    int c = 0;
    if (img == multiply(y, x)) c = 1;
    else if (img == multiply(flg::inverse(x), y)) c = 2;
    else if (img == flg::conjugate(y, x)) c = 3;
    choice[static_cast<std::size_t>(g - 1)] = c;
  }
  return type_two(ctx_, -multiplier_, choice);
}

std::string WhiteheadAutomorphism::describe() const {
  std::string s;
  for (int g = 1; g <= ctx_.rank(); ++g) {
    if (!s.empty()) s += ", ";
    s += to_string(Word::generator(g)) + "->" + to_string(images_[static_cast<std::size_t>(g - 1)]);
  }
  return s;
}

bool is_free_basis(std::span<const Word> tuple, const GroupContext& ctx) {
  if (tuple.size() != static_cast<std::size_t>(ctx.rank())) return false;
  std::vector<Word> t(tuple.begin(), tuple.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i].empty()) return false;
      for (std::size_t j = 0; j < t.size() && !changed; ++j) {
        if (i == j) continue;
        const Word vj = t[j];
        const Word vji = inverse(vj);
        for (const Word* v : {&vj, &vji}) {
          Word right = multiply(t[i], *v);
          if (right.size() < t[i].size()) {
            t[i] = std::move(right);
            changed = true;
            break;
          }
          Word left = multiply(*v, t[i]);
          if (left.size() < t[i].size()) {
            t[i] = std::move(left);
            changed = true;
            break;
          }
        }
      }
    }
  }
  std::vector<bool> seen(t.size() + 1, false);
  for (const Word& w : t) {
    if (w.size() != 1) return false;
    const auto g = static_cast<std::size_t>(std::abs(w.front()));
    if (g > t.size() || seen[g]) return false;
    seen[g] = true;
  }
  return true;
}

namespace {

std::vector<WhiteheadAutomorphism> build_whitehead(const GroupContext& ctx) {
  const int r = ctx.rank();
  std::vector<WhiteheadAutomorphism> out;

  std::vector<int> perm(static_cast<std::size_t>(r));
  std::iota(perm.begin(), perm.end(), 1);
  do {
    for (int signs = 0; signs < (1 << r); ++signs) {
      std::vector<Letter> image(static_cast<std::size_t>(r));
      for (int i = 0; i < r; ++i) {
        const int p = perm[static_cast<std::size_t>(i)];
        image[static_cast<std::size_t>(i)] = (signs >> i) & 1 ? -p : p;
      }
      out.push_back(WhiteheadAutomorphism::type_one(ctx, image));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  for (int g = 1; g <= r; ++g) {
    for (Letter x : {g, -g}) {
      int combos = 1;
      for (int i = 1; i < r; ++i) combos *= 4;
      for (int code = 1; code < combos; ++code) {
        std::vector<int> choice(static_cast<std::size_t>(r), 0);
        int rest = code;
        for (int y = 1; y <= r; ++y) {
          if (y == g) continue;
          choice[static_cast<std::size_t>(y - 1)] = rest % 4;
          rest /= 4;
        }
        out.push_back(WhiteheadAutomorphism::type_two(ctx, x, choice));
      }
    }
  }
  return out;
}

}  // namespace

const std::vector<WhiteheadAutomorphism>& enumerate_whitehead(const GroupContext& ctx) {
  require_rank(ctx);
  static std::mutex mutex;
  static std::map<int, std::vector<WhiteheadAutomorphism>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(ctx.rank());
  if (it == cache.end()) it = cache.emplace(ctx.rank(), build_whitehead(ctx)).first;
  return it->second;
}

Word apply_images(std::span<const Word> images, const Word& w) {
  WordBuilder b;
  for (Letter l : w) {
    const Word& img = images[static_cast<std::size_t>(std::abs(l) - 1)];
    if (l > 0) b.append(img);
    else b.append_inverse(img);
  }
  return std::move(b).build();
}

Word apply_automorphism(const WhiteheadAutomorphism& aut, const Word& w) {
  if (w.max_generator() > aut.context().rank()) {
    throw Error(ErrorKind::ContextMismatch, "word " + to_string(w) +
                                                " uses generators beyond rank " +
                                                std::to_string(aut.context().rank()));
  }
  return apply_images(aut.images(), w);
}

MinimizationTrace minimize_length(const Word& w, const GroupContext& ctx) {
  const auto& auts = enumerate_whitehead(ctx);
  if (w.max_generator() > ctx.rank()) {
    throw Error(ErrorKind::ContextMismatch, "word uses generators beyond the context rank");
  }
  MinimizationTrace trace{w, {}, w};
  bool improved = true;
  while (improved) {
    improved = false;
    for (const auto& aut : auts) {
      Word image = apply_images(aut.images(), trace.final);
      if (image.size() < trace.final.size()) {
        trace.final = image;
        trace.steps.push_back({aut, std::move(image)});
        improved = true;
        break;
      }
    }
  }
  return trace;
}

bool is_primitive(const Word& w, const GroupContext& ctx) {
  if (w.empty()) throw Error(ErrorKind::EmptyWord, "primitivity of the identity is undefined");
  if (ctx.rank() > kMaxWhiteheadRank) {
    throw Error(ErrorKind::RankTooLarge, "Whitehead machinery supports rank <= 4");
  }
  long g = 0;
  for (long e : exponent_vector(w, ctx)) g = std::gcd(g, e);
  if (g != 1) return false;
  return minimize_length(w, ctx).final.size() == 1;
}

}  // namespace flg
