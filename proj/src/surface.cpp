#include "flg/surface.hpp"

#include <stdexcept>

#include "flg/whitehead.hpp"

namespace flg {

namespace {

constexpr std::size_t kRelatorLength = 8;
// A match must cover strictly more than half of a relator.
constexpr std::size_t kMinMatch = kRelatorLength / 2 + 1;

Word rotation(const Word& w, std::size_t k) {
  std::vector<Letter> out(w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
  out.insert(out.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
  return Word::reduce(out);
}

void check_rank4(const Word& w) {
  if (w.max_generator() > 4) {
    throw Error(ErrorKind::ContextMismatch, "surface words use the letters a-d only");
  }
}

}  // namespace

SurfacePresentation::SurfacePresentation() : ctx_(4) {
  relator_ = Word::reduce(std::vector<Letter>{1, 1, 2, 2, 3, 3, 4, 4});
  for (const Word& base : {relator_, inverse(relator_)}) {
    for (std::size_t k = 0; k < base.size(); ++k) symmetrized_.push_back(rotation(base, k));
  }
}

const SurfacePresentation& SurfacePresentation::instance() {
  static const SurfacePresentation k;
  return k;
}

DehnTrace dehn_reduce(const Word& w) {
  check_rank4(w);
  const auto& rels = SurfacePresentation::instance().symmetrized();
  DehnTrace trace;
  trace.start = w;
  Word cur = w;
  for (;;) {
    // Leftmost position, then longest match, then first relator in order.
    std::optional<DehnStep> step;
    for (std::size_t pos = 0; pos < cur.size() && !step; ++pos) {
      std::size_t best_len = 0;
      const Word* best = nullptr;
      for (const Word& r : rels) {
        std::size_t len = 0;
        while (len < r.size() && pos + len < cur.size() && cur[pos + len] == r[len]) ++len;
        if (len >= kMinMatch && len > best_len) {
          best_len = len;
          best = &r;
        }
      }
      if (best) {
        step = DehnStep{pos, cur.slice(pos, best_len), inverse(best->slice(best_len, best->size() - best_len))};
      }
    }
    if (!step) {
      if (is_cyclically_reduced(cur)) break;
      auto [g, core] = cyclic_decompose(cur);
      trace.conjugator = multiply(trace.conjugator, g);
      cur = std::move(core);
      continue;
    }
    WordBuilder b;
    b.append(cur.slice(0, step->position));
    b.append(step->replacement);
    const std::size_t tail = step->position + step->replaced.size();
    b.append(cur.slice(tail, cur.size() - tail));
    cur = std::move(b).build();
    trace.steps.push_back(std::move(*step));
  }
  trace.final = std::move(cur);
  return trace;
}

bool is_trivial_in_K(const Word& w) { return dehn_reduce(w).final.empty(); }

std::size_t max_piece_length() {
  const auto& rels = SurfacePresentation::instance().symmetrized();
  std::size_t best = 0;
  for (std::size_t i = 0; i < rels.size(); ++i) {
    for (std::size_t j = 0; j < rels.size(); ++j) {
      if (i == j) continue;
      std::size_t len = 0;
      while (len < kRelatorLength && rels[i][len] == rels[j][len]) ++len;
      best = std::max(best, len);
    }
  }
  return best;
}

FgAbelianGroup surface_abelianization() {
  return FgAbelianGroup(4, IntMatrix{{2}, {2}, {2}, {2}});
}

bool relator_image_trivial(std::span<const Word> images) {
  if (images.size() != 4) return false;
  return apply_images(images, SurfacePresentation::instance().relator()).empty();
}

bool fixes_free_factor(std::span<const Word> images) {
  return images.size() == 4 && images[0] == Word::generator(1) && images[1] == Word::generator(2);
}

Retraction retraction(int m) {
  if (m < 0) throw Error(ErrorKind::InvalidParams, "retraction index must be nonnegative");
  const Word a = Word::generator(1), b = Word::generator(2);
  const Word cm = power(multiply(multiply(a, a), multiply(b, b)), m);
  Retraction r;
  r.m = m;
  r.images = {a, b, conjugate(inverse(b), inverse(cm)), conjugate(inverse(a), inverse(cm))};
  if (!relator_image_trivial(r.images) || !fixes_free_factor(r.images)) {
    throw std::logic_error("r_" + std::to_string(m) + " is not a retraction");
  }
  return r;
}

Word apply_retraction(const Retraction& r, const Word& w) {
  check_rank4(w);
  return apply_images(r.images, w);
}

std::optional<int> find_separating_retraction(std::span<const Word> set, int m_max) {
  if (m_max < 0) throw Error(ErrorKind::InvalidParams, "m range must be nonnegative");
  for (const Word& s : set) {
    if (is_trivial_in_K(s)) {
      throw Error(ErrorKind::TrivialElement, to_string(s) + " is trivial in K");
    }
  }
  for (int m = 0; m <= m_max; ++m) {
    const Retraction r = retraction(m);
    bool ok = true;
    for (const Word& s : set) {
      if (apply_retraction(r, s).empty()) {
        ok = false;
        break;
      }
    }
    if (ok) return m;
  }
  return std::nullopt;
}

}  // namespace flg
