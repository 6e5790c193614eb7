#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "flg/abelian.hpp"
#include "flg/word.hpp"

namespace flg {

// K = <a, b, c, d; aabbccdd>, written over F_4 with letters a..d / A..D.
class SurfacePresentation {
 public:
  static const SurfacePresentation& instance();

  const GroupContext& context() const noexcept { return ctx_; }
  const Word& relator() const noexcept { return relator_; }
  // Rotations of the relator followed by rotations of its inverse.
  const std::vector<Word>& symmetrized() const noexcept { return symmetrized_; }

 private:
  SurfacePresentation();

  GroupContext ctx_;
  Word relator_;
  std::vector<Word> symmetrized_;
};

struct DehnStep {
  std::size_t position = 0;
  Word replaced;
  Word replacement;
};

struct DehnTrace {
  Word start;
  std::vector<DehnStep> steps;
  // When no replacement applies the word is cyclically reduced, so final
  // equals conjugator^-1 * start * conjugator in K.
  Word conjugator;
  Word final;
};

DehnTrace dehn_reduce(const Word& w);
bool is_trivial_in_K(const Word& w);

// Longest common prefix of two distinct symmetrized relators.
std::size_t max_piece_length();

// Abelianization Z^4 / <(2,2,2,2)>.
FgAbelianGroup surface_abelianization();

// r_m: a -> a, b -> b, c -> c^m B c^-m, d -> c^m A c^-m with c = aabb.
struct Retraction {
  int m = 0;
  std::array<Word, 4> images;  // words over F_2
};

// Images of a relator-killing homomorphism K -> F_2.
bool relator_image_trivial(std::span<const Word> images);
// Identity on <a, b>.
bool fixes_free_factor(std::span<const Word> images);

Retraction retraction(int m);
Word apply_retraction(const Retraction& r, const Word& w);

// Smallest m in [0, m_max] such that r_m kills no element of S.
std::optional<int> find_separating_retraction(std::span<const Word> set, int m_max = 10);

}  // namespace flg
