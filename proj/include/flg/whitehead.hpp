#pragma once

#include <span>
#include <string>
#include <vector>

#include "flg/word.hpp"

namespace flg {

inline constexpr int kMaxWhiteheadRank = 4;

enum class WhiteheadKind { TypeI, TypeII };

// Automorphism of F_r given by the images of the generators a_1..a_r.
class WhiteheadAutomorphism {
 public:
  // Signed permutation: generator i goes to letter image[i].
  static WhiteheadAutomorphism type_one(const GroupContext& ctx, std::span<const Letter> image);

  // Multiplier x; choice[i] for generator i+1 (ignored when |x| = i+1):
  // 0 -> y, 1 -> y x, 2 -> x^-1 y, 3 -> x^-1 y x.
  static WhiteheadAutomorphism type_two(const GroupContext& ctx, Letter multiplier,
                                        std::span<const int> choice);

  WhiteheadKind kind() const noexcept { return kind_; }
  const GroupContext& context() const noexcept { return ctx_; }
  const std::vector<Word>& images() const noexcept { return images_; }
  // Multiplier letter for Type II, 0 for Type I.
  Letter multiplier() const noexcept { return multiplier_; }

  bool is_identity() const;
  WhiteheadAutomorphism inverse() const;
  std::string describe() const;

 private:
  WhiteheadAutomorphism(WhiteheadKind kind, GroupContext ctx, std::vector<Word> images,
                        Letter multiplier);

  WhiteheadKind kind_;
  GroupContext ctx_;
  std::vector<Word> images_;
  Letter multiplier_ = 0;
};

// Nielsen reduction of a tuple; true iff it reduces to a signed permutation of
// the generators. Used to certify that enumerated maps are automorphisms.
bool is_free_basis(std::span<const Word> tuple, const GroupContext& ctx);

// All Type I maps (signed permutations, identity included) followed by all
// non-identity Type II maps, in a fixed order. Cached per rank.
const std::vector<WhiteheadAutomorphism>& enumerate_whitehead(const GroupContext& ctx);

// Homomorphic substitution of generator images, then free reduction.
Word apply_images(std::span<const Word> images, const Word& w);
Word apply_automorphism(const WhiteheadAutomorphism& aut, const Word& w);

struct MinimizationStep {
  WhiteheadAutomorphism automorphism;
  Word result;
};

struct MinimizationTrace {
  Word start;
  std::vector<MinimizationStep> steps;
  Word final;
};

MinimizationTrace minimize_length(const Word& w, const GroupContext& ctx);
bool is_primitive(const Word& w, const GroupContext& ctx);

}  // namespace flg
