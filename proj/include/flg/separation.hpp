#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flg/word.hpp"

namespace flg {

// Permutation of {0, ..., n-1}: point i goes to perm[i].
using Permutation = std::vector<int>;

// Cycle lengths in decreasing order, fixed points included.
std::vector<int> cycle_type(const Permutation& p);
// Cycle notation on 1-based points, "()" for the identity.
std::string cycle_notation(const Permutation& p);

// Image of w under the right action: letters act left to right.
Permutation evaluate_permutation(const Word& w, const std::vector<Permutation>& images);

struct FiniteQuotientWitness {
  int degree = 0;
  std::vector<Permutation> images;  // one per generator of the context
  std::vector<int> cycle_type_u;
  std::vector<int> cycle_type_w;
};

struct SeparationOptions {
  int max_degree = 6;
  std::uint64_t seed = 1;
  // Degrees with at most this many generator tuples are searched exhaustively.
  std::size_t exhaustive_limit = 1'000'000;
  // Random tuples tried at each larger degree.
  std::size_t samples_per_degree = 200'000;
};

// Finds a homomorphism F_r -> Sym(n), 2 <= n <= max_degree, under which u and w
// have different cycle types.
FiniteQuotientWitness separate_conjugacy_finite(const Word& u, const Word& w,
                                                const GroupContext& ctx,
                                                const SeparationOptions& options = {});

}  // namespace flg
