#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "flg/error.hpp"

namespace flg {

using Integer = std::int64_t;
// Column j holds the exponent vector of relator j; rows are generators.
using IntMatrix = std::vector<std::vector<Integer>>;

bool is_prime(Integer n);

// Finite, sorted, duplicate-free set of primes.
class PrimeSet {
 public:
  PrimeSet() = default;
  explicit PrimeSet(std::vector<Integer> primes);

  const std::vector<Integer>& primes() const noexcept { return primes_; }
  bool contains(Integer p) const;
  bool empty() const noexcept { return primes_.empty(); }

  friend bool operator==(const PrimeSet&, const PrimeSet&) = default;

 private:
  std::vector<Integer> primes_;
};

// Z^free_rank + Z/d_1 + ... with d_1 | d_2 | ... and every d_i >= 2.
struct InvariantFactors {
  std::size_t free_rank = 0;
  std::vector<Integer> factors;

  friend bool operator==(const InvariantFactors&, const InvariantFactors&) = default;
};

// Quotient Z^n / (column span of a relation matrix), with coordinates.
class FgAbelianGroup {
 public:
  FgAbelianGroup(std::size_t generators, IntMatrix relations);

  std::size_t generators() const noexcept { return generators_; }
  const InvariantFactors& structure() const noexcept { return structure_; }

  // Image of an exponent vector: residues modulo each invariant factor,
  // followed by the free coordinates.
  struct Coordinates {
    std::vector<Integer> torsion;
    std::vector<Integer> free;
  };
  Coordinates coordinates(const std::vector<Integer>& element) const;
  // 0 means infinite order.
  Integer element_order(const std::vector<Integer>& element) const;

 private:
  std::size_t generators_;
  InvariantFactors structure_;
  // Rows of the left transform, split into torsion rows and free rows.
  std::vector<std::vector<Integer>> torsion_rows_;
  std::vector<std::vector<Integer>> free_rows_;
};

InvariantFactors invariant_factors(std::size_t generators, const IntMatrix& relations);

// Finite direct sum Z^f + (+) Z/d_j + (+) Z[S_l^-1].
struct AbelianDescriptor {
  std::size_t free_rank = 0;
  std::vector<Integer> cyclic;       // orders d_j >= 2 of cyclic summands
  std::vector<PrimeSet> localized;  // each term is Z[S^-1]

  static AbelianDescriptor from(const InvariantFactors& f);
  static AbelianDescriptor localization(PrimeSet s);

  friend bool operator==(const AbelianDescriptor&, const AbelianDescriptor&) = default;
};

// Grammar: sum of "Z", "Z^n", "Z/d", "Z[1/p1,...,1/pm]" joined by "+".
AbelianDescriptor parse_abelian(std::string_view text);
std::string to_string(const AbelianDescriptor& g);

struct SzmielewRanks {
  std::size_t rho1 = 0;
  std::size_t rho2 = 0;
  std::size_t rho3 = 0;

  friend bool operator==(const SzmielewRanks&, const SzmielewRanks&) = default;
};

SzmielewRanks szmielew_ranks(const AbelianDescriptor& g, Integer p, unsigned k);

// Exponent of the group; nullopt for infinite exponent.
std::optional<Integer> group_exponent(const AbelianDescriptor& g);

struct SzmielewRankTable {
  std::optional<Integer> exponent;
  std::map<std::tuple<Integer, unsigned, int>, std::size_t> entries;  // (p, k, i) -> rho^(i)
};

// The (p, k) pairs at which two groups can differ: primes of the torsion or of
// the localizations, k up to one past the largest prime-power exponent, plus
// the least prime outside that set.
std::vector<std::pair<Integer, unsigned>> relevant_prime_powers(
    const std::vector<const AbelianDescriptor*>& groups);

SzmielewRankTable rank_table(const AbelianDescriptor& g,
                             const std::vector<std::pair<Integer, unsigned>>& points);

bool elementarily_equivalent(const AbelianDescriptor& g, const AbelianDescriptor& h);

// Order of Z[S^-1] / p^k Z[S^-1].
Integer localized_quotient_structure(const PrimeSet& s, Integer p, unsigned k);

// A value in {0, 1, 2, ...} or infinity.
struct ExtendedNat {
  bool infinite = false;
  std::uint64_t value = 0;

  static ExtendedNat inf() { return {true, 0}; }
  static ExtendedNat of(std::uint64_t v) { return {false, v}; }
};

// Divisibility exponents indexed by prime; absent primes have exponent 0.
using CharacteristicSequence = std::map<Integer, ExtendedNat>;

PrimeSet localization_from_characteristic(const CharacteristicSequence& seq);

}  // namespace flg
