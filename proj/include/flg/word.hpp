#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flg/error.hpp"

namespace flg {

// Signed generator index: +i is the i-th generator, -i its inverse.
using Letter = int;

inline constexpr int kMaxRank = 26;

// Rank of the ambient free group F_r.
class GroupContext {
 public:
  explicit GroupContext(int rank);

  int rank() const noexcept { return rank_; }
  bool valid(Letter l) const noexcept { return l != 0 && l >= -rank_ && l <= rank_; }

  friend bool operator==(const GroupContext&, const GroupContext&) = default;

 private:
  int rank_;
};

// Position of a letter in the total order 1 < -1 < 2 < -2 < ...
constexpr int letter_key(Letter l) noexcept { return l > 0 ? 2 * l - 1 : -2 * l; }

// Freely reduced word. The letter sequence never contains an adjacent pair (x, -x).
class Word {
 public:
  Word() = default;

  // Free reduction of an arbitrary letter sequence; letters are not range-checked.
  static Word reduce(std::span<const Letter> letters);
  static Word generator(Letter l) { return Word(std::vector<Letter>{l}); }

  std::span<const Letter> letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }
  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }

  // Largest |letter|; 0 for the identity.
  int max_generator() const noexcept;

  // Subword [pos, pos + len); always freely reduced.
  Word slice(std::size_t pos, std::size_t len) const;

  friend bool operator==(const Word&, const Word&) = default;
  // Lexicographic under letter_key.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

 private:
  explicit Word(std::vector<Letter> reduced) : letters_(std::move(reduced)) {}
  friend class WordBuilder;

  std::vector<Letter> letters_;
};

// Shorter words first, ties broken lexicographically.
bool shortlex_less(const Word& a, const Word& b);

// Accumulates letters while keeping the buffer freely reduced.
class WordBuilder {
 public:
  WordBuilder() = default;
  void reserve(std::size_t n) { letters_.reserve(n); }
  void push(Letter l);
  void append(const Word& w);
  void append_inverse(const Word& w);
  std::size_t size() const noexcept { return letters_.size(); }
  Word build() && { return Word(std::move(letters_)); }

 private:
  std::vector<Letter> letters_;
};

Word free_reduce(std::span<const Letter> letters, const GroupContext& ctx);

Word multiply(const Word& u, const Word& v);
Word inverse(const Word& w);
// g^-1 w g
Word conjugate(const Word& w, const Word& g);
// x y x^-1 y^-1
Word commutator(const Word& x, const Word& y);
Word power(const Word& w, long exponent);

enum class GroupOp { Multiply, Invert, Conjugate, Commutator };
Word group_op(GroupOp op, std::span<const Word> args);

// w = conjugator * core * conjugator^-1 with core cyclically reduced.
struct CyclicDecomposition {
  Word conjugator;
  Word core;
};
CyclicDecomposition cyclic_decompose(const Word& w);

bool is_cyclically_reduced(const Word& w);

// Conjugacy class representative: least rotation of the cyclic reduction.
class CyclicWord {
 public:
  CyclicWord() = default;
  explicit CyclicWord(const Word& w);

  const Word& word() const noexcept { return rep_; }
  std::size_t size() const noexcept { return rep_.size(); }

  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;
  friend auto operator<=>(const CyclicWord& a, const CyclicWord& b) { return a.rep_ <=> b.rep_; }

 private:
  Word rep_;
};

CyclicWord canonical_cyclic(const Word& w);

// Canonical rotation c of the cyclic core of w together with g such that
// c = g^-1 w g.
std::pair<Word, Word> canonical_with_conjugator(const Word& w);

// Returns g with g^-1 u g = v when u and v are conjugate. Among the
// candidates z*g (z in the centralizer of u) the shortlex-least is chosen.
std::optional<Word> conjugator(const Word& u, const Word& v);
bool are_conjugate(const Word& u, const Word& v);

using ExponentVector = std::vector<long>;
ExponentVector exponent_vector(const Word& w, const GroupContext& ctx);

struct PowerDecomposition {
  Word root;
  long exponent = 1;

  friend bool operator==(const PowerDecomposition&, const PowerDecomposition&) = default;
};

PowerDecomposition extract_root(const Word& w);
bool is_proper_power(const Word& w);

// If x is a power of the root r (x = r^s) returns s, otherwise nullopt.
std::optional<long> log_base(const Word& r, const Word& x);

// Text form: a..z generators, A..Z inverses, "1" for the identity.
std::string to_string(const Word& w);
Word parse_word(std::string_view text, const GroupContext& ctx);

}  // namespace flg

template <>
struct std::hash<flg::Word> {
  std::size_t operator()(const flg::Word& w) const noexcept;
};
