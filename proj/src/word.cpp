#include "flg/word.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace flg {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidLetter: return "InvalidLetter";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::EmptyWord: return "EmptyWord";
    case ErrorKind::RankTooLarge: return "RankTooLarge";
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::UnsupportedGroup: return "UnsupportedGroup";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::NotPrenex: return "NotPrenex";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::ArgsConjugate: return "ArgsConjugate";
    case ErrorKind::NotFoundWithinBudget: return "NotFoundWithinBudget";
    case ErrorKind::TrivialElement: return "TrivialElement";
  }
  return "Unknown";
}

GroupContext::GroupContext(int rank) : rank_(rank) {
  if (rank < 1 || rank > kMaxRank) {
    throw Error(ErrorKind::InvalidParams,
                "rank must lie in [1, 26], got " + std::to_string(rank));
  }
}

void WordBuilder::push(Letter l) {
  if (!letters_.empty() && letters_.back() == -l) {
    letters_.pop_back();
  } else {
    letters_.push_back(l);
  }
}

void WordBuilder::append(const Word& w) {
  for (Letter l : w) push(l);
}

void WordBuilder::append_inverse(const Word& w) {
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) push(-*it);
}

Word Word::reduce(std::span<const Letter> letters) {
  WordBuilder b;
  b.reserve(letters.size());
  for (Letter l : letters) b.push(l);
  return std::move(b).build();
}

int Word::max_generator() const noexcept {
  int m = 0;
  for (Letter l : letters_) m = std::max(m, std::abs(l));
  return m;
}

Word Word::slice(std::size_t pos, std::size_t len) const {
  return Word(std::vector<Letter>(letters_.begin() + pos, letters_.begin() + pos + len));
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int ka = letter_key(a[i]);
    const int kb = letter_key(b[i]);
    if (ka != kb) return ka <=> kb;
  }
  return a.size() <=> b.size();
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

Word free_reduce(std::span<const Letter> letters, const GroupContext& ctx) {
  for (Letter l : letters) {
    if (!ctx.valid(l)) {
      throw Error(ErrorKind::InvalidLetter, "letter " + std::to_string(l) +
                                                " outside rank " + std::to_string(ctx.rank()));
    }
  }
  return Word::reduce(letters);
}

Word multiply(const Word& u, const Word& v) {
  WordBuilder b;
  b.reserve(u.size() + v.size());
  b.append(u);
  b.append(v);
  return std::move(b).build();
}

Word inverse(const Word& w) {
  WordBuilder b;
  b.reserve(w.size());
  b.append_inverse(w);
  return std::move(b).build();
}

Word conjugate(const Word& w, const Word& g) {
  WordBuilder b;
  b.append_inverse(g);
  b.append(w);
  b.append(g);
  return std::move(b).build();
}

Word commutator(const Word& x, const Word& y) {
  WordBuilder b;
  b.reserve(2 * (x.size() + y.size()));
  b.append(x);
  b.append(y);
  b.append_inverse(x);
  b.append_inverse(y);
  return std::move(b).build();
}

Word power(const Word& w, long exponent) {
  const Word base = exponent < 0 ? inverse(w) : w;
  const long count = exponent < 0 ? -exponent : exponent;
  WordBuilder b;
  for (long i = 0; i < count; ++i) b.append(base);
  return std::move(b).build();
}

Word group_op(GroupOp op, std::span<const Word> args) {
  const std::size_t want = op == GroupOp::Invert ? 1 : 2;
  if (args.size() != want) {
    throw Error(ErrorKind::ArityMismatch, "operation expects " + std::to_string(want) +
                                              " argument(s), got " + std::to_string(args.size()));
  }
  switch (op) {
    case GroupOp::Multiply: return multiply(args[0], args[1]);
    case GroupOp::Invert: return inverse(args[0]);
    case GroupOp::Conjugate: return conjugate(args[0], args[1]);
    case GroupOp::Commutator: return commutator(args[0], args[1]);
  }
  return {};
}

CyclicDecomposition cyclic_decompose(const Word& w) {
  std::size_t i = 0;
  std::size_t j = w.size();
  while (j - i >= 2 && w[i] == -w[j - 1]) {
    ++i;
    --j;
  }
  return {w.slice(0, i), w.slice(i, j - i)};
}

bool is_cyclically_reduced(const Word& w) { return w.size() < 2 || w.front() != -w.back(); }

namespace {

// Least rotation of a cyclically reduced word and its offset.
std::size_t least_rotation(const Word& w) {
  const std::size_t n = w.size();
  std::size_t best = 0;
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      const int a = letter_key(w[(r + i) % n]);
      const int b = letter_key(w[(best + i) % n]);
      if (a != b) {
        if (a < b) best = r;
        break;
      }
    }
  }
  return best;
}

Word rotate(const Word& w, std::size_t k) {
  std::vector<Letter> out(w.begin() + k, w.end());
  out.insert(out.end(), w.begin(), w.begin() + k);
  return Word::reduce(out);
}

}  // namespace

std::pair<Word, Word> canonical_with_conjugator(const Word& w) {
  auto [outer, core] = cyclic_decompose(w);
  const std::size_t k = least_rotation(core);
  return {rotate(core, k), multiply(outer, core.slice(0, k))};
}

CyclicWord::CyclicWord(const Word& w) : rep_(canonical_with_conjugator(w).first) {}

CyclicWord canonical_cyclic(const Word& w) { return CyclicWord(w); }

std::optional<Word> conjugator(const Word& u, const Word& v) {
  auto [cu, gu] = canonical_with_conjugator(u);
  auto [cv, gv] = canonical_with_conjugator(v);
  if (cu != cv) return std::nullopt;
  Word g = multiply(gu, inverse(gv));
  if (u.empty()) return Word{};

  // g is determined up to left multiplication by the centralizer <root(u)>.
  const Word root = extract_root(u).root;
  const long span = static_cast<long>(g.size() / std::max<std::size_t>(1, root.size())) + 1;
  Word best = g;
  for (long e = -span; e <= span; ++e) {
    Word candidate = multiply(power(root, e), g);
    if (shortlex_less(candidate, best)) best = std::move(candidate);
  }
  return best;
}

bool are_conjugate(const Word& u, const Word& v) { return canonical_cyclic(u) == canonical_cyclic(v); }

ExponentVector exponent_vector(const Word& w, const GroupContext& ctx) {
  ExponentVector v(static_cast<std::size_t>(ctx.rank()), 0);
  for (Letter l : w) {
    if (!ctx.valid(l)) {
      throw Error(ErrorKind::InvalidLetter, "letter outside rank " + std::to_string(ctx.rank()));
    }
    v[static_cast<std::size_t>(std::abs(l) - 1)] += l > 0 ? 1 : -1;
  }
  return v;
}

PowerDecomposition extract_root(const Word& w) {
  if (w.empty()) throw Error(ErrorKind::EmptyWord, "root of the identity is undefined");
  auto [outer, core] = cyclic_decompose(w);
  const std::size_t n = core.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = core[i] == core[i - d];
    if (!periodic) continue;
    WordBuilder b;
    b.append(outer);
    b.append(core.slice(0, d));
    b.append_inverse(outer);
    return {std::move(b).build(), static_cast<long>(n / d)};
  }
  return {w, 1};
}

bool is_proper_power(const Word& w) { return extract_root(w).exponent > 1; }

std::optional<long> log_base(const Word& r, const Word& x) {
  if (x.empty()) return 0L;
  if (r.empty()) return std::nullopt;
  const PowerDecomposition d = extract_root(x);
  if (d.root == r) return d.exponent;
  if (d.root == inverse(r)) return -d.exponent;
  return std::nullopt;
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  s.reserve(w.size());
  for (Letter l : w) {
    s.push_back(l > 0 ? static_cast<char>('a' + l - 1) : static_cast<char>('A' - l - 1));
  }
  return s;
}

Word parse_word(std::string_view text, const GroupContext& ctx) {
  if (text == "1") return {};
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    Letter l = 0;
    if (c >= 'a' && c <= 'z') l = c - 'a' + 1;
    if (c >= 'A' && c <= 'Z') l = -(c - 'A' + 1);
    if (l == 0 || !ctx.valid(l)) {
      throw Error(ErrorKind::InvalidLetter,
                  "character '" + std::string(1, c) + "' is not a letter of rank " +
                      std::to_string(ctx.rank()),
                  i);
    }
    letters.push_back(l);
  }
  return Word::reduce(letters);
}

}  // namespace flg

std::size_t std::hash<flg::Word>::operator()(const flg::Word& w) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (flg::Letter l : w) {
    h ^= static_cast<std::size_t>(l + 64);
    h *= 0x100000001b3ULL;
  }
  return h;
}
