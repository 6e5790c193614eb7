#pragma once

#include <chrono>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "flg/word.hpp"

namespace flg {

// Product [x_1, y_1] ... [x_N, y_N].
struct CommutatorExpression {
  std::vector<std::pair<Word, Word>> pairs;

  Word value() const;
  friend bool operator==(const CommutatorExpression&, const CommutatorExpression&) = default;
};

bool verify_expression(const Word& z, const CommutatorExpression& expr);

// Wicks splitting: a rotation of the cyclic core of w reads A B C A^-1 B^-1 C^-1.
struct WicksSplit {
  Word a, b, c;
  std::size_t rotation = 0;
  // w = [x, y] exactly: x = h A B h^-1 and y = h C A^-1 h^-1, or the
  // conjugated pair of nonempty blocks when one block is empty.
  Word x, y;
};

struct CommutatorVerdict {
  enum class Kind { Yes, No, NotInDerivedGroup };
  Kind kind = Kind::No;
  std::optional<WicksSplit> split;
};

CommutatorVerdict is_commutator(const Word& w, const GroupContext& ctx);

struct SearchParams {
  int g_max = 2;
  int max_len = 5;  // B: bound on |x|, |y| in the commutator table
  std::size_t max_pairs = 25'000'000;   // guard on table construction
  std::size_t max_probes = 50'000'000;  // guard on the triple-product search

  friend bool operator==(const SearchParams&, const SearchParams&) = default;
};

// C_B = { reduced [x, y] : |x|, |y| <= B }, keyed by value with the first
// (shortlex) pair producing it. Built once, then read-only.
class CommutatorTable {
 public:
  static std::shared_ptr<const CommutatorTable> build(const GroupContext& ctx, int max_len,
                                                      std::size_t max_pairs);

  const GroupContext& context() const noexcept { return ctx_; }
  int max_len() const noexcept { return max_len_; }
  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<Word>& values() const noexcept { return values_; }
  const std::pair<Word, Word>* find(const Word& value) const;

 private:
  CommutatorTable(GroupContext ctx, int max_len) : ctx_(ctx), max_len_(max_len) {}

  GroupContext ctx_;
  int max_len_;
  std::vector<Word> values_;
  std::vector<std::pair<Word, Word>> witnesses_;
  std::unordered_map<Word, std::size_t> index_;
};

// All reduced words of length <= n in shortlex order.
std::vector<Word> words_up_to(const GroupContext& ctx, int n);

struct GenusExact {
  int genus = 0;
  CommutatorExpression witness;
  int lower_evidence = 0;  // 0: identity, 1: nonempty, 2: Wicks criterion failed
};

struct GenusBounds {
  int lower = 1;
  std::optional<int> upper;
  std::optional<CommutatorExpression> witness;
  SearchParams search;
  bool budget_exceeded = false;
};

struct NotInDerivedGroup {
  ExponentVector exponents;
};

using GenusCertificate = std::variant<GenusExact, GenusBounds, NotInDerivedGroup>;

int certificate_lower(const GenusCertificate& c);
std::optional<int> certificate_upper(const GenusCertificate& c);
std::optional<CommutatorExpression> certificate_witness(const GenusCertificate& c);

class GenusEngine {
 public:
  GenusEngine(const GroupContext& ctx, SearchParams params);

  const SearchParams& params() const noexcept { return params_; }
  const GroupContext& context() const noexcept { return ctx_; }
  GenusCertificate genus(const Word& w) const;

 private:
  const CommutatorTable* table() const;

  GroupContext ctx_;
  SearchParams params_;
  mutable std::once_flag table_once_;
  mutable std::shared_ptr<const CommutatorTable> table_;
};

GenusCertificate genus(const Word& w, const GroupContext& ctx, const SearchParams& params);

// Cyclically reduced z in [F, F] with 0 < |z| <= max_len, one per conjugacy
// class up to inversion, by length then canonical cyclic form.
std::vector<Word> derived_class_representatives(const GroupContext& ctx, int max_len);

struct ScanInstance {
  Word z;
  int n = 0;
  GenusCertificate certificate;  // for z^n
  bool checked = false;
  bool violation = false;
  std::string note;
};

struct ScanReport {
  int max_len = 0;
  int n_max = 0;
  SearchParams search;
  std::size_t checked = 0;
  std::vector<ScanInstance> instances;
  std::vector<std::size_t> violations;  // indices into instances
  std::chrono::milliseconds runtime{0};
};

ScanReport duncan_howie_scan(int max_len, int n_max, const SearchParams& params, unsigned jobs = 1);

struct FTableEntry {
  int g = 0;
  int n = 0;
  std::optional<int> lower_bound;  // nullopt: no instances
  std::optional<Word> witness_z;
  std::optional<GenusCertificate> power_certificate;
  std::optional<GenusCertificate> z_certificate;
  std::size_t instances = 0;
  int max_len = 0;
  int search_len = 0;
};

FTableEntry f_lower_table(int g, int n, int max_len, int search_len, unsigned jobs = 1);

}  // namespace flg
