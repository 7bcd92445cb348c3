#ifndef DISAMB_PARSER_H
#define DISAMB_PARSER_H

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "disamb/frames.h"
#include "disamb/grammar.h"
#include "disamb/tree.h"

namespace disamb {

// Child lengths (l_1, ..., l_k) of one rule application, k <= 3.
struct LengthTuple {
  std::array<int, kMaxArity> values{};
  std::size_t size = 0;

  LengthTuple() = default;
  LengthTuple(std::initializer_list<int> init);

  int operator[](std::size_t i) const { return values[i]; }
  int sum() const;
  std::span<const int> view() const { return {values.data(), size}; }

  friend auto operator<=>(const LengthTuple&, const LengthTuple&) = default;
};

std::string to_string(const LengthTuple& t);  // "2,3"
std::optional<LengthTuple> parse_length_tuple(std::string_view text);

struct AttachmentRecord {
  RuleId rule;
  LengthTuple child_lengths;

  friend auto operator<=>(const AttachmentRecord&, const AttachmentRecord&) = default;
};

// One record per rule application (internal node), in preorder.
std::vector<AttachmentRecord> attachment_records(const Tree& tree);

struct Interpretation {
  Tree tree;
  std::vector<AttachmentRecord> attachments;
  std::vector<DependencyTriple> triples;  // filled by extract_triples
};

// One way an item was built: a rule over child items, or a token for
// preterminal items (rule invalid, children[0] = token index).
struct Backpointer {
  RuleId rule;
  std::array<int, kMaxArity> children{-1, -1, -1};
};

struct ForestItem {
  int begin = 0;
  int end = 0;
  CategoryId category;
  std::vector<Backpointer> derivations;  // ordered by rule, then split points
};

// Packed chart: one item per (span, category), each derivation stored once
// and shared by every parse that uses it.
class ParseForest {
 public:
  const Grammar& grammar() const { return *grammar_; }
  std::span<const Token> tokens() const { return tokens_; }
  std::span<const ForestItem> items() const { return items_; }
  const ForestItem& item(int i) const { return items_.at(static_cast<std::size_t>(i)); }
  std::optional<int> find(int begin, int end, CategoryId category) const;
  CategoryId goal() const { return goal_; }
  // Item for the goal category over the whole sentence, if any.
  std::optional<int> root() const;

 private:
  friend ParseForest parse(const Grammar&, std::span<const Token>, std::optional<CategoryId>);

  int& slot(int begin, int end, CategoryId c);
  int slot(int begin, int end, CategoryId c) const;

  const Grammar* grammar_ = nullptr;
  std::vector<Token> tokens_;
  std::vector<ForestItem> items_;
  std::vector<int> chart_;  // (begin, end, category) -> item index or -1
  CategoryId goal_;
};

inline constexpr std::size_t kDefaultParseCap = 10000;

// Bottom-up chart parse handling unary, binary and ternary rules directly.
// The grammar must outlive the forest. goal defaults to the start symbol.
ParseForest parse(const Grammar& g, std::span<const Token> tokens, std::optional<CategoryId> goal = std::nullopt);

// Number of goal derivations over the full span, saturating at UINT64_MAX.
std::uint64_t count_parses(const ParseForest& forest);

// All goal derivations in deterministic order (backpointer order, first child
// varying slowest). Throws Error(CapExceeded) rather than truncating.
std::vector<Interpretation> enumerate(const ParseForest& forest, std::size_t cap = kDefaultParseCap);

}  // namespace disamb

#endif  // DISAMB_PARSER_H
