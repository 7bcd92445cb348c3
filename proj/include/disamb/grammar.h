#ifndef DISAMB_GRAMMAR_H
#define DISAMB_GRAMMAR_H

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace disamb {

template <typename Tag>
struct Id {
  int value = -1;

  constexpr Id() = default;
  constexpr explicit Id(int v) : value(v) {}
  constexpr bool valid() const { return value >= 0; }
  constexpr std::size_t index() const { return static_cast<std::size_t>(value); }

  friend constexpr auto operator<=>(Id, Id) = default;
};

using CategoryId = Id<struct CategoryTag>;
using RuleId = Id<struct RuleTag>;

inline constexpr std::size_t kMaxArity = 3;

enum class HeadKind { Verb, Noun };

std::string_view to_string(HeadKind kind);
std::optional<HeadKind> parse_head_kind(std::string_view text);

struct Category {
  std::string name;
  bool preterminal = false;
  HeadKind kind = HeadKind::Noun;  // only meaningful for preterminals
};

// How a right-hand-side position contributes to the case frame.
//   Head     the position the rule projects its head word from
//   Named    fixed slot name, e.g. arg1 / arg2
//   Lexical  slot name is the modifier's own head word (prepositions)
//   None     contributes no dependency (determiners, the object inside a PP)
enum class SlotKind { Head, Named, Lexical, None };

struct Slot {
  SlotKind kind = SlotKind::Lexical;
  std::string name;  // set for Named only

  friend bool operator==(const Slot&, const Slot&) = default;
};

struct Rule {
  CategoryId lhs;
  std::vector<CategoryId> rhs;
  std::size_t head_index = 0;
  std::vector<Slot> slots;  // one per rhs position
  bool coord = false;

  std::size_t arity() const { return rhs.size(); }
};

class Grammar {
 public:
  // Returns the existing id when the name is already known.
  CategoryId add_category(std::string_view name, bool preterminal = false);
  std::optional<CategoryId> find_category(std::string_view name) const;
  const Category& category(CategoryId id) const { return categories_.at(id.index()); }
  const std::string& name(CategoryId id) const { return category(id).name; }
  std::size_t category_count() const { return categories_.size(); }
  void set_preterminal(CategoryId id, bool preterminal);
  void set_kind(CategoryId id, HeadKind kind);

  RuleId add_rule(Rule rule);
  const Rule& rule(RuleId id) const { return rules_.at(id.index()); }
  std::span<const Rule> rules() const { return rules_; }
  std::size_t rule_count() const { return rules_.size(); }
  std::optional<RuleId> find_rule(CategoryId lhs, std::span<const CategoryId> rhs) const;
  std::optional<RuleId> find_rule(std::string_view signature) const;

  // "NP -> NP PP": the key used by model files.
  std::string signature(RuleId id) const;
  std::string signature(const Rule& rule) const;

  void set_start(CategoryId id) { start_ = id; }
  CategoryId start() const { return start_; }

  void add_lex(std::string tag, CategoryId preterminal);
  std::optional<CategoryId> preterminal_for_tag(std::string_view tag) const;
  const std::map<std::string, CategoryId, std::less<>>& lexicon() const { return lexicon_; }
  // First tag (in sorted order) mapped to the preterminal, preferring a tag
  // spelled like the category itself.
  std::optional<std::string> tag_for(CategoryId preterminal) const;

 private:
  std::vector<Category> categories_;
  std::map<std::string, CategoryId, std::less<>> by_name_;
  std::vector<Rule> rules_;
  std::map<std::string, RuleId, std::less<>> by_signature_;
  std::map<std::string, CategoryId, std::less<>> lexicon_;
  CategoryId start_;
};

// Parses the line-oriented grammar format (see data/grammar/README.md) and
// validates the result. Throws FormatError on syntax errors and Error(Data)
// when the grammar violates an invariant.
Grammar parse_grammar(std::string_view text, std::string_view source = "<grammar>");
Grammar load_grammar(const std::string& path);

std::string serialize_grammar(const Grammar& g);

// Every invariant violation, one message each. Empty means valid.
std::vector<std::string> validate(const Grammar& g);

}  // namespace disamb

#endif  // DISAMB_GRAMMAR_H
