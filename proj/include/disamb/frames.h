#ifndef DISAMB_FRAMES_H
#define DISAMB_FRAMES_H

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "disamb/grammar.h"
#include "disamb/tree.h"

namespace disamb {

// One filled case slot: dependent fills `slot` of the frame headed by `head`.
struct DependencyTriple {
  std::string head;
  HeadKind head_kind = HeadKind::Noun;
  std::string slot;
  std::string dependent;

  friend auto operator<=>(const DependencyTriple&, const DependencyTriple&) = default;
};

// Optional surface -> lemma normalization (identity for unlisted words).
class LemmaTable {
 public:
  LemmaTable() = default;
  explicit LemmaTable(std::map<std::string, std::string, std::less<>> entries)
      : entries_(std::move(entries)) {}

  std::string lemma(std::string_view surface) const;
  void add(std::string surface, std::string lemma) { entries_.insert_or_assign(std::move(surface), std::move(lemma)); }
  bool empty() const { return entries_.empty(); }

 private:
  std::map<std::string, std::string, std::less<>> entries_;
};

// Two-column TSV: surface<TAB>lemma. '#' starts a comment line.
LemmaTable parse_lemmas(std::string_view text, std::string_view source = "<lemmas>");
LemmaTable load_lemmas(const std::string& path);

// Head word of node `index`, projected through each rule's head position.
std::string head_word(const Tree& tree, int index, const Grammar& g, const LemmaTable& lemmas = {});

// Preterminal node carrying the head word of `index`.
int head_leaf(const Tree& tree, int index, const Grammar& g);

// One triple per Named or Lexical position of every non-coordinate rule
// application, in preorder. Lexical slots are named by the lower-cased head
// word of the modifier (the preposition) and filled by the head word of the
// modifier's last non-head child (its object).
std::vector<DependencyTriple> extract_triples(const Tree& tree, const Grammar& g,
                                              const LemmaTable& lemmas = {});

// Triple dump, one per line: head<TAB>head_kind<TAB>slot<TAB>dependent<TAB>count.
struct CountedTriple {
  DependencyTriple triple;
  std::uint64_t count = 1;
};
std::vector<CountedTriple> parse_triple_dump(std::string_view text, std::string_view source = "<triples>");
std::string format_triple_dump(const std::vector<CountedTriple>& triples);

}  // namespace disamb

#endif  // DISAMB_FRAMES_H
