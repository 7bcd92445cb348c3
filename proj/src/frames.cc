#include "disamb/frames.h"

#include <sstream>

#include "disamb/error.h"
#include "text.h"

namespace disamb {

std::string LemmaTable::lemma(std::string_view surface) const {
  if (auto it = entries_.find(surface); it != entries_.end()) return it->second;
  return std::string(surface);
}

LemmaTable parse_lemmas(std::string_view input, std::string_view source) {
  LemmaTable table;
  std::size_t line_no = 0;
  for (std::string_view line : text::lines(input)) {
    ++line_no;
    if (text::trim(line).empty() || text::trim(line).starts_with("#")) continue;
    auto cols = text::split(line, '\t');
    if (cols.size() != 2 || cols[0].empty() || cols[1].empty())
      throw FormatError(std::string(source), line_no, "expected surface<TAB>lemma");
    table.add(std::string(cols[0]), std::string(cols[1]));
  }
  return table;
}

LemmaTable load_lemmas(const std::string& path) { return parse_lemmas(text::read_file(path), path); }

int head_leaf(const Tree& tree, int index, const Grammar& g) {
  while (!tree.node(index).preterminal()) {
    const TreeNode& n = tree.node(index);
    index = n.children.at(g.rule(n.rule).head_index);
  }
  return index;
}

std::string head_word(const Tree& tree, int index, const Grammar& g, const LemmaTable& lemmas) {
  const TreeNode& leaf = tree.node(head_leaf(tree, index, g));
  return lemmas.lemma(tree.tokens.at(static_cast<std::size_t>(leaf.begin)).surface);
}

std::vector<DependencyTriple> extract_triples(const Tree& tree, const Grammar& g, const LemmaTable& lemmas) {
  const std::size_t n = tree.nodes.size();
  // Preorder puts children after parents, so a reverse sweep resolves heads bottom-up.
  std::vector<int> leaf(n);
  for (std::size_t i = n; i-- > 0;) {
    const TreeNode& node = tree.nodes[i];
    leaf[i] = node.preterminal() ? static_cast<int>(i)
                                 : leaf[static_cast<std::size_t>(node.children.at(g.rule(node.rule).head_index))];
  }
  auto surface = [&](int node) -> const std::string& {
    return tree.tokens.at(static_cast<std::size_t>(tree.node(leaf[static_cast<std::size_t>(node)]).begin)).surface;
  };
  auto word = [&](int node) { return lemmas.lemma(surface(node)); };

  std::vector<DependencyTriple> out;
  for (std::size_t i = 0; i < n; ++i) {
    const TreeNode& node = tree.nodes[i];
    if (node.preterminal()) continue;
    const Rule& rule = g.rule(node.rule);
    if (rule.coord) continue;
    const int head_child = node.children[rule.head_index];
    const HeadKind kind = g.category(tree.node(leaf[static_cast<std::size_t>(head_child)]).category).kind;
    for (std::size_t pos = 0; pos < rule.arity(); ++pos) {
      const Slot& slot = rule.slots[pos];
      const int child = node.children[pos];
      if (slot.kind == SlotKind::Named) {
        out.push_back(DependencyTriple{word(head_child), kind, slot.name, word(child)});
      } else if (slot.kind == SlotKind::Lexical) {
        const TreeNode& mod = tree.node(child);
        if (mod.preterminal()) continue;  // rejected by validate(); unreachable for valid grammars
        const Rule& mod_rule = g.rule(mod.rule);
        int complement = -1;
        for (std::size_t j = mod_rule.arity(); j-- > 0;)
          if (j != mod_rule.head_index) {
            complement = mod.children[j];
            break;
          }
        if (complement < 0) continue;
        out.push_back(DependencyTriple{word(head_child), kind, text::lower(surface(child)), word(complement)});
      }
    }
  }
  return out;
}

std::vector<CountedTriple> parse_triple_dump(std::string_view input, std::string_view source) {
  std::vector<CountedTriple> out;
  std::size_t line_no = 0;
  for (std::string_view line : text::lines(input)) {
    ++line_no;
    if (text::trim(line).empty() || line.starts_with("#")) continue;
    auto cols = text::split(line, '\t');
    auto fail = [&](const std::string& what) { return FormatError(std::string(source), line_no, what); };
    if (cols.size() != 5) throw fail("expected head<TAB>head_kind<TAB>slot<TAB>dependent<TAB>count");
    auto kind = parse_head_kind(cols[1]);
    if (!kind) throw fail("head_kind must be verb or noun");
    if (cols[0].empty() || cols[2].empty() || cols[3].empty()) throw fail("empty field");
    std::uint64_t count = 0;
    if (!text::parse_uint(cols[4], count)) throw fail("count must be a non-negative integer");
    out.push_back(CountedTriple{
        DependencyTriple{std::string(cols[0]), *kind, std::string(cols[2]), std::string(cols[3])}, count});
  }
  return out;
}

std::string format_triple_dump(const std::vector<CountedTriple>& triples) {
  std::ostringstream out;
  for (const auto& t : triples)
    out << t.triple.head << '\t' << to_string(t.triple.head_kind) << '\t' << t.triple.slot << '\t'
        << t.triple.dependent << '\t' << t.count << '\n';
  return out.str();
}

}  // namespace disamb
