#include "disamb/grammar.h"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "disamb/error.h"
#include "text.h"

namespace disamb {

std::string_view to_string(HeadKind kind) { return kind == HeadKind::Verb ? "verb" : "noun"; }

std::optional<HeadKind> parse_head_kind(std::string_view text) {
  if (text == "verb") return HeadKind::Verb;
  if (text == "noun") return HeadKind::Noun;
  return std::nullopt;
}

CategoryId Grammar::add_category(std::string_view name, bool preterminal) {
  if (auto it = by_name_.find(name); it != by_name_.end()) return it->second;
  CategoryId id(static_cast<int>(categories_.size()));
  categories_.push_back(Category{std::string(name), preterminal, HeadKind::Noun});
  by_name_.emplace(std::string(name), id);
  return id;
}

std::optional<CategoryId> Grammar::find_category(std::string_view name) const {
  if (auto it = by_name_.find(name); it != by_name_.end()) return it->second;
  return std::nullopt;
}

void Grammar::set_preterminal(CategoryId id, bool preterminal) {
  categories_.at(id.index()).preterminal = preterminal;
}

void Grammar::set_kind(CategoryId id, HeadKind kind) { categories_.at(id.index()).kind = kind; }

RuleId Grammar::add_rule(Rule rule) {
  RuleId id(static_cast<int>(rules_.size()));
  std::string sig = signature(rule);
  rules_.push_back(std::move(rule));
  by_signature_.emplace(std::move(sig), id);  // first definition wins; validate() flags repeats
  return id;
}

std::optional<RuleId> Grammar::find_rule(CategoryId lhs, std::span<const CategoryId> rhs) const {
  Rule probe;
  probe.lhs = lhs;
  probe.rhs.assign(rhs.begin(), rhs.end());
  return find_rule(signature(probe));
}

std::optional<RuleId> Grammar::find_rule(std::string_view sig) const {
  if (auto it = by_signature_.find(sig); it != by_signature_.end()) return it->second;
  return std::nullopt;
}

std::string Grammar::signature(RuleId id) const { return signature(rule(id)); }

std::string Grammar::signature(const Rule& rule) const {
  std::string out = name(rule.lhs);
  out += " ->";
  for (CategoryId c : rule.rhs) {
    out += ' ';
    out += name(c);
  }
  return out;
}

void Grammar::add_lex(std::string tag, CategoryId preterminal) {
  lexicon_.insert_or_assign(std::move(tag), preterminal);
}

std::optional<CategoryId> Grammar::preterminal_for_tag(std::string_view tag) const {
  if (auto it = lexicon_.find(tag); it != lexicon_.end()) return it->second;
  return std::nullopt;
}

std::optional<std::string> Grammar::tag_for(CategoryId preterminal) const {
  if (auto it = lexicon_.find(name(preterminal)); it != lexicon_.end() && it->second == preterminal)
    return it->first;
  for (const auto& [tag, cat] : lexicon_)
    if (cat == preterminal) return tag;
  return std::nullopt;
}

namespace {

struct PendingRule {
  std::size_t line;
  std::string lhs;
  std::vector<std::string> rhs;
  std::vector<Slot> slots;
  std::size_t head_index;
  bool coord;
};

bool valid_symbol(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c == '[' || c == ']' || c == ':' || c == '%' || c == '#') return false;
  return true;
}

PendingRule parse_rule_line(std::string_view source, std::size_t line_no,
                            const std::vector<std::string_view>& fields) {
  auto fail = [&](const std::string& what) -> FormatError {
    return FormatError(std::string(source), line_no, what);
  };
  if (fields.size() < 3 || fields[1] != "->") throw fail("expected 'LHS -> R1 ...'");
  PendingRule rule{line_no, std::string(fields[0]), {}, {}, 0, false};
  if (!valid_symbol(rule.lhs)) throw fail("bad category name '" + rule.lhs + "'");

  std::size_t end = fields.size();
  if (fields.back() == ":coord") {
    rule.coord = true;
    --end;
  } else if (fields.back().starts_with(":")) {
    throw fail("unknown rule flag '" + std::string(fields.back()) + "'");
  }

  std::optional<std::size_t> head;
  for (std::size_t i = 2; i < end; ++i) {
    std::string_view tok = fields[i];
    Slot slot;
    std::string_view sym = tok;
    if (auto open = tok.find('['); open != std::string_view::npos) {
      if (tok.back() != ']') throw fail("unterminated label in '" + std::string(tok) + "'");
      sym = tok.substr(0, open);
      std::string_view label = tok.substr(open + 1, tok.size() - open - 2);
      if (label == "h") {
        if (head) throw fail("more than one head marker");
        head = rule.rhs.size();
        slot.kind = SlotKind::Head;
      } else if (label == "-") {
        slot.kind = SlotKind::None;
      } else if (valid_symbol(label)) {
        slot.kind = SlotKind::Named;
        slot.name = std::string(label);
      } else {
        throw fail("bad slot label in '" + std::string(tok) + "'");
      }
    }
    if (!valid_symbol(sym)) throw fail("bad category name '" + std::string(sym) + "'");
    rule.rhs.emplace_back(sym);
    rule.slots.push_back(std::move(slot));
  }
  if (rule.rhs.empty()) throw fail("empty right-hand side");
  if (rule.rhs.size() > kMaxArity) throw fail("arity exceeds 3");
  if (!head) throw fail("missing head marker [h]");
  rule.head_index = *head;
  if (rule.coord) {
    if (rule.rhs.size() != 3 || rule.rhs[0] != rule.rhs[2] || rule.rhs[1] == rule.rhs[0])
      throw fail("coordinate rule must have the form L -> R C R");
    if (rule.head_index == 1) throw fail("coordinate rule cannot be headed by the conjunction");
  }
  return rule;
}

}  // namespace

Grammar parse_grammar(std::string_view text, std::string_view source) {
  std::vector<PendingRule> rules;
  std::vector<std::pair<std::string, std::string>> lex;  // tag, category
  std::vector<std::pair<std::string, HeadKind>> kinds;
  std::optional<std::string> start;

  std::size_t line_no = 0;
  for (std::string_view raw : text::lines(text)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = text::trim(line);
    if (line.empty()) continue;
    auto fields = text::split_ws(line);
    auto fail = [&](const std::string& what) {
      return FormatError(std::string(source), line_no, what);
    };
    if (fields[0] == "%start") {
      if (fields.size() != 2 || !valid_symbol(fields[1])) throw fail("expected '%start CATEGORY'");
      if (start) throw fail("duplicate %start");
      start = std::string(fields[1]);
    } else if (fields[0] == "%lex") {
      if (fields.size() != 3 || !valid_symbol(fields[1]) || !valid_symbol(fields[2]))
        throw fail("expected '%lex TAG CATEGORY'");
      for (const auto& [tag, cat] : lex)
        if (tag == fields[1]) throw fail("tag '" + tag + "' mapped twice");
      lex.emplace_back(std::string(fields[1]), std::string(fields[2]));
    } else if (fields[0] == "%kind") {
      std::optional<HeadKind> kind;
      if (fields.size() == 3) kind = parse_head_kind(fields[2]);
      if (!kind || !valid_symbol(fields[1])) throw fail("expected '%kind CATEGORY verb|noun'");
      kinds.emplace_back(std::string(fields[1]), *kind);
    } else if (fields[0].starts_with("%")) {
      throw fail("unknown directive '" + std::string(fields[0]) + "'");
    } else {
      rules.push_back(parse_rule_line(source, line_no, fields));
    }
  }

  Grammar g;
  for (const auto& [tag, cat] : lex) g.add_category(cat, true);
  for (const auto& r : rules) {
    g.add_category(r.lhs);
    for (const auto& c : r.rhs) g.add_category(c);
  }
  for (const auto& [tag, cat] : lex) g.add_lex(tag, *g.find_category(cat));
  for (const auto& [cat, kind] : kinds) {
    auto id = g.find_category(cat);
    if (!id) throw Error(ErrorCategory::Data, std::string(source) + ": %kind names unknown category '" + cat + "'");
    g.set_kind(*id, kind);
  }
  for (auto& r : rules) {
    Rule rule;
    rule.lhs = *g.find_category(r.lhs);
    for (const auto& c : r.rhs) rule.rhs.push_back(*g.find_category(c));
    rule.head_index = r.head_index;
    rule.slots = std::move(r.slots);
    rule.coord = r.coord;
    g.add_rule(std::move(rule));
  }
  if (start) g.set_start(g.add_category(*start));

  auto violations = validate(g);
  if (!violations.empty()) {
    std::string msg = std::string(source) + ": invalid grammar:";
    for (const auto& v : violations) msg += " " + v + ";";
    msg.pop_back();
    throw Error(ErrorCategory::Data, msg);
  }
  return g;
}

Grammar load_grammar(const std::string& path) { return parse_grammar(text::read_file(path), path); }

std::string serialize_grammar(const Grammar& g) {
  std::ostringstream out;
  if (g.start().valid()) out << "%start " << g.name(g.start()) << '\n';
  for (std::size_t i = 0; i < g.category_count(); ++i) {
    const Category& c = g.category(CategoryId(static_cast<int>(i)));
    if (c.preterminal && c.kind == HeadKind::Verb) out << "%kind " << c.name << " verb\n";
  }
  for (const auto& [tag, cat] : g.lexicon()) out << "%lex " << tag << ' ' << g.name(cat) << '\n';
  for (const Rule& r : g.rules()) {
    out << g.name(r.lhs) << " ->";
    for (std::size_t i = 0; i < r.arity(); ++i) {
      out << ' ' << g.name(r.rhs[i]);
      const Slot& s = r.slots[i];
      switch (s.kind) {
        case SlotKind::Head: out << "[h]"; break;
        case SlotKind::Named: out << '[' << s.name << ']'; break;
        case SlotKind::None: out << "[-]"; break;
        case SlotKind::Lexical: break;
      }
    }
    if (r.coord) out << " :coord";
    out << '\n';
  }
  return out.str();
}

std::vector<std::string> validate(const Grammar& g) {
  std::vector<std::string> out;
  const std::size_t ncat = g.category_count();
  std::vector<bool> on_lhs(ncat, false);
  for (const Rule& r : g.rules()) on_lhs[r.lhs.index()] = true;

  std::set<std::string> seen_sigs;
  for (std::size_t ri = 0; ri < g.rule_count(); ++ri) {
    const Rule& r = g.rules()[ri];
    const std::string sig = g.signature(r);
    const std::string where = "rule '" + sig + "': ";
    if (!seen_sigs.insert(sig).second) out.push_back(where + "duplicate rule");
    if (r.arity() == 0) out.push_back(where + "empty right-hand side");
    if (r.arity() > kMaxArity) out.push_back(where + "arity exceeds 3");
    if (r.slots.size() != r.arity()) out.push_back(where + "slot label count differs from arity");
    if (r.head_index >= r.arity()) {
      out.push_back(where + "head index out of range");
    } else if (r.slots.size() == r.arity()) {
      for (std::size_t i = 0; i < r.arity(); ++i) {
        bool is_head = r.slots[i].kind == SlotKind::Head;
        if (is_head != (i == r.head_index)) {
          out.push_back(where + "exactly one position must be labelled head");
          break;
        }
        if (r.slots[i].kind == SlotKind::Named && r.slots[i].name.empty())
          out.push_back(where + "empty slot name");
      }
    }
    if (g.category(r.lhs).preterminal)
      out.push_back(where + "preterminal '" + g.name(r.lhs) + "' on left-hand side");
    if (r.coord) {
      bool shape = r.arity() == 3 && r.rhs[0] == r.rhs[2] && r.rhs[1] != r.rhs[0];
      if (!shape) out.push_back(where + "coordinate rule must have the form L -> R C R");
      else if (!g.category(r.rhs[1]).preterminal)
        out.push_back(where + "conjunction position must be a preterminal");
      if (r.head_index == 1) out.push_back(where + "coordinate rule headed by the conjunction");
    }
    for (CategoryId c : r.rhs)
      if (!g.category(c).preterminal && !on_lhs[c.index()])
        out.push_back(where + "undefined category '" + g.name(c) + "'");
  }

  if (!g.start().valid()) {
    out.push_back("no start symbol");
  } else if (!on_lhs[g.start().index()]) {
    out.push_back("unreachable start: '" + g.name(g.start()) + "' never appears on a left-hand side");
  }

  // A LEXICAL modifier takes its slot name from its own head and the
  // dependent from its complement, so every expansion needs a non-head child.
  std::set<CategoryId> lexical_modifiers;
  for (const Rule& r : g.rules())
    if (!r.coord && r.slots.size() == r.arity())
      for (std::size_t i = 0; i < r.arity(); ++i)
        if (r.slots[i].kind == SlotKind::Lexical) lexical_modifiers.insert(r.rhs[i]);
  for (CategoryId c : lexical_modifiers) {
    if (g.category(c).preterminal) {
      out.push_back("LEXICAL modifier '" + g.name(c) + "' is a preterminal and has no complement");
      continue;
    }
    for (const Rule& r : g.rules())
      if (r.lhs == c && r.arity() < 2)
        out.push_back("LEXICAL modifier '" + g.name(c) + "' has an expansion without a complement: '" +
                      g.signature(r) + "'");
  }

  // Productivity: every nonterminal must derive some preterminal string.
  std::vector<bool> productive(ncat, false);
  for (std::size_t i = 0; i < ncat; ++i) productive[i] = g.category(CategoryId(static_cast<int>(i))).preterminal;
  for (bool changed = true; changed;) {
    changed = false;
    for (const Rule& r : g.rules()) {
      if (productive[r.lhs.index()]) continue;
      if (std::all_of(r.rhs.begin(), r.rhs.end(), [&](CategoryId c) { return productive[c.index()]; })) {
        productive[r.lhs.index()] = true;
        changed = true;
      }
    }
  }
  for (std::size_t i = 0; i < ncat; ++i)
    if (on_lhs[i] && !productive[i])
      out.push_back("category '" + g.name(CategoryId(static_cast<int>(i))) + "' derives no preterminal string");

  // Unary cycles would make the chart and the enumeration non-terminating.
  std::vector<std::vector<std::size_t>> unary(ncat);
  for (const Rule& r : g.rules())
    if (r.arity() == 1) unary[r.lhs.index()].push_back(r.rhs[0].index());
  std::vector<int> state(ncat, 0);
  bool cyclic = false;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    state[v] = 1;
    for (std::size_t w : unary[v]) {
      if (state[w] == 1) cyclic = true;
      else if (state[w] == 0) visit(w);
    }
    state[v] = 2;
  };
  for (std::size_t v = 0; v < ncat; ++v)
    if (state[v] == 0) visit(v);
  if (cyclic) out.push_back("unary rule cycle");

  for (const auto& [tag, cat] : g.lexicon())
    if (!g.category(cat).preterminal) out.push_back("lexicon tag '" + tag + "' maps to a non-preterminal");

  return out;
}

}  // namespace disamb
