#include "disamb/parser.h"

#include <algorithm>
#include <limits>

#include "disamb/error.h"
#include "text.h"

namespace disamb {

LengthTuple::LengthTuple(std::initializer_list<int> init) {
  if (init.size() > kMaxArity) throw Error(ErrorCategory::Internal, "length tuple arity exceeds 3");
  for (int v : init) values[size++] = v;
}

int LengthTuple::sum() const {
  int s = 0;
  for (std::size_t i = 0; i < size; ++i) s += values[i];
  return s;
}

std::string to_string(const LengthTuple& t) {
  std::string out;
  for (std::size_t i = 0; i < t.size; ++i) {
    if (i) out += ',';
    out += std::to_string(t.values[i]);
  }
  return out;
}

std::optional<LengthTuple> parse_length_tuple(std::string_view input) {
  auto parts = text::split(input, ',');
  if (parts.empty() || parts.size() > kMaxArity) return std::nullopt;
  LengthTuple t;
  for (auto p : parts) {
    std::uint64_t v = 0;
    if (!text::parse_uint(p, v) || v == 0 || v > 1000000) return std::nullopt;
    t.values[t.size++] = static_cast<int>(v);
  }
  return t;
}

std::vector<AttachmentRecord> attachment_records(const Tree& tree) {
  std::vector<AttachmentRecord> out;
  for (const TreeNode& n : tree.nodes) {
    if (n.preterminal()) continue;
    AttachmentRecord rec{n.rule, {}};
    for (int c : n.children) rec.child_lengths.values[rec.child_lengths.size++] = tree.node(c).length();
    out.push_back(rec);
  }
  return out;
}

int& ParseForest::slot(int begin, int end, CategoryId c) {
  const std::size_t n = tokens_.size() + 1;
  return chart_[(static_cast<std::size_t>(begin) * n + static_cast<std::size_t>(end)) * grammar_->category_count() +
                c.index()];
}

int ParseForest::slot(int begin, int end, CategoryId c) const {
  const std::size_t n = tokens_.size() + 1;
  return chart_[(static_cast<std::size_t>(begin) * n + static_cast<std::size_t>(end)) * grammar_->category_count() +
                c.index()];
}

std::optional<int> ParseForest::find(int begin, int end, CategoryId c) const {
  if (begin < 0 || end > static_cast<int>(tokens_.size()) || begin >= end || !c.valid() ||
      c.index() >= grammar_->category_count())
    return std::nullopt;
  int i = slot(begin, end, c);
  if (i < 0) return std::nullopt;
  return i;
}

std::optional<int> ParseForest::root() const { return find(0, static_cast<int>(tokens_.size()), goal_); }

ParseForest parse(const Grammar& g, std::span<const Token> tokens, std::optional<CategoryId> goal) {
  if (auto violations = validate(g); !violations.empty())
    throw Error(ErrorCategory::Data, "refusing to parse with an invalid grammar: " + violations.front());
  if (tokens.empty()) throw Error(ErrorCategory::Data, "empty sentence");

  ParseForest f;
  f.grammar_ = &g;
  f.tokens_.assign(tokens.begin(), tokens.end());
  f.goal_ = goal.value_or(g.start());
  const int n = static_cast<int>(tokens.size());
  f.chart_.assign(static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n + 1) * g.category_count(), -1);

  auto item_for = [&](int b, int e, CategoryId c) -> ForestItem& {
    int& s = f.slot(b, e, c);
    if (s < 0) {
      s = static_cast<int>(f.items_.size());
      f.items_.push_back(ForestItem{b, e, c, {}});
    }
    return f.items_[static_cast<std::size_t>(s)];
  };

  std::vector<RuleId> unary, binary, ternary;
  for (std::size_t r = 0; r < g.rule_count(); ++r) {
    RuleId id(static_cast<int>(r));
    switch (g.rule(id).arity()) {
      case 1: unary.push_back(id); break;
      case 2: binary.push_back(id); break;
      default: ternary.push_back(id); break;
    }
  }

  for (int i = 0; i < n; ++i) {
    auto pre = g.preterminal_for_tag(tokens[static_cast<std::size_t>(i)].tag);
    if (!pre)
      throw Error(ErrorCategory::Data, "unknown tag '" + tokens[static_cast<std::size_t>(i)].tag + "' at token " +
                                           std::to_string(i + 1));
    item_for(i, i + 1, *pre).derivations.push_back(Backpointer{RuleId(), {i, -1, -1}});
  }

  for (int len = 1; len <= n; ++len) {
    for (int b = 0; b + len <= n; ++b) {
      const int e = b + len;
      for (RuleId r : binary) {
        const Rule& rule = g.rule(r);
        for (int m = b + 1; m < e; ++m) {
          int left = f.slot(b, m, rule.rhs[0]);
          if (left < 0) continue;
          int right = f.slot(m, e, rule.rhs[1]);
          if (right < 0) continue;
          item_for(b, e, rule.lhs).derivations.push_back(Backpointer{r, {left, right, -1}});
        }
      }
      for (RuleId r : ternary) {
        const Rule& rule = g.rule(r);
        for (int m1 = b + 1; m1 + 1 < e; ++m1) {
          int first = f.slot(b, m1, rule.rhs[0]);
          if (first < 0) continue;
          for (int m2 = m1 + 1; m2 < e; ++m2) {
            int second = f.slot(m1, m2, rule.rhs[1]);
            if (second < 0) continue;
            int third = f.slot(m2, e, rule.rhs[2]);
            if (third < 0) continue;
            item_for(b, e, rule.lhs).derivations.push_back(Backpointer{r, {first, second, third}});
          }
        }
      }
      // Unary closure; validate() guarantees there are no cycles.
      for (bool changed = true; changed;) {
        changed = false;
        for (RuleId r : unary) {
          const Rule& rule = g.rule(r);
          int child = f.slot(b, e, rule.rhs[0]);
          if (child < 0) continue;
          ForestItem& parent = item_for(b, e, rule.lhs);
          bool present = std::any_of(parent.derivations.begin(), parent.derivations.end(),
                                     [&](const Backpointer& bp) { return bp.rule == r; });
          if (!present) {
            parent.derivations.push_back(Backpointer{r, {child, -1, -1}});
            changed = true;
          }
        }
      }
    }
  }

  // Split points are monotone in child item begin/end, so ordering by the
  // child spans orders by split point.
  for (ForestItem& it : f.items_) {
    std::sort(it.derivations.begin(), it.derivations.end(), [&](const Backpointer& a, const Backpointer& b) {
      if (a.rule != b.rule) return a.rule < b.rule;
      for (std::size_t k = 0; k < kMaxArity; ++k) {
        int ea = a.children[k] < 0 || !a.rule.valid() ? -1 : f.items_[static_cast<std::size_t>(a.children[k])].end;
        int eb = b.children[k] < 0 || !b.rule.valid() ? -1 : f.items_[static_cast<std::size_t>(b.children[k])].end;
        if (ea != eb) return ea < eb;
      }
      return false;
    });
  }
  return f;
}

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kSaturated / b ? kSaturated : a * b;
}

class Counter {
 public:
  explicit Counter(const ParseForest& f) : f_(f), memo_(f.items().size(), kUnset) {}

  std::uint64_t count(int item) {
    std::uint64_t& m = memo_[static_cast<std::size_t>(item)];
    if (m != kUnset) return m;
    std::uint64_t total = 0;
    for (const Backpointer& bp : f_.item(item).derivations) {
      if (!bp.rule.valid()) {
        total = sat_add(total, 1);
        continue;
      }
      std::uint64_t prod = 1;
      for (std::size_t k = 0; k < f_.grammar().rule(bp.rule).arity(); ++k) prod = sat_mul(prod, count(bp.children[k]));
      total = sat_add(total, prod);
    }
    m = total;
    return total;
  }

 private:
  static constexpr std::uint64_t kUnset = kSaturated - 1;
  const ParseForest& f_;
  std::vector<std::uint64_t> memo_;
};

// A derivation of one item: which backpointer, and which derivation of each child.
struct Derivation {
  int backpointer;
  std::array<int, kMaxArity> child{-1, -1, -1};
};

class Enumerator {
 public:
  explicit Enumerator(const ParseForest& f) : f_(f), memo_(f.items().size()), done_(f.items().size(), false) {}

  const std::vector<Derivation>& derivations(int item) {
    const auto idx = static_cast<std::size_t>(item);
    if (done_[idx]) return memo_[idx];
    std::vector<Derivation> out;
    const ForestItem& it = f_.item(item);
    for (std::size_t bi = 0; bi < it.derivations.size(); ++bi) {
      const Backpointer& bp = it.derivations[bi];
      if (!bp.rule.valid()) {
        out.push_back(Derivation{static_cast<int>(bi), {}});
        continue;
      }
      const std::size_t k = f_.grammar().rule(bp.rule).arity();
      std::array<std::size_t, kMaxArity> sizes{1, 1, 1};
      for (std::size_t c = 0; c < k; ++c) sizes[c] = derivations(bp.children[c]).size();
      // Odometer over the child derivation lists, first child slowest.
      for (std::size_t a = 0; a < sizes[0]; ++a)
        for (std::size_t b = 0; b < sizes[1]; ++b)
          for (std::size_t c = 0; c < sizes[2]; ++c) {
            Derivation d{static_cast<int>(bi), {-1, -1, -1}};
            const std::array<std::size_t, kMaxArity> pick{a, b, c};
            for (std::size_t j = 0; j < k; ++j) d.child[j] = static_cast<int>(pick[j]);
            out.push_back(d);
          }
    }
    memo_[idx] = std::move(out);
    done_[idx] = true;
    return memo_[idx];
  }

  void unfold(int item, int deriv, Tree& tree) {
    const ForestItem& it = f_.item(item);
    const Derivation d = derivations(item)[static_cast<std::size_t>(deriv)];
    const Backpointer& bp = it.derivations[static_cast<std::size_t>(d.backpointer)];
    const int self = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(TreeNode{it.category, it.begin, it.end, bp.rule, {}});
    if (!bp.rule.valid()) return;
    const std::size_t k = f_.grammar().rule(bp.rule).arity();
    for (std::size_t j = 0; j < k; ++j) {
      const int child_index = static_cast<int>(tree.nodes.size());
      tree.nodes[static_cast<std::size_t>(self)].children.push_back(child_index);
      unfold(bp.children[j], d.child[j], tree);
    }
  }

 private:
  const ParseForest& f_;
  std::vector<std::vector<Derivation>> memo_;
  std::vector<bool> done_;
};

}  // namespace

std::uint64_t count_parses(const ParseForest& forest) {
  auto root = forest.root();
  if (!root) return 0;
  Counter counter(forest);
  return counter.count(*root);
}

std::vector<Interpretation> enumerate(const ParseForest& forest, std::size_t cap) {
  std::vector<Interpretation> out;
  auto root = forest.root();
  if (!root) return out;
  const std::uint64_t total = count_parses(forest);
  if (total > cap)
    throw Error(ErrorCategory::CapExceeded,
                std::to_string(total) + " interpretations exceed the cap of " + std::to_string(cap));
  Enumerator e(forest);
  const auto& roots = e.derivations(*root);
  out.reserve(roots.size());
  for (std::size_t d = 0; d < roots.size(); ++d) {
    Interpretation interp;
    interp.tree.tokens.assign(forest.tokens().begin(), forest.tokens().end());
    e.unfold(*root, static_cast<int>(d), interp.tree);
    interp.attachments = attachment_records(interp.tree);
    out.push_back(std::move(interp));
  }
  return out;
}

}  // namespace disamb
