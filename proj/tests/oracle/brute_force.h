// Test-only oracles. Nothing here touches the chart parser: trees are
// enumerated top-down straight from the grammar rules.
#ifndef DISAMB_TESTS_ORACLE_BRUTE_FORCE_H
#define DISAMB_TESTS_ORACLE_BRUTE_FORCE_H

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "disamb/grammar.h"
#include "disamb/tree.h"

namespace oracle {

// Every bracketed tree rooted in `cat` covering tokens [b, e).
inline std::vector<std::string> all_trees(const disamb::Grammar& g, const std::vector<disamb::Token>& toks,
                                          disamb::CategoryId cat, int b, int e) {
  std::vector<std::string> out;
  if (g.category(cat).preterminal) {
    if (e == b + 1) {
      auto pre = g.preterminal_for_tag(toks[static_cast<std::size_t>(b)].tag);
      if (pre && *pre == cat) out.push_back("(" + toks[static_cast<std::size_t>(b)].tag + " " +
                                            toks[static_cast<std::size_t>(b)].surface + ")");
    }
    return out;
  }
  for (const disamb::Rule& r : g.rules()) {
    if (r.lhs != cat) continue;
    const int k = static_cast<int>(r.arity());
    if (e - b < k) continue;
    // Choose k-1 cut points strictly inside (b, e).
    std::vector<int> cuts(static_cast<std::size_t>(k + 1));
    cuts[0] = b;
    cuts[static_cast<std::size_t>(k)] = e;
    auto recurse = [&](auto&& self, int pos) -> void {
      if (pos == k) {
        std::vector<std::string> partial{"(" + g.name(cat)};
        for (int c = 0; c < k; ++c) {
          auto kids = all_trees(g, toks, r.rhs[static_cast<std::size_t>(c)], cuts[static_cast<std::size_t>(c)],
                                cuts[static_cast<std::size_t>(c + 1)]);
          std::vector<std::string> next;
          for (const auto& p : partial)
            for (const auto& kid : kids) next.push_back(p + " " + kid);
          partial.swap(next);
          if (partial.empty()) return;
        }
        for (auto& p : partial) out.push_back(p + ")");
        return;
      }
      const int lo = cuts[static_cast<std::size_t>(pos - 1)] + 1;
      const int hi = e - (k - pos);
      for (int c = lo; c <= hi; ++c) {
        cuts[static_cast<std::size_t>(pos)] = c;
        self(self, pos + 1);
      }
    };
    if (k == 1) {
      auto kids = all_trees(g, toks, r.rhs[0], b, e);
      for (const auto& kid : kids) out.push_back("(" + g.name(cat) + " " + kid + ")");
    } else {
      recurse(recurse, 1);
    }
  }
  return out;
}

inline std::set<std::string> all_parses(const disamb::Grammar& g, const std::vector<disamb::Token>& toks,
                                        disamb::CategoryId goal) {
  auto v = all_trees(g, toks, goal, 0, static_cast<int>(toks.size()));
  return {v.begin(), v.end()};
}

inline std::uint64_t catalan(unsigned n) {
  std::uint64_t c = 1;
  for (unsigned i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

// Random top-down derivation from `cat`, emitting one tag per preterminal.
// Returns false if the yield grows past max_len.
inline bool sample_tags(const disamb::Grammar& g, disamb::CategoryId cat, std::mt19937& rng, std::size_t max_len,
                        int depth, std::vector<std::string>& tags) {
  if (tags.size() > max_len || depth > 30) return false;
  if (g.category(cat).preterminal) {
    tags.push_back(g.name(cat));
    return tags.size() <= max_len;
  }
  std::vector<const disamb::Rule*> options;
  for (const auto& r : g.rules())
    if (r.lhs == cat) options.push_back(&r);
  const disamb::Rule* pick = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
  for (auto c : pick->rhs)
    if (!sample_tags(g, c, rng, max_len, depth + 1, tags)) return false;
  return true;
}

inline std::vector<disamb::Token> tokens_from_tags(const std::vector<std::string>& tags) {
  std::vector<disamb::Token> out;
  for (std::size_t i = 0; i < tags.size(); ++i) out.push_back({"w" + std::to_string(i), tags[i]});
  return out;
}

}  // namespace oracle

#endif
