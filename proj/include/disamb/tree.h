#ifndef DISAMB_TREE_H
#define DISAMB_TREE_H

#include <string>
#include <string_view>
#include <vector>

#include "disamb/grammar.h"

namespace disamb {

struct Token {
  std::string surface;
  std::string tag;

  friend bool operator==(const Token&, const Token&) = default;
};

struct TreeNode {
  CategoryId category;
  int begin = 0;  // half-open token span
  int end = 0;
  RuleId rule;  // invalid for preterminal nodes
  std::vector<int> children;

  int length() const { return end - begin; }
  bool preterminal() const { return !rule.valid(); }
};

// A rooted ordered tree over a tagged sentence. Nodes are stored in preorder,
// nodes[0] is the root, and preterminal nodes cover exactly one token.
struct Tree {
  std::vector<Token> tokens;
  std::vector<TreeNode> nodes;

  const TreeNode& root() const { return nodes.front(); }
  const TreeNode& node(int i) const { return nodes.at(static_cast<std::size_t>(i)); }
};

// "(S (NP (N I)) (VP (V ate)))"; preterminals are written as (TAG word).
std::string to_bracketed(const Tree& tree, const Grammar& g);

// Labels and spans coincide node for node.
bool same_tree(const Tree& a, const Tree& b);

// "surface/TAG surface/TAG ...". The tag follows the last '/' of each token.
std::vector<Token> parse_tagged_sentence(std::string_view line);
std::string format_tagged_sentence(const std::vector<Token>& tokens);

}  // namespace disamb

#endif  // DISAMB_TREE_H
