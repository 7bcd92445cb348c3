#include "disamb/tree.h"

#include "disamb/error.h"
#include "text.h"

namespace disamb {

namespace {

void write_node(const Tree& tree, const Grammar& g, int index, std::string& out) {
  const TreeNode& n = tree.node(index);
  out += '(';
  if (n.preterminal()) {
    const Token& tok = tree.tokens.at(static_cast<std::size_t>(n.begin));
    out += tok.tag;
    out += ' ';
    out += tok.surface;
  } else {
    out += g.name(n.category);
    for (int c : n.children) {
      out += ' ';
      write_node(tree, g, c, out);
    }
  }
  out += ')';
}

}  // namespace

std::string to_bracketed(const Tree& tree, const Grammar& g) {
  std::string out;
  if (!tree.nodes.empty()) write_node(tree, g, 0, out);
  return out;
}

bool same_tree(const Tree& a, const Tree& b) {
  if (a.nodes.size() != b.nodes.size()) return false;
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    const TreeNode& x = a.nodes[i];
    const TreeNode& y = b.nodes[i];
    if (x.category != y.category || x.begin != y.begin || x.end != y.end || x.children != y.children)
      return false;
  }
  return true;
}

std::vector<Token> parse_tagged_sentence(std::string_view line) {
  std::vector<Token> out;
  for (std::string_view field : text::split_ws(line)) {
    auto slash = field.rfind('/');
    if (slash == std::string_view::npos || slash == 0 || slash + 1 == field.size())
      throw Error(ErrorCategory::Data, "malformed token '" + std::string(field) + "' (expected surface/TAG)");
    out.push_back(Token{std::string(field.substr(0, slash)), std::string(field.substr(slash + 1))});
  }
  return out;
}

std::string format_tagged_sentence(const std::vector<Token>& tokens) {
  std::string out;
  for (const Token& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t.surface;
    out += '/';
    out += t.tag;
  }
  return out;
}

}  // namespace disamb
