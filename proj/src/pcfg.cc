#include "disamb/pcfg.h"

#include <vector>

#include "disamb/error.h"
#include "disamb/likelihood.h"

namespace disamb {

namespace {

std::string rhs_text(const Grammar& g, const Rule& r) {
  std::string out;
  for (CategoryId c : r.rhs) {
    if (!out.empty()) out += ' ';
    out += g.name(c);
  }
  return out;
}

}  // namespace

bool operator==(const PcfgModel& a, const PcfgModel& b) {
  if (a.table_.size() != b.table_.size()) return false;
  for (auto ia = a.table_.begin(), ib = b.table_.begin(); ia != a.table_.end(); ++ia, ++ib)
    if (ia->first != ib->first || ia->second.total != ib->second.total || ia->second.counts != ib->second.counts)
      return false;
  return true;
}

void PcfgModel::add(std::string_view lhs, std::string_view rhs, std::uint64_t count) {
  if (lhs.empty() || rhs.empty()) throw Error(ErrorCategory::Data, "empty rule side in PCFG count");
  if (count == 0) return;
  auto it = table_.find(lhs);
  if (it == table_.end()) it = table_.emplace(std::string(lhs), LhsCounts{}).first;
  it->second.counts[std::string(rhs)] += count;
  it->second.total += count;
}

double PcfgModel::prob(std::string_view lhs, std::string_view rhs) const {
  auto it = table_.find(lhs);
  if (it == table_.end() || it->second.total == 0) return 0.0;
  auto jt = it->second.counts.find(std::string(rhs));
  if (jt == it->second.counts.end()) return 0.0;
  return static_cast<double>(jt->second) / static_cast<double>(it->second.total);
}

double PcfgModel::prob(const Grammar& g, RuleId rule) const {
  const Rule& r = g.rule(rule);
  return prob(g.name(r.lhs), rhs_text(g, r));
}

PcfgModel fit_pcfg(std::span<const Tree> trees, const Grammar& g) {
  PcfgModel m;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    for (std::size_t j = 0; j < trees[i].nodes.size(); ++j) {
      const TreeNode& n = trees[i].nodes[j];
      if (n.preterminal()) continue;
      if (n.rule.index() >= g.rule_count() || g.rule(n.rule).lhs != n.category)
        throw Error(ErrorCategory::Data,
                    "tree " + std::to_string(i + 1) + ", node " + std::to_string(j) + ": rule not in grammar");
      const Rule& r = g.rule(n.rule);
      m.add(g.name(r.lhs), rhs_text(g, r));
    }
  }
  return m;
}

double pcfg_likelihood(const PcfgModel& m, const Grammar& g, const Tree& tree) {
  std::vector<double> f;
  for (const auto& n : tree.nodes)
    if (!n.preterminal()) f.push_back(m.prob(g, n.rule));
  return canonical_product(std::move(f));
}

}  // namespace disamb
