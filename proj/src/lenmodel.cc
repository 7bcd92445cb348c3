#include "disamb/lenmodel.h"

#include <vector>

#include "disamb/error.h"
#include "text.h"

namespace disamb {

namespace {

std::uint64_t binomial(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

void check_tree(const Tree& t, const Grammar& g, std::size_t index) {
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const TreeNode& n = t.nodes[i];
    if (n.preterminal()) continue;
    if (n.rule.index() >= g.rule_count())
      throw Error(ErrorCategory::Data,
                  "tree " + std::to_string(index + 1) + ", node " + std::to_string(i) + ": rule not in grammar");
    const Rule& r = g.rule(n.rule);
    bool ok = r.lhs == n.category && r.arity() == n.children.size();
    for (std::size_t c = 0; ok && c < n.children.size(); ++c) ok = t.node(n.children[c]).category == r.rhs[c];
    if (!ok)
      throw Error(ErrorCategory::Data, "tree " + std::to_string(index + 1) + ", node " + std::to_string(i) +
                                           ": children do not match rule " + g.signature(r));
  }
}

}  // namespace

std::size_t signature_arity(std::string_view signature) {
  auto arrow = signature.find("->");
  if (arrow == std::string_view::npos) return 0;
  return text::split_ws(signature.substr(arrow + 2)).size();
}

bool operator==(const LenModel& a, const LenModel& b) {
  if (a.rules_.size() != b.rules_.size()) return false;
  for (auto ia = a.rules_.begin(), ib = b.rules_.begin(); ia != a.rules_.end(); ++ia, ++ib) {
    if (ia->first != ib->first || ia->second.arity != ib->second.arity || ia->second.total != ib->second.total ||
        ia->second.counts != ib->second.counts)
      return false;
  }
  return true;
}

void LenModel::set_smoothing(LenSmoothing s) {
  if (s.alpha < 0.0) throw Error(ErrorCategory::Usage, "smoothing alpha must be >= 0");
  if (s.max_length < 1) throw Error(ErrorCategory::Usage, "smoothing max length must be >= 1");
  smoothing_ = s;
}

void LenModel::add(std::string_view signature, const LengthTuple& lengths, std::uint64_t count) {
  std::size_t k = signature_arity(signature);
  if (k == 0 || k > kMaxArity) throw Error(ErrorCategory::Data, "bad rule signature '" + std::string(signature) + "'");
  if (lengths.size != k)
    throw Error(ErrorCategory::Data,
                "length tuple " + to_string(lengths) + " does not match arity of '" + std::string(signature) + "'");
  for (int l : lengths.view())
    if (l < 1) throw Error(ErrorCategory::Data, "length tuple " + to_string(lengths) + " has a non-positive length");
  if (count == 0) return;
  auto it = rules_.find(signature);
  if (it == rules_.end()) it = rules_.emplace(std::string(signature), RuleCounts{k, {}, 0}).first;
  it->second.counts[lengths] += count;
  it->second.total += count;
}

const LenModel::RuleCounts* LenModel::find(std::string_view signature) const {
  auto it = rules_.find(signature);
  return it == rules_.end() ? nullptr : &it->second;
}

double LenModel::prob(std::string_view signature, const LengthTuple& lengths) const {
  const RuleCounts* rc = find(signature);
  std::uint64_t c = 0, total = 0;
  if (rc) {
    total = rc->total;
    auto it = rc->counts.find(lengths);
    if (it != rc->counts.end()) c = it->second;
  }
  if (smoothing_.alpha > 0.0) {
    int k = static_cast<int>(lengths.size);
    if (k < 1 || k > smoothing_.max_length || lengths.sum() > smoothing_.max_length) return 0.0;
    double support = static_cast<double>(binomial(smoothing_.max_length, k));
    return (static_cast<double>(c) + smoothing_.alpha) / (static_cast<double>(total) + smoothing_.alpha * support);
  }
  if (total == 0) return 0.0;
  return static_cast<double>(c) / static_cast<double>(total);
}

std::map<int, double> LenModel::marginal(std::string_view signature, std::size_t position) const {
  std::map<int, double> out;
  const RuleCounts* rc = find(signature);
  if (!rc || rc->total == 0 || position >= rc->arity) return out;
  std::map<int, std::uint64_t> counts;
  for (const auto& [t, c] : rc->counts) counts[t[position]] += c;
  for (const auto& [l, c] : counts) out[l] = static_cast<double>(c) / static_cast<double>(rc->total);
  return out;
}

LenModel fit_len(std::span<const Tree> trees, const Grammar& g) {
  LenModel m;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    check_tree(trees[i], g, i);
    for (const auto& a : attachment_records(trees[i])) m.add(g.signature(a.rule), a.child_lengths);
  }
  return m;
}

double length_prob(const LenModel& m, const Grammar& g, const AttachmentRecord& a) {
  const Rule& r = g.rule(a.rule);
  if (a.child_lengths.size != r.arity())
    throw Error(ErrorCategory::Data, "length tuple " + to_string(a.child_lengths) + " does not match arity of '" +
                                         g.signature(r) + "'");
  return m.prob(g.signature(r), a.child_lengths);
}

Likelihood syn_likelihood(const LenModel& m, const Grammar& g, std::span<const AttachmentRecord> attachments) {
  std::vector<double> f;
  f.reserve(attachments.size());
  for (const auto& a : attachments) f.push_back(length_prob(m, g, a));
  return geometric_mean(std::move(f));
}

std::uint64_t param_count(int k, int n) {
  if (k < 1 || n < 1) throw Error(ErrorCategory::Usage, "param_count needs k >= 1 and N >= 1");
  if (k > n) throw Error(ErrorCategory::Usage, "param_count needs k <= N");
  return binomial(n, k) - 1;
}

}  // namespace disamb
