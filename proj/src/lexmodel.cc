#include "disamb/lexmodel.h"

#include <vector>

namespace disamb {

namespace {

double ratio(const LexModel::Distribution& d, std::string_view outcome) {
  if (d.total == 0) return 0.0;
  auto it = d.counts.find(std::string(outcome));
  if (it == d.counts.end()) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(d.total);
}

}  // namespace

bool operator==(const LexModel::Distribution& a, const LexModel::Distribution& b) {
  return a.total == b.total && a.counts == b.counts;
}

bool operator==(const LexModel& a, const LexModel& b) {
  return a.total_ == b.total_ && a.tri_ == b.tri_ && a.bi_ == b.bi_;
}

void LexModel::add(const DependencyTriple& t, std::uint64_t count) {
  if (count == 0) return;
  Distribution& tri = tri_[FrameKey{t.head, t.head_kind, t.slot}];
  tri.counts[t.dependent] += count;
  tri.total += count;
  Distribution& bi = bi_[HeadKey{t.head, t.head_kind}];
  bi.counts[t.slot] += count;
  bi.total += count;
  total_ += count;
}

double LexModel::p3(std::string_view head, HeadKind kind, std::string_view slot, std::string_view dependent) const {
  auto it = tri_.find(FrameKey{std::string(head), kind, std::string(slot)});
  return it == tri_.end() ? 0.0 : ratio(it->second, dependent);
}

double LexModel::p2(std::string_view head, HeadKind kind, std::string_view slot) const {
  auto it = bi_.find(HeadKey{std::string(head), kind});
  return it == bi_.end() ? 0.0 : ratio(it->second, slot);
}

LexModel fit_lex(std::span<const CountedTriple> triples) {
  LexModel m;
  for (const auto& t : triples) m.add(t.triple, t.count);
  return m;
}

Likelihood lex3_likelihood(const LexModel& m, std::span<const DependencyTriple> triples) {
  std::vector<double> f;
  f.reserve(triples.size());
  for (const auto& t : triples) f.push_back(m.p3(t.head, t.head_kind, t.slot, t.dependent));
  return geometric_mean(std::move(f));
}

Likelihood lex2_likelihood(const LexModel& m, std::span<const DependencyTriple> triples) {
  std::vector<double> f;
  f.reserve(triples.size());
  for (const auto& t : triples) f.push_back(m.p2(t.head, t.head_kind, t.slot));
  return geometric_mean(std::move(f));
}

}  // namespace disamb
