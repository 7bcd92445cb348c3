#ifndef DISAMB_LEXMODEL_H
#define DISAMB_LEXMODEL_H

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <tuple>

#include "disamb/frames.h"
#include "disamb/likelihood.h"

namespace disamb {

// Maximum-likelihood three-word probabilities P(dependent | head, slot) and
// two-word probabilities P(slot | head), both conditioned on the head kind.
// Counts are kept as integers so that re-estimation after a save/load is exact.
class LexModel {
 public:
  using FrameKey = std::tuple<std::string, HeadKind, std::string>;  // head, kind, slot
  using HeadKey = std::pair<std::string, HeadKind>;

  struct Distribution {
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t total = 0;
  };

  void add(const DependencyTriple& t, std::uint64_t count = 1);

  double p3(std::string_view head, HeadKind kind, std::string_view slot, std::string_view dependent) const;
  double p2(std::string_view head, HeadKind kind, std::string_view slot) const;

  const std::map<FrameKey, Distribution>& three_word() const { return tri_; }
  const std::map<HeadKey, Distribution>& two_word() const { return bi_; }
  std::uint64_t total_count() const { return total_; }

  friend bool operator==(const LexModel& a, const LexModel& b);

 private:
  std::map<FrameKey, Distribution> tri_;
  std::map<HeadKey, Distribution> bi_;
  std::uint64_t total_ = 0;
};

bool operator==(const LexModel::Distribution& a, const LexModel::Distribution& b);

LexModel fit_lex(std::span<const CountedTriple> triples);

// Geometric means of p3 / p2 over the triples of one interpretation.
Likelihood lex3_likelihood(const LexModel& m, std::span<const DependencyTriple> triples);
Likelihood lex2_likelihood(const LexModel& m, std::span<const DependencyTriple> triples);

}  // namespace disamb

#endif  // DISAMB_LEXMODEL_H
