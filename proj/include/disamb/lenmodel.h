#ifndef DISAMB_LENMODEL_H
#define DISAMB_LENMODEL_H

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "disamb/likelihood.h"
#include "disamb/parser.h"

namespace disamb {

// Add-alpha smoothing over all k-tuples of positive lengths summing to at
// most max_length. alpha = 0 (the default) is plain relative frequency.
struct LenSmoothing {
  double alpha = 0.0;
  int max_length = 40;
};

// Length probabilities P(l_1..l_k | rule), keyed by rule signature so that a
// model stays usable with any grammar that has the same rules.
class LenModel {
 public:
  struct RuleCounts {
    std::size_t arity = 0;
    std::map<LengthTuple, std::uint64_t> counts;
    std::uint64_t total = 0;
  };

  // Throws Error(Data) on a zero length or an arity that disagrees with the
  // signature.
  void add(std::string_view signature, const LengthTuple& lengths, std::uint64_t count = 1);

  double prob(std::string_view signature, const LengthTuple& lengths) const;

  // Distribution of one child position, summed over the others.
  std::map<int, double> marginal(std::string_view signature, std::size_t position) const;

  const std::map<std::string, RuleCounts, std::less<>>& rules() const { return rules_; }
  const RuleCounts* find(std::string_view signature) const;

  const LenSmoothing& smoothing() const { return smoothing_; }
  void set_smoothing(LenSmoothing s);

  // Compares counts only; smoothing is a query-time setting.
  friend bool operator==(const LenModel& a, const LenModel& b);

 private:
  std::map<std::string, RuleCounts, std::less<>> rules_;
  LenSmoothing smoothing_;
};

// Number of right-hand sides in a signature "L -> R1 R2".
std::size_t signature_arity(std::string_view signature);

// Counts every internal node of every tree. Throws Error(Data) naming the
// tree and node when a rule is not part of g.
LenModel fit_len(std::span<const Tree> trees, const Grammar& g);

// Throws Error(Data) when the tuple arity differs from the rule's.
double length_prob(const LenModel& m, const Grammar& g, const AttachmentRecord& a);

Likelihood syn_likelihood(const LenModel& m, const Grammar& g, std::span<const AttachmentRecord> attachments);

// C(N, k) - 1: free parameters of one rule's length distribution when the
// parent spans at most N words. Throws Error(Usage) unless 1 <= k <= N.
std::uint64_t param_count(int k, int n);

}  // namespace disamb

#endif  // DISAMB_LENMODEL_H
