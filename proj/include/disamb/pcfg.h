#ifndef DISAMB_PCFG_H
#define DISAMB_PCFG_H

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "disamb/parser.h"

namespace disamb {

// Rule probabilities P(rhs | lhs) by relative frequency.
class PcfgModel {
 public:
  struct LhsCounts {
    std::map<std::string, std::uint64_t> counts;  // rhs "R1 R2" -> count
    std::uint64_t total = 0;
  };

  void add(std::string_view lhs, std::string_view rhs, std::uint64_t count = 1);
  double prob(std::string_view lhs, std::string_view rhs) const;
  double prob(const Grammar& g, RuleId rule) const;

  const std::map<std::string, LhsCounts, std::less<>>& table() const { return table_; }

  friend bool operator==(const PcfgModel& a, const PcfgModel& b);

 private:
  std::map<std::string, LhsCounts, std::less<>> table_;
};

PcfgModel fit_pcfg(std::span<const Tree> trees, const Grammar& g);

// Product over every rule application of the tree. Factors are multiplied in
// sorted order, so trees with the same rule multiset score identically.
double pcfg_likelihood(const PcfgModel& m, const Grammar& g, const Tree& tree);

}  // namespace disamb

#endif  // DISAMB_PCFG_H
