#ifndef DISAMB_LIKELIHOOD_H
#define DISAMB_LIKELIHOOD_H

#include <cstddef>
#include <vector>

namespace disamb {

// Geometric mean held in log space. `zero` marks a vanishing factor, in
// which case mean_log is meaningless.
struct Likelihood {
  bool zero = false;
  double mean_log = 0.0;
  std::size_t factors = 0;

  double value() const;
};

// Factors are sorted before the logs are summed, so any permutation of the
// same multiset gives a bit-identical result. Empty input yields 1.
Likelihood geometric_mean(std::vector<double> factors);

// Plain product in the same canonical (sorted) order. Empty input yields 1.
double canonical_product(std::vector<double> factors);

}  // namespace disamb

#endif  // DISAMB_LIKELIHOOD_H
