#include "disamb/likelihood.h"

#include <algorithm>
#include <cmath>

namespace disamb {

double Likelihood::value() const {
  if (zero) return 0.0;
  return std::exp(mean_log);
}

Likelihood geometric_mean(std::vector<double> factors) {
  Likelihood out;
  out.factors = factors.size();
  if (factors.empty()) return out;
  std::sort(factors.begin(), factors.end());
  if (factors.front() <= 0.0) {
    out.zero = true;
    return out;
  }
  double sum = 0.0;
  for (double f : factors) sum += std::log(f);
  out.mean_log = sum / static_cast<double>(factors.size());
  return out;
}

double canonical_product(std::vector<double> factors) {
  std::sort(factors.begin(), factors.end());
  double p = 1.0;
  for (double f : factors) p *= f;
  return p;
}

}  // namespace disamb
