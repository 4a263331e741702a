#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace infogeo {

/// e_0 .. e_n of the values x_1 .. x_n, by the one-variable-at-a-time
/// recurrence e_k <- e_k + x_j e_{k-1}. For nonnegative inputs every update
/// adds nonnegative terms, so there is no cancellation.
inline std::vector<double> elementary_symmetric(std::span<const double> x) {
  std::vector<double> e(x.size() + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    for (std::size_t k = j + 1; k >= 1; --k) e[k] += x[j] * e[k - 1];
  }
  return e;
}

/// e_k(x); zero when k exceeds the number of values.
inline double elementary_symmetric(std::span<const double> x, std::size_t k) {
  if (k > x.size()) return 0.0;
  return elementary_symmetric(x)[k];
}

}  // namespace infogeo
