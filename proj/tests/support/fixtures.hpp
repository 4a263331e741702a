#pragma once

// Named distributions and seeded random generators shared by the test suites.

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "infogeo/distribution.hpp"

namespace infogeo::testing {

inline std::string default_name(std::size_t i) {
  static const char* names[] = {"A", "B", "C", "D", "E", "F", "G", "H"};
  return i < 8 ? names[i] : "V" + std::to_string(i);
}

inline std::vector<Variable> bits(std::size_t n) {
  std::vector<Variable> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back({default_name(i), 2});
  return v;
}

inline JointDistribution fair_bit(const std::string& name = "A") {
  return JointDistribution::build({{name, 2}}, {0.5, 0.5});
}

inline JointDistribution independent_fair_bits(std::size_t n) {
  const std::size_t size = std::size_t{1} << n;
  return JointDistribution::build(bits(n), std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

/// A = B fair bits.
inline JointDistribution correlated_pair() {
  return JointDistribution::build(bits(2), {0.5, 0.0, 0.0, 0.5});
}

/// n bits that are all equal: outcomes 0...0 and 1...1 each with 1/2.
inline JointDistribution all_equal_bits(std::size_t n) {
  std::vector<double> p(std::size_t{1} << n, 0.0);
  p.front() = p.back() = 0.5;
  return JointDistribution::build(bits(n), std::move(p));
}

inline JointDistribution ghz_z() { return all_equal_bits(3); }

/// A, B independent fair bits and C = A xor B.
inline JointDistribution xor_triple() {
  std::vector<double> p(8, 0.0);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) p[a * 4 + b * 2 + (a ^ b)] = 0.25;
  }
  return JointDistribution::build(bits(3), std::move(p));
}

/// Fair bits that agree with probability p_equal.
inline JointDistribution binary_symmetric_pair(double p_equal) {
  return JointDistribution::build(
      bits(2), {p_equal / 2, (1 - p_equal) / 2, (1 - p_equal) / 2, p_equal / 2});
}

/// Appends a copy of variable `source` named `name`.
inline JointDistribution with_duplicate(const JointDistribution& dist, std::size_t source,
                                        const std::string& name) {
  auto vars = dist.variables();
  const std::size_t card = vars[source].cardinality;
  vars.push_back({name, card});
  std::vector<double> p(dist.size() * card, 0.0);
  const std::size_t stride = dist.stride(source);
  for (std::size_t flat = 0; flat < dist.size(); ++flat) {
    const std::size_t value = (flat / stride) % card;
    p[flat * card + value] = dist.probabilities()[flat];
  }
  return JointDistribution::build(std::move(vars), std::move(p));
}

/// Random distribution over the given cardinalities. Weights are Exp(1)
/// (a flat Dirichlet draw); with probability `sparsity` an entry is zeroed,
/// which exercises the 0 log 0 paths.
inline JointDistribution random_distribution(std::mt19937_64& rng,
                                             const std::vector<std::size_t>& cards,
                                             double sparsity = 0.15) {
  std::vector<Variable> vars;
  std::size_t size = 1;
  for (std::size_t i = 0; i < cards.size(); ++i) {
    vars.push_back({default_name(i), cards[i]});
    size *= cards[i];
  }
  std::exponential_distribution<double> weight(1.0);
  std::bernoulli_distribution drop(sparsity);
  std::vector<double> p(size);
  double total = 0.0;
  do {
    total = 0.0;
    for (double& x : p) {
      x = drop(rng) ? 0.0 : weight(rng);
      total += x;
    }
  } while (total <= 0.0);
  for (double& x : p) x /= total;
  return JointDistribution::build(std::move(vars), std::move(p));
}

inline std::vector<std::size_t> random_cardinalities(std::mt19937_64& rng, std::size_t n,
                                                     std::size_t lo, std::size_t hi) {
  std::uniform_int_distribution<std::size_t> card(lo, hi);
  std::vector<std::size_t> out(n);
  for (auto& c : out) c = card(rng);
  return out;
}

}  // namespace infogeo::testing
