#pragma once

// Shannon entropy measures over subsets of a JointDistribution. All values
// are in bits. Terms with p below kNegligibleProbability contribute nothing
// (0 log 0 = 0).

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "infogeo/distribution.hpp"
#include "infogeo/error.hpp"
#include "infogeo/summation.hpp"

namespace infogeo {

inline constexpr double kNegligibleProbability = 1e-300;

/// -Σ p log2 p over a flat probability vector.
inline double shannon_entropy(std::span<const double> probabilities) noexcept {
  CompensatedSum acc;
  for (double p : probabilities) {
    if (p < kNegligibleProbability) continue;
    acc += -p * std::log2(p);
  }
  return acc.value();
}

/// H(subset). The empty subset has zero entropy.
inline double joint_entropy(const JointDistribution& dist, const VariableSubset& subset) {
  dist.check(subset);
  if (subset.empty()) return 0.0;
  if (subset.size() == dist.variable_count()) {
    // Entropy is invariant under reordering of the variables.
    return shannon_entropy(dist.probabilities());
  }
  return shannon_entropy(marginalize(dist, subset).probabilities());
}

namespace detail {

inline void require_disjoint(const VariableSubset& a, const VariableSubset& b) {
  if (!a.disjoint_from(b)) {
    throw Error(ErrorCode::OverlappingSubsets, "subsets share a variable");
  }
}

}  // namespace detail

/// H(target | given) = H(target ∪ given) - H(given).
inline double conditional_entropy(const JointDistribution& dist, const VariableSubset& target,
                                  const VariableSubset& given) {
  dist.check(target);
  dist.check(given);
  detail::require_disjoint(target, given);
  return joint_entropy(dist, target.united(given)) - joint_entropy(dist, given);
}

/// I(x : y) = H(x) + H(y) - H(x ∪ y).
inline double mutual_information(const JointDistribution& dist, const VariableSubset& x,
                                 const VariableSubset& y) {
  dist.check(x);
  dist.check(y);
  detail::require_disjoint(x, y);
  return joint_entropy(dist, x) + joint_entropy(dist, y) - joint_entropy(dist, x.united(y));
}

/// Co-information of two or more disjoint parts:
///   I(P1 : ... : Pk) = -Σ_{∅≠T⊆{1..k}} (-1)^{|T|} H(∪_{i∈T} Pi).
/// Reduces to mutual_information for k = 2 and to
/// H(A)+H(B)+H(C)-H(AB)-H(AC)-H(BC)+H(ABC) for k = 3. May be negative.
inline double multiway_mutual_information(const JointDistribution& dist,
                                          std::span<const VariableSubset> parts) {
  if (parts.size() < 2) throw Error(ErrorCode::TooFewParts, "need at least two parts");
  if (parts.size() > 24) throw Error(ErrorCode::SizeMismatch, "at most 24 parts supported");
  for (std::size_t i = 0; i < parts.size(); ++i) {
    dist.check(parts[i]);
    if (parts[i].empty()) throw Error(ErrorCode::EmptySubset, "part is empty");
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      detail::require_disjoint(parts[i], parts[j]);
    }
  }
  CompensatedSum acc;
  const std::size_t masks = std::size_t{1} << parts.size();
  for (std::size_t mask = 1; mask < masks; ++mask) {
    VariableSubset members;
    int count = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (mask & (std::size_t{1} << i)) {
        members = members.united(parts[i]);
        ++count;
      }
    }
    const double h = joint_entropy(dist, members);
    acc += (count % 2 == 1) ? h : -h;
  }
  return acc.value();
}

/// I(x : y | given) = H(x ∪ given) + H(y ∪ given) - H(x ∪ y ∪ given) - H(given).
inline double conditional_mutual_information(const JointDistribution& dist,
                                             const VariableSubset& x, const VariableSubset& y,
                                             const VariableSubset& given) {
  dist.check(x);
  dist.check(y);
  dist.check(given);
  detail::require_disjoint(x, y);
  detail::require_disjoint(x, given);
  detail::require_disjoint(y, given);
  const auto xg = x.united(given);
  const auto yg = y.united(given);
  return joint_entropy(dist, xg) + joint_entropy(dist, yg) - joint_entropy(dist, xg.united(y)) -
         joint_entropy(dist, given);
}

}  // namespace infogeo
