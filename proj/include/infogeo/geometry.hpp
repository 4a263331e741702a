#pragma once

// Entropic geometry of a set of random variables: the Rokhlin-Rajski
// information distance and its higher-dimensional generalizations (area,
// volume, n-volume) built from leave-one-out conditional entropies.
//
// For a subset {A_1..A_d} let h_i = H(A_i | all other members). Then
//   distance  D     = h_1 + h_2                     (d = 2)
//   area      A     = h_1 h_2 + h_2 h_3 + h_3 h_1   (d = 3)
//   volume    V     = Σ_i Π_{j≠i} h_j               (d = 4)
//   n-volume        = e_{d-1}(h_1, ..., h_d)
// Units are bit^(d-1).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "infogeo/distribution.hpp"
#include "infogeo/elementary_symmetric.hpp"
#include "infogeo/entropy.hpp"
#include "infogeo/error.hpp"

namespace infogeo {

inline constexpr double kRadicandClamp = 1e-9;
inline constexpr double kDivergenceThreshold = 1e-9;

/// Entry i is H(subset_i | subset \ {subset_i}), in bits.
using ConditionalEntropyVector = std::vector<double>;

using DistanceMatrix = std::vector<std::vector<double>>;

enum class FacetConvention { Sum, Mean };

inline ConditionalEntropyVector conditional_entropy_vector(const JointDistribution& dist,
                                                           const VariableSubset& subset) {
  dist.check(subset);
  if (subset.size() < 2) {
    throw Error(ErrorCode::SubsetTooSmall, "conditional entropy vector needs two variables");
  }
  const double whole = joint_entropy(dist, subset);
  ConditionalEntropyVector h;
  h.reserve(subset.size());
  for (std::size_t i : subset) h.push_back(whole - joint_entropy(dist, subset.without(i)));
  return h;
}

/// D(x, y) = 2 H(xy) - H(x) - H(y).
inline double info_distance(const JointDistribution& dist, std::size_t x, std::size_t y) {
  if (x == y) throw Error(ErrorCode::SameVariable, "distance of a variable to itself");
  dist.check(VariableSubset{x, y});
  const std::size_t lo = std::min(x, y), hi = std::max(x, y);
  return 2.0 * joint_entropy(dist, {lo, hi}) - joint_entropy(dist, {lo}) - joint_entropy(dist, {hi});
}

inline DistanceMatrix distance_matrix(const JointDistribution& dist) {
  const std::size_t n = dist.variable_count();
  if (n < 2) throw Error(ErrorCode::TooFewVariables, "distance matrix needs two variables");
  std::vector<double> single(n);
  for (std::size_t i = 0; i < n; ++i) single[i] = joint_entropy(dist, {i});
  DistanceMatrix m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = 2.0 * joint_entropy(dist, {i, j}) - single[i] - single[j];
      m[i][j] = d;
      m[j][i] = d;
    }
  }
  return m;
}

namespace detail {

template <std::size_t N>
VariableSubset distinct_subset(const JointDistribution& dist, std::array<std::size_t, N> idx) {
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = i + 1; j < N; ++j) {
      if (idx[i] == idx[j]) throw Error(ErrorCode::DuplicateIndex, "indices must be distinct");
    }
  }
  VariableSubset s(std::vector<std::size_t>(idx.begin(), idx.end()));
  dist.check(s);
  return s;
}

}  // namespace detail

/// H_{A|BC} H_{B|CA} + H_{B|CA} H_{C|AB} + H_{C|AB} H_{A|BC}, in bit².
inline double info_area(const JointDistribution& dist, std::size_t a, std::size_t b,
                        std::size_t c) {
  const auto h = conditional_entropy_vector(dist, detail::distinct_subset<3>(dist, {a, b, c}));
  return h[0] * h[1] + h[1] * h[2] + h[2] * h[0];
}

/// The same area expanded in joint entropies:
///   3 H_ABC² - 2 (H_AB + H_AC + H_BC) H_ABC + (H_AB H_BC + H_AB H_AC + H_AC H_BC).
inline double info_area_joint_form(const JointDistribution& dist, std::size_t a, std::size_t b,
                                   std::size_t c) {
  detail::distinct_subset<3>(dist, {a, b, c});
  const double abc = joint_entropy(dist, {a, b, c});
  const double ab = joint_entropy(dist, {a, b});
  const double ac = joint_entropy(dist, {a, c});
  const double bc = joint_entropy(dist, {b, c});
  return 3.0 * abc * abc - 2.0 * (ab + ac + bc) * abc + (ab * bc + ab * ac + ac * bc);
}

/// Squared Heron area s(s-a)(s-b)(s-c) of a triangle with the given side
/// lengths, evaluated in Kahan's cancellation-safe ordering.
inline double heron_radicand(double a, double b, double c) noexcept {
  std::array<double, 3> s{a, b, c};
  std::sort(s.begin(), s.end(), std::greater<>());
  const double x = s[0], y = s[1], z = s[2];
  return (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z)) / 16.0;
}

/// Euclidean area of the triangle whose sides are the three pairwise
/// information distances.
inline double euclidean_triangle_area(const JointDistribution& dist, std::size_t a, std::size_t b,
                                      std::size_t c, double clamp = kRadicandClamp) {
  detail::distinct_subset<3>(dist, {a, b, c});
  const double radicand =
      heron_radicand(info_distance(dist, a, b), info_distance(dist, b, c), info_distance(dist, c, a));
  if (radicand < -clamp) {
    throw Error(ErrorCode::NegativeRadicand,
                "Heron radicand " + std::to_string(radicand) + " violates the triangle inequality");
  }
  return radicand <= 0.0 ? 0.0 : std::sqrt(radicand);
}

/// Mean of info_area and euclidean_triangle_area.
inline double blended_area(const JointDistribution& dist, std::size_t a, std::size_t b,
                           std::size_t c, double clamp = kRadicandClamp) {
  return 0.5 * (info_area(dist, a, b, c) + euclidean_triangle_area(dist, a, b, c, clamp));
}

/// H_{A|BCD} H_{B|CDA} H_{C|DAB} + H_{B|CDA} H_{C|DAB} H_{D|ABC}
///   + H_{C|DAB} H_{D|ABC} H_{A|BCD} + H_{D|ABC} H_{A|BCD} H_{B|CDA}, in bit³.
inline double info_volume(const JointDistribution& dist, std::size_t a, std::size_t b,
                          std::size_t c, std::size_t d) {
  const auto h =
      conditional_entropy_vector(dist, detail::distinct_subset<4>(dist, {a, b, c, d}));
  return h[0] * h[1] * h[2] + h[1] * h[2] * h[3] + h[2] * h[3] * h[0] + h[3] * h[0] * h[1];
}

/// (d-1)-volume of the subset: e_{d-1} of its conditional entropy vector.
inline double n_volume(const JointDistribution& dist, const VariableSubset& subset) {
  if (subset.size() < 2) throw Error(ErrorCode::SubsetTooSmall, "n-volume needs d >= 2");
  const auto h = conditional_entropy_vector(dist, subset);
  return elementary_symmetric(h, h.size() - 1);
}

/// (d-2)-surface of the subset: the n-volumes of its d facets, summed (or
/// averaged under FacetConvention::Mean).
inline double surface_area(const JointDistribution& dist, const VariableSubset& subset,
                           FacetConvention convention = FacetConvention::Sum) {
  dist.check(subset);
  if (subset.size() < 3) throw Error(ErrorCode::SubsetTooSmall, "surface area needs d >= 3");
  CompensatedSum acc;
  for (std::size_t i : subset) acc += n_volume(dist, subset.without(i));
  const double total = acc.value();
  return convention == FacetConvention::Sum ? total : total / static_cast<double>(subset.size());
}

/// Ratio of mean surface to mean volume. Divergent when the mean volume is
/// below the threshold (near-maximal correlation).
struct Reactivity {
  bool divergent = false;
  double value = 0.0;

  static Reactivity make_divergent() { return {true, 0.0}; }
  friend bool operator==(const Reactivity&, const Reactivity&) = default;
};

inline Reactivity reactivity(double area_mean, double volume_mean,
                             double threshold = kDivergenceThreshold) {
  if (volume_mean < threshold) return Reactivity::make_divergent();
  return {false, area_mean / volume_mean};
}

struct TripleArea {
  std::array<std::size_t, 3> indices;
  double info_area;
  double euclidean_area;
  double blended_area;
};

struct QuadrupleVolume {
  std::array<std::size_t, 4> indices;
  double info_volume;
};

/// All triples of `subset` in lexicographic position order.
inline std::vector<TripleArea> triple_areas(const JointDistribution& dist,
                                            const VariableSubset& subset,
                                            double clamp = kRadicandClamp) {
  std::vector<TripleArea> out;
  const std::size_t n = subset.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        const std::size_t a = subset[i], b = subset[j], c = subset[k];
        const double area = info_area(dist, a, b, c);
        const double euclid = euclidean_triangle_area(dist, a, b, c, clamp);
        out.push_back({{a, b, c}, area, euclid, 0.5 * (area + euclid)});
      }
    }
  }
  return out;
}

inline std::vector<QuadrupleVolume> quadruple_volumes(const JointDistribution& dist,
                                                      const VariableSubset& subset) {
  std::vector<QuadrupleVolume> out;
  const std::size_t n = subset.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        for (std::size_t l = k + 1; l < n; ++l) {
          const std::size_t a = subset[i], b = subset[j], c = subset[k], d = subset[l];
          out.push_back({{a, b, c, d}, info_volume(dist, a, b, c, d)});
        }
      }
    }
  }
  return out;
}

}  // namespace infogeo
