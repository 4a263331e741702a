#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "infogeo/error.hpp"
#include "infogeo/summation.hpp"

namespace infogeo {

inline constexpr double kNormalizationTolerance = 1e-9;
inline constexpr double kZeroConditionThreshold = 1e-12;

struct Variable {
  std::string name;
  std::size_t cardinality = 0;

  friend bool operator==(const Variable&, const Variable&) = default;
};

/// An ordered selection of distinct variable positions.
class VariableSubset {
 public:
  VariableSubset() = default;
  VariableSubset(std::initializer_list<std::size_t> indices)
      : VariableSubset(std::vector<std::size_t>(indices)) {}
  explicit VariableSubset(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
    std::vector<std::size_t> sorted = indices_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(ErrorCode::DuplicateIndex, "variable subset repeats an index");
    }
  }

  /// {0, 1, ..., count-1}
  static VariableSubset all(std::size_t count) {
    std::vector<std::size_t> idx(count);
    for (std::size_t i = 0; i < count; ++i) idx[i] = i;
    return VariableSubset(std::move(idx));
  }

  std::span<const std::size_t> indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  std::size_t operator[](std::size_t pos) const { return indices_[pos]; }
  auto begin() const noexcept { return indices_.begin(); }
  auto end() const noexcept { return indices_.end(); }

  bool contains(std::size_t index) const noexcept {
    return std::find(indices_.begin(), indices_.end(), index) != indices_.end();
  }

  bool disjoint_from(const VariableSubset& other) const noexcept {
    return std::none_of(indices_.begin(), indices_.end(),
                        [&](std::size_t i) { return other.contains(i); });
  }

  /// Members of *this followed by members of other not already present.
  VariableSubset united(const VariableSubset& other) const {
    std::vector<std::size_t> idx = indices_;
    for (std::size_t i : other.indices_) {
      if (!contains(i)) idx.push_back(i);
    }
    return VariableSubset(std::move(idx));
  }

  VariableSubset without(std::size_t index) const {
    std::vector<std::size_t> idx;
    idx.reserve(indices_.size());
    for (std::size_t i : indices_) {
      if (i != index) idx.push_back(i);
    }
    return VariableSubset(std::move(idx));
  }

  /// The subset addressed by positions into *this (composition S∘T).
  VariableSubset compose(const VariableSubset& positions) const {
    std::vector<std::size_t> idx;
    idx.reserve(positions.size());
    for (std::size_t p : positions) {
      if (p >= indices_.size()) {
        throw Error(ErrorCode::IndexOutOfRange, "subset position out of range");
      }
      idx.push_back(indices_[p]);
    }
    return VariableSubset(std::move(idx));
  }

  friend bool operator==(const VariableSubset&, const VariableSubset&) = default;

 private:
  std::vector<std::size_t> indices_;
};

/// Discrete joint distribution over named variables. The probability tensor
/// is stored row-major with the last variable varying fastest. Instances are
/// immutable and always satisfy the normalization invariants.
class JointDistribution {
 public:
  static JointDistribution build(std::vector<Variable> variables, std::vector<double> probabilities,
                                 double tolerance = kNormalizationTolerance) {
    if (variables.empty()) {
      throw Error(ErrorCode::ShapeMismatch, "distribution needs at least one variable");
    }
    std::unordered_set<std::string> names;
    std::size_t expected = 1;
    for (const auto& v : variables) {
      if (v.name.empty()) throw Error(ErrorCode::MalformedInput, "variable name is empty");
      if (!names.insert(v.name).second) {
        throw Error(ErrorCode::DuplicateName, "variable name '" + v.name + "' is repeated");
      }
      if (v.cardinality == 0) {
        throw Error(ErrorCode::ShapeMismatch, "variable '" + v.name + "' has cardinality 0");
      }
      expected *= v.cardinality;
    }
    if (probabilities.size() != expected) {
      throw Error(ErrorCode::ShapeMismatch, "expected " + std::to_string(expected) +
                                                " probabilities, got " +
                                                std::to_string(probabilities.size()));
    }
    for (double p : probabilities) {
      if (std::isnan(p)) throw Error(ErrorCode::MalformedInput, "probability is NaN");
      if (p < 0.0) throw Error(ErrorCode::NegativeProbability, "probability " + std::to_string(p));
    }
    CompensatedSum total;
    for (double p : probabilities) {
      if (p > 1.0 + tolerance) {
        throw Error(ErrorCode::NotNormalized, "probability " + std::to_string(p) + " exceeds 1");
      }
      total += p;
    }
    if (!(std::abs(total.value() - 1.0) <= tolerance)) {
      throw Error(ErrorCode::NotNormalized,
                  "probabilities sum to " + std::to_string(total.value()));
    }
    return JointDistribution(std::move(variables), std::move(probabilities));
  }

  const std::vector<Variable>& variables() const noexcept { return variables_; }
  std::size_t variable_count() const noexcept { return variables_.size(); }
  std::span<const double> probabilities() const noexcept { return probabilities_; }
  std::size_t size() const noexcept { return probabilities_.size(); }

  std::size_t cardinality(std::size_t index) const { return variables_.at(index).cardinality; }

  /// Flat-index step of one unit in variable `index`.
  std::size_t stride(std::size_t index) const {
    std::size_t s = 1;
    for (std::size_t i = index + 1; i < variables_.size(); ++i) s *= variables_[i].cardinality;
    return s;
  }

  std::optional<std::size_t> index_of(std::string_view name) const noexcept {
    for (std::size_t i = 0; i < variables_.size(); ++i) {
      if (variables_[i].name == name) return i;
    }
    return std::nullopt;
  }

  /// Probability of a full outcome tuple.
  double at(std::span<const std::size_t> outcome) const {
    if (outcome.size() != variables_.size()) {
      throw Error(ErrorCode::ShapeMismatch, "outcome tuple length mismatch");
    }
    std::size_t flat = 0;
    for (std::size_t i = 0; i < outcome.size(); ++i) {
      if (outcome[i] >= variables_[i].cardinality) {
        throw Error(ErrorCode::OutOfRangeOutcome, "outcome index out of range");
      }
      flat = flat * variables_[i].cardinality + outcome[i];
    }
    return probabilities_[flat];
  }

  void check(const VariableSubset& subset) const {
    for (std::size_t i : subset) {
      if (i >= variables_.size()) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "variable index " + std::to_string(i) + " out of range");
      }
    }
  }

 private:
  JointDistribution(std::vector<Variable> variables, std::vector<double> probabilities)
      : variables_(std::move(variables)), probabilities_(std::move(probabilities)) {}

  std::vector<Variable> variables_;
  std::vector<double> probabilities_;
};

namespace detail {

// Visits every flat index of `dist` in storage order together with a
// secondary index built from per-variable strides (zero strides drop a
// variable). Avoids per-entry division.
template <typename Fn>
void for_each_with_projection(const JointDistribution& dist, std::span<const std::size_t> strides,
                              Fn&& fn) {
  const std::size_t n = dist.variable_count();
  std::vector<std::size_t> digit(n, 0);
  std::size_t projected = 0;
  const auto p = dist.probabilities();
  for (std::size_t flat = 0; flat < p.size(); ++flat) {
    fn(flat, projected);
    for (std::size_t v = n; v-- > 0;) {
      if (++digit[v] < dist.cardinality(v)) {
        projected += strides[v];
        break;
      }
      projected -= strides[v] * (dist.cardinality(v) - 1);
      digit[v] = 0;
    }
  }
}

}  // namespace detail

/// Sums out every variable not in `keep`. The result lists the kept
/// variables in the order given by `keep`.
inline JointDistribution marginalize(const JointDistribution& dist, const VariableSubset& keep) {
  if (keep.empty()) throw Error(ErrorCode::EmptySubset, "marginal needs at least one variable");
  dist.check(keep);

  std::vector<Variable> vars;
  std::vector<std::size_t> strides(dist.variable_count(), 0);
  std::size_t out_size = 1;
  for (std::size_t j = keep.size(); j-- > 0;) {
    strides[keep[j]] = out_size;
    out_size *= dist.cardinality(keep[j]);
  }
  for (std::size_t i : keep) vars.push_back(dist.variables()[i]);

  std::vector<double> out(out_size, 0.0);
  const auto p = dist.probabilities();
  detail::for_each_with_projection(
      dist, strides, [&](std::size_t flat, std::size_t target) { out[target] += p[flat]; });
  return JointDistribution::build(std::move(vars), std::move(out));
}

/// Distribution of the remaining variables given `given == value`.
inline JointDistribution condition(const JointDistribution& dist, std::size_t given,
                                   std::size_t value) {
  if (given >= dist.variable_count()) {
    throw Error(ErrorCode::IndexOutOfRange, "conditioning variable out of range");
  }
  if (dist.variable_count() < 2) {
    throw Error(ErrorCode::TooFewVariables, "conditioning needs a remaining variable");
  }
  if (value >= dist.cardinality(given)) {
    throw Error(ErrorCode::OutOfRangeOutcome, "conditioning value out of range");
  }

  std::vector<Variable> vars;
  std::vector<std::size_t> strides(dist.variable_count(), 0);
  std::size_t out_size = 1;
  for (std::size_t v = dist.variable_count(); v-- > 0;) {
    if (v == given) continue;
    strides[v] = out_size;
    out_size *= dist.cardinality(v);
  }
  for (std::size_t v = 0; v < dist.variable_count(); ++v) {
    if (v != given) vars.push_back(dist.variables()[v]);
  }

  std::vector<double> joint(out_size, 0.0);
  const auto p = dist.probabilities();
  const std::size_t given_stride = dist.stride(given);
  const std::size_t given_card = dist.cardinality(given);
  CompensatedSum event;
  detail::for_each_with_projection(dist, strides, [&](std::size_t flat, std::size_t target) {
    if ((flat / given_stride) % given_card == value) {
      joint[target] = p[flat];
      event += p[flat];
    }
  });
  const double p_event = event.value();
  if (p_event <= kZeroConditionThreshold) {
    throw Error(ErrorCode::ZeroCondition, "conditioning event has probability " +
                                              std::to_string(p_event));
  }
  for (double& q : joint) q /= p_event;
  return JointDistribution::build(std::move(vars), std::move(joint));
}

/// Independent joint of two distributions over disjoint variable names.
inline JointDistribution product(const JointDistribution& first, const JointDistribution& second) {
  std::vector<Variable> vars = first.variables();
  for (const auto& v : second.variables()) {
    if (first.index_of(v.name)) {
      throw Error(ErrorCode::NameCollision, "variable '" + v.name + "' appears in both factors");
    }
    vars.push_back(v);
  }
  std::vector<double> out;
  out.reserve(first.size() * second.size());
  for (double a : first.probabilities()) {
    for (double b : second.probabilities()) out.push_back(a * b);
  }
  return JointDistribution::build(std::move(vars), std::move(out));
}

/// Empirical frequencies of outcome tuples.
inline JointDistribution from_samples(std::span<const std::vector<std::size_t>> records,
                                      std::vector<Variable> variables) {
  if (records.empty()) throw Error(ErrorCode::EmptySample, "no sample records");
  if (variables.empty()) throw Error(ErrorCode::ShapeMismatch, "no variables declared");
  std::size_t size = 1;
  for (const auto& v : variables) size *= v.cardinality;
  std::vector<std::size_t> counts(size, 0);
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.size() != variables.size()) {
      throw Error(ErrorCode::ShapeMismatch, "record " + std::to_string(r) + " has " +
                                                std::to_string(rec.size()) + " fields");
    }
    std::size_t flat = 0;
    for (std::size_t i = 0; i < rec.size(); ++i) {
      if (rec[i] >= variables[i].cardinality) {
        throw Error(ErrorCode::OutOfRangeOutcome,
                    "record " + std::to_string(r) + " outcome " + std::to_string(rec[i]) +
                        " outside cardinality of '" + variables[i].name + "'");
      }
      flat = flat * variables[i].cardinality + rec[i];
    }
    ++counts[flat];
  }
  std::vector<double> probs(size);
  const double total = static_cast<double>(records.size());
  for (std::size_t i = 0; i < size; ++i) probs[i] = static_cast<double>(counts[i]) / total;
  return JointDistribution::build(std::move(variables), std::move(probs));
}

}  // namespace infogeo
