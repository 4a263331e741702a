#pragma once

// Pure n-qubit states, local projective measurements, and Monte Carlo
// averages of entropic geometry over measurement settings.
//
// Qubit 0 is the most significant bit of the amplitude index, so the
// outcome tensor of measurement_distribution has Q0 slowest and Q(n-1)
// fastest, matching JointDistribution's row-major layout.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "infogeo/distribution.hpp"
#include "infogeo/error.hpp"
#include "infogeo/geometry.hpp"
#include "infogeo/summation.hpp"

namespace infogeo {

using Amplitude = std::complex<double>;

inline constexpr std::size_t kMaxQubits = 20;
inline constexpr double kStateNormTolerance = 1e-10;
inline constexpr double kUnitaryTolerance = 1e-10;

class PureState {
 public:
  static PureState from_amplitudes(std::vector<Amplitude> amplitudes,
                                   double tolerance = kStateNormTolerance) {
    const std::size_t size = amplitudes.size();
    if (size < 2 || (size & (size - 1)) != 0) {
      throw Error(ErrorCode::SizeMismatch,
                  "amplitude count " + std::to_string(size) + " is not a power of two >= 2");
    }
    const auto qubits = static_cast<std::size_t>(std::countr_zero(size));
    if (qubits > kMaxQubits) {
      throw Error(ErrorCode::SizeMismatch, "at most " + std::to_string(kMaxQubits) + " qubits");
    }
    CompensatedSum norm;
    for (const auto& a : amplitudes) {
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
        throw Error(ErrorCode::MalformedInput, "non-finite amplitude");
      }
      norm += std::norm(a);
    }
    if (!(std::abs(norm.value() - 1.0) <= tolerance)) {
      throw Error(ErrorCode::NotNormalized,
                  "squared amplitudes sum to " + std::to_string(norm.value()));
    }
    return PureState(qubits, std::move(amplitudes));
  }

  std::size_t qubit_count() const noexcept { return qubits_; }
  std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }

 private:
  PureState(std::size_t qubits, std::vector<Amplitude> amplitudes)
      : qubits_(qubits), amplitudes_(std::move(amplitudes)) {}

  std::size_t qubits_;
  std::vector<Amplitude> amplitudes_;
};

/// Bloch angles of a qubit's measurement axis.
struct BlochAngles {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2pi)

  friend bool operator==(const BlochAngles&, const BlochAngles&) = default;
};

class MeasurementSetting {
 public:
  MeasurementSetting() = default;
  explicit MeasurementSetting(std::vector<BlochAngles> angles) : angles_(std::move(angles)) {
    for (const auto& a : angles_) {
      if (!(a.theta >= 0.0 && a.theta <= std::numbers::pi) ||
          !(a.phi >= 0.0 && a.phi < 2.0 * std::numbers::pi)) {
        throw Error(ErrorCode::MalformedInput, "measurement angles out of range");
      }
    }
  }

  /// Same axis on every qubit.
  static MeasurementSetting uniform(std::size_t qubits, BlochAngles angles) {
    return MeasurementSetting(std::vector<BlochAngles>(qubits, angles));
  }

  std::size_t qubit_count() const noexcept { return angles_.size(); }
  std::span<const BlochAngles> angles() const noexcept { return angles_; }
  const BlochAngles& operator[](std::size_t q) const { return angles_[q]; }

  friend bool operator==(const MeasurementSetting&, const MeasurementSetting&) = default;

 private:
  std::vector<BlochAngles> angles_;
};

/// Row-major 2x2 complex matrix.
using Matrix2 = std::array<std::array<Amplitude, 2>, 2>;

inline Matrix2 adjoint(const Matrix2& m) {
  return {{{std::conj(m[0][0]), std::conj(m[1][0])}, {std::conj(m[0][1]), std::conj(m[1][1])}}};
}

inline Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
  Matrix2 r{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  }
  return r;
}

namespace gates {

inline Matrix2 identity() { return {{{1.0, 0.0}, {0.0, 1.0}}}; }
inline Matrix2 pauli_x() { return {{{0.0, 1.0}, {1.0, 0.0}}}; }
inline Matrix2 hadamard() {
  const double s = 1.0 / std::numbers::sqrt2;
  return {{{s, s}, {s, -s}}};
}
/// exp(-i theta Y / 2)
inline Matrix2 rotation_y(double theta) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  return {{{c, -s}, {s, c}}};
}

}  // namespace gates

class LocalUnitary {
 public:
  explicit LocalUnitary(std::vector<Matrix2> factors, double tolerance = kUnitaryTolerance)
      : factors_(std::move(factors)) {
    for (const auto& u : factors_) {
      const Matrix2 p = adjoint(u) * u;
      const Matrix2 id = gates::identity();
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          if (std::abs(p[i][j] - id[i][j]) > tolerance) {
            throw Error(ErrorCode::NotUnitary, "local factor is not unitary");
          }
        }
      }
    }
  }

  std::size_t qubit_count() const noexcept { return factors_.size(); }
  std::span<const Matrix2> factors() const noexcept { return factors_; }

 private:
  std::vector<Matrix2> factors_;
};

namespace detail {

inline void require_qubits(std::size_t n, std::size_t minimum) {
  if (n < minimum) {
    throw Error(ErrorCode::NTooSmall, "need at least " + std::to_string(minimum) + " qubits");
  }
  if (n > kMaxQubits) {
    throw Error(ErrorCode::SizeMismatch, "at most " + std::to_string(kMaxQubits) + " qubits");
  }
}

// In-place action of `m` on qubit `q` of an n-qubit amplitude vector.
inline void apply_single(std::vector<Amplitude>& amps, std::size_t qubits, std::size_t q,
                         const Matrix2& m) {
  const std::size_t stride = std::size_t{1} << (qubits - 1 - q);
  for (std::size_t base = 0; base < amps.size(); base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const Amplitude a0 = amps[i];
      const Amplitude a1 = amps[i + stride];
      amps[i] = m[0][0] * a0 + m[0][1] * a1;
      amps[i + stride] = m[1][0] * a0 + m[1][1] * a1;
    }
  }
}

}  // namespace detail

/// (|0...0> + |1...1>)/sqrt(2)
inline PureState ghz(std::size_t n) {
  detail::require_qubits(n, 2);
  std::vector<Amplitude> amps(std::size_t{1} << n, 0.0);
  amps.front() = amps.back() = 1.0 / std::numbers::sqrt2;
  return PureState::from_amplitudes(std::move(amps));
}

/// Equal superposition of the n single-excitation basis states.
inline PureState w_state(std::size_t n) {
  detail::require_qubits(n, 2);
  std::vector<Amplitude> amps(std::size_t{1} << n, 0.0);
  const double a = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t q = 0; q < n; ++q) amps[std::size_t{1} << q] = a;
  return PureState::from_amplitudes(std::move(amps));
}

inline PureState product_zero(std::size_t n) {
  detail::require_qubits(n, 1);
  std::vector<Amplitude> amps(std::size_t{1} << n, 0.0);
  amps.front() = 1.0;
  return PureState::from_amplitudes(std::move(amps));
}

/// cos(alpha)|0...0> + sin(alpha)|1...1>; alpha = 0 is product_zero and
/// alpha = pi/4 is GHZ.
inline PureState alpha_family(std::size_t n, double alpha) {
  detail::require_qubits(n, 2);
  std::vector<Amplitude> amps(std::size_t{1} << n, 0.0);
  amps.front() = std::cos(alpha);
  amps.back() = std::sin(alpha);
  return PureState::from_amplitudes(std::move(amps));
}

/// Normalized isotropic complex Gaussian vector; reproducible per seed.
inline PureState random_state(std::size_t n, std::uint64_t seed) {
  detail::require_qubits(n, 1);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Amplitude> amps(std::size_t{1} << n);
  CompensatedSum norm;
  for (auto& a : amps) {
    const double re = normal(rng);
    const double im = normal(rng);
    a = {re, im};
    norm += re * re + im * im;
  }
  const double scale = 1.0 / std::sqrt(norm.value());
  for (auto& a : amps) a *= scale;
  return PureState::from_amplitudes(std::move(amps));
}

/// Haar-random SU(2) factor per qubit, drawn as a uniform unit quaternion.
inline LocalUnitary random_local_unitary(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Matrix2> factors;
  for (std::size_t q = 0; q < n; ++q) {
    std::array<double, 4> v{normal(rng), normal(rng), normal(rng), normal(rng)};
    const double len = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
    for (double& x : v) x /= len;
    const Amplitude a{v[0], v[1]}, b{v[2], v[3]};
    factors.push_back({{{a, b}, {-std::conj(b), std::conj(a)}}});
  }
  return LocalUnitary(std::move(factors));
}

inline PureState apply_local_unitaries(const PureState& state, const LocalUnitary& u) {
  if (u.qubit_count() != state.qubit_count()) {
    throw Error(ErrorCode::SizeMismatch, "local unitary count does not match qubit count");
  }
  std::vector<Amplitude> amps(state.amplitudes().begin(), state.amplitudes().end());
  for (std::size_t q = 0; q < state.qubit_count(); ++q) {
    detail::apply_single(amps, state.qubit_count(), q, u.factors()[q]);
  }
  return PureState::from_amplitudes(std::move(amps));
}

/// The two basis vectors of a qubit measured along the given axis:
///   b0 = cos(t/2)|0> + e^{i phi} sin(t/2)|1>
///   b1 = sin(t/2)|0> - e^{i phi} cos(t/2)|1>
inline std::array<std::array<Amplitude, 2>, 2> measurement_basis(const BlochAngles& axis) {
  const double c = std::cos(axis.theta / 2.0), s = std::sin(axis.theta / 2.0);
  const Amplitude phase = std::polar(1.0, axis.phi);
  return {{{Amplitude(c), phase * s}, {Amplitude(s), -phase * c}}};
}

/// Born-rule outcome distribution over binary variables Q0..Q(n-1).
inline JointDistribution measurement_distribution(const PureState& state,
                                                  const MeasurementSetting& setting) {
  const std::size_t n = state.qubit_count();
  if (setting.qubit_count() != n) {
    throw Error(ErrorCode::SizeMismatch, "setting covers " +
                                             std::to_string(setting.qubit_count()) +
                                             " qubits, state has " + std::to_string(n));
  }
  std::vector<Amplitude> amps(state.amplitudes().begin(), state.amplitudes().end());
  for (std::size_t q = 0; q < n; ++q) {
    const auto basis = measurement_basis(setting[q]);
    // Row k projects onto <b_k|.
    const Matrix2 bra{{{std::conj(basis[0][0]), std::conj(basis[0][1])},
                       {std::conj(basis[1][0]), std::conj(basis[1][1])}}};
    detail::apply_single(amps, n, q, bra);
  }
  std::vector<double> probs(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) probs[i] = std::norm(amps[i]);
  std::vector<Variable> vars;
  for (std::size_t q = 0; q < n; ++q) vars.push_back({"Q" + std::to_string(q), 2});
  return JointDistribution::build(std::move(vars), std::move(probs));
}

struct SettingScheme {
  enum class Kind { UniformSphere, Grid };
  Kind kind = Kind::UniformSphere;
  std::size_t n_theta = 0;
  std::size_t n_phi = 0;

  static SettingScheme uniform_sphere() { return {}; }
  static SettingScheme grid(std::size_t n_theta, std::size_t n_phi) {
    return {Kind::Grid, n_theta, n_phi};
  }
};

/// Measurement settings for an n-qubit register.
///
/// uniform_sphere draws cos(theta) uniformly on [-1, 1] and phi uniformly on
/// [0, 2pi) per qubit from mt19937_64(seed).
///
/// grid uses the single-qubit axes theta_k = k pi / n_theta, phi_m = 2 pi m / n_phi
/// (theta slowest) and enumerates their n-fold Cartesian product with the
/// last qubit fastest, cycling when `count` exceeds the product size.
inline std::vector<MeasurementSetting> sample_settings(std::size_t qubits, std::size_t count,
                                                       std::uint64_t seed,
                                                       const SettingScheme& scheme) {
  if (count == 0) throw Error(ErrorCode::BadScheme, "setting count must be positive");
  detail::require_qubits(qubits, 1);
  std::vector<MeasurementSetting> out;
  out.reserve(count);
  constexpr double two_pi = 2.0 * std::numbers::pi;

  if (scheme.kind == SettingScheme::Kind::UniformSphere) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> cos_theta(-1.0, 1.0);
    std::uniform_real_distribution<double> phi(0.0, two_pi);
    for (std::size_t s = 0; s < count; ++s) {
      std::vector<BlochAngles> angles(qubits);
      for (auto& a : angles) {
        a.theta = std::acos(std::clamp(cos_theta(rng), -1.0, 1.0));
        a.phi = phi(rng);
        if (a.phi >= two_pi) a.phi = 0.0;
      }
      out.emplace_back(std::move(angles));
    }
    return out;
  }

  if (scheme.n_theta == 0 || scheme.n_phi == 0) {
    throw Error(ErrorCode::BadScheme, "grid needs n_theta >= 1 and n_phi >= 1");
  }
  std::vector<BlochAngles> axes;
  for (std::size_t k = 0; k < scheme.n_theta; ++k) {
    for (std::size_t m = 0; m < scheme.n_phi; ++m) {
      axes.push_back({static_cast<double>(k) * std::numbers::pi / static_cast<double>(scheme.n_theta),
                      static_cast<double>(m) * two_pi / static_cast<double>(scheme.n_phi)});
    }
  }
  // Product size, saturated once it exceeds count (no cycling needed then).
  std::size_t period = 1;
  for (std::size_t q = 0; q < qubits && period <= count; ++q) period *= axes.size();
  for (std::size_t s = 0; s < count; ++s) {
    std::size_t code = s % period;
    std::vector<BlochAngles> angles(qubits);
    for (std::size_t q = qubits; q-- > 0;) {
      angles[q] = axes[code % axes.size()];
      code /= axes.size();
    }
    out.emplace_back(std::move(angles));
  }
  return out;
}

namespace detail {

// Evaluates fn(i) for every index into a pre-sized vector. Each slot is
// written by exactly one worker, so results do not depend on scheduling.
template <typename Fn>
std::vector<double> parallel_evaluate(std::size_t count, unsigned threads, Fn&& fn) {
  std::vector<double> out(count);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < count; i += threads) out[i] = fn(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace detail

struct AveragingOptions {
  FacetConvention facets = FacetConvention::Sum;
  double divergence_threshold = kDivergenceThreshold;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Mean over settings of n_volume(measurement_distribution(state, s), subset),
/// reduced in setting order with compensated summation.
inline double averaged_n_volume(const PureState& state,
                                std::span<const MeasurementSetting> settings,
                                const VariableSubset& subset, unsigned threads = 0) {
  if (settings.empty()) throw Error(ErrorCode::EmptySettings, "no measurement settings");
  const auto values = detail::parallel_evaluate(settings.size(), threads, [&](std::size_t i) {
    return n_volume(measurement_distribution(state, settings[i]), subset);
  });
  return compensated_sum(values) / static_cast<double>(values.size());
}

struct SampleStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

inline SampleStats summarize(std::span<const double> values) {
  SampleStats s;
  if (values.empty()) return s;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  s.mean = compensated_sum(values) / static_cast<double>(values.size());
  return s;
}

struct ReactivitySummary {
  SampleStats surface;
  SampleStats volume;
  Reactivity reactivity;
  std::size_t setting_count = 0;
};

/// Per-setting surface and volume of the full qubit set, their statistics,
/// and the reactivity of the two means.
inline ReactivitySummary evaluate_reactivity(const PureState& state,
                                             std::span<const MeasurementSetting> settings,
                                             const AveragingOptions& options = {}) {
  if (state.qubit_count() < 3) {
    throw Error(ErrorCode::SubsetTooSmall, "reactivity needs at least three qubits");
  }
  if (settings.empty()) throw Error(ErrorCode::EmptySettings, "no measurement settings");
  const auto full = VariableSubset::all(state.qubit_count());
  std::vector<double> surfaces(settings.size());
  const auto volumes =
      detail::parallel_evaluate(settings.size(), options.threads, [&](std::size_t i) {
        const auto dist = measurement_distribution(state, settings[i]);
        surfaces[i] = surface_area(dist, full, options.facets);
        return n_volume(dist, full);
      });
  ReactivitySummary out;
  out.surface = summarize(surfaces);
  out.volume = summarize(volumes);
  out.reactivity = reactivity(out.surface.mean, out.volume.mean, options.divergence_threshold);
  out.setting_count = settings.size();
  return out;
}

inline Reactivity state_reactivity(const PureState& state,
                                   std::span<const MeasurementSetting> settings,
                                   const AveragingOptions& options = {}) {
  return evaluate_reactivity(state, settings, options).reactivity;
}

}  // namespace infogeo
