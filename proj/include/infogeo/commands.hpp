#pragma once

// Command implementations behind the infogeo CLI. Each command returns its
// report text plus an exit code instead of touching stdout, so tests can
// drive them in-process.
//
// Exit codes: 0 success, 2 input validation, 3 precondition violation,
// 4 internal numeric fault.

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "infogeo/distribution.hpp"
#include "infogeo/entropy.hpp"
#include "infogeo/error.hpp"
#include "infogeo/geometry.hpp"
#include "infogeo/io.hpp"
#include "infogeo/quantum.hpp"

namespace infogeo::cli {

using nlohmann::json;

inline constexpr const char* kToolName = "infogeo";
inline constexpr const char* kToolVersion = "1.0.0";

/// Roundoff floor for quantities that are nonnegative in exact arithmetic.
inline constexpr double kReportingFloor = 1e-10;

enum ExitCode : int {
  kSuccess = 0,
  kValidationError = 2,
  kPreconditionError = 3,
  kNumericFault = 4,
};

struct Tolerances {
  double normalization = kNormalizationTolerance;
  double radicand_clamp = kRadicandClamp;
  double divergence = kDivergenceThreshold;
};

struct RunConfig {
  std::string command;
  std::string input;
  std::string output;
  std::string setting_config;  // optional JSON file, overrides the flags below
  std::uint64_t seed = 1;
  std::size_t settings = 1000;
  std::string scheme = "uniform_sphere";
  std::size_t n_theta = 0;
  std::size_t n_phi = 0;
  std::vector<std::string> subset;
  bool require_volume = false;
  std::string facets = "sum";
  std::size_t qubits = 3;
  double alpha_start = 0.0;
  double alpha_stop = std::numbers::pi / 4.0;
  std::size_t steps = 5;
  unsigned threads = 0;
  Tolerances tolerances;
};

struct CommandResult {
  int exit_code = kSuccess;
  std::string output;  // report on success
  std::string error;   // machine-readable error object on failure
};

/// Clamps -floor <= x < 0 to 0; larger violations pass through untouched.
inline double report_nonnegative(double x, double floor = kReportingFloor) {
  return (x < 0.0 && x >= -floor) ? 0.0 : x;
}

inline json reactivity_to_json(const Reactivity& r) {
  if (r.divergent) return "DIVERGENT";
  return r.value;
}

namespace detail {

inline json config_to_json(const RunConfig& c) {
  json j = {
      {"command", c.command},
      {"input", c.input},
      {"seed", c.seed},
      {"tolerances",
       {{"normalization", c.tolerances.normalization},
        {"radicand_clamp", c.tolerances.radicand_clamp},
        {"divergence", c.tolerances.divergence}}},
  };
  if (!c.subset.empty()) j["subset"] = c.subset;
  if (c.command == "geometry") j["volume"] = c.require_volume;
  if (c.command == "quantum" || c.command == "sweep") {
    j["settings"] = c.settings;
    j["scheme"] = c.scheme;
    j["facets"] = c.facets;
    if (c.scheme == "grid") {
      j["n_theta"] = c.n_theta;
      j["n_phi"] = c.n_phi;
    }
    if (!c.setting_config.empty()) j["setting_config"] = c.setting_config;
  }
  if (c.command == "sweep") {
    j["qubits"] = c.qubits;
    j["alpha_start"] = c.alpha_start;
    j["alpha_stop"] = c.alpha_stop;
    j["steps"] = c.steps;
  }
  return j;
}

inline json meta(const RunConfig& c) {
  return {{"tool", kToolName}, {"version", kToolVersion}, {"config", config_to_json(c)},
          {"seed", c.seed}};
}

inline VariableSubset select(const JointDistribution& dist, const std::vector<std::string>& names) {
  if (names.empty()) return VariableSubset::all(dist.variable_count());
  std::vector<std::size_t> idx;
  for (const auto& n : names) {
    const auto i = dist.index_of(n);
    if (!i) throw Error(ErrorCode::MalformedInput, "unknown variable '" + n + "'");
    idx.push_back(*i);
  }
  return VariableSubset(std::move(idx));
}

inline json names_of(const JointDistribution& dist, const VariableSubset& s) {
  json out = json::array();
  for (std::size_t i : s) out.push_back(dist.variables()[i].name);
  return out;
}

inline FacetConvention facets_of(const std::string& name) {
  if (name == "sum") return FacetConvention::Sum;
  if (name == "mean") return FacetConvention::Mean;
  throw Error(ErrorCode::MalformedInput, "facets must be 'sum' or 'mean'");
}

inline io::SettingConfig setting_config(const RunConfig& c) {
  if (!c.setting_config.empty()) {
    return io::setting_config_from_json(io::parse_json(io::read_file(c.setting_config)));
  }
  io::SettingConfig s;
  s.scheme = c.scheme;
  s.count = c.settings;
  s.seed = c.seed;
  s.n_theta = c.n_theta;
  s.n_phi = c.n_phi;
  return s;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace detail

/// Entropies of every nonempty subset of the selection, pairwise mutual
/// information, leave-one-out conditional entropies, and (for three or more
/// variables) pairwise conditional mutual information given the rest plus
/// the co-information of all selected variables.
inline std::string cmd_measures(const RunConfig& config) {
  const auto dist = io::load_distribution(config.input, config.tolerances.normalization);
  const auto sel = detail::select(dist, config.subset);
  const std::size_t n = sel.size();
  if (n > 24) throw Error(ErrorCode::SizeMismatch, "at most 24 variables per selection");

  json entropies = json::array();
  std::vector<std::vector<std::size_t>> masks_by_size(n + 1);
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    masks_by_size[static_cast<std::size_t>(std::popcount(mask))].push_back(mask);
  }
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t mask : masks_by_size[k]) {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (std::size_t{1} << i)) idx.push_back(sel[i]);
      }
      const VariableSubset s(std::move(idx));
      entropies.push_back({{"subset", detail::names_of(dist, s)},
                           {"value", report_nonnegative(joint_entropy(dist, s))}});
    }
  }

  json mutual = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const VariableSubset x{sel[i]}, y{sel[j]};
      mutual.push_back({{"pair", json::array({dist.variables()[sel[i]].name,
                                              dist.variables()[sel[j]].name})},
                        {"value", report_nonnegative(mutual_information(dist, x, y))}});
    }
  }

  json conditional = json::array();
  if (n >= 2) {
    for (std::size_t i : sel) {
      const VariableSubset target{i};
      const auto rest = sel.without(i);
      conditional.push_back({{"target", detail::names_of(dist, target)},
                             {"given", detail::names_of(dist, rest)},
                             {"value", report_nonnegative(conditional_entropy(dist, target, rest))}});
    }
  }

  json report = {
      {"meta", detail::meta(config)},
      {"variables", detail::names_of(dist, sel)},
      {"distribution", io::distribution_to_json(dist)},
      {"entropies", std::move(entropies)},
      {"mutual_information", std::move(mutual)},
      {"conditional_entropies", std::move(conditional)},
  };

  if (n >= 3) {
    json cmi = json::array();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const VariableSubset x{sel[i]}, y{sel[j]};
        const auto given = sel.without(sel[i]).without(sel[j]);
        cmi.push_back(
            {{"x", dist.variables()[sel[i]].name},
             {"y", dist.variables()[sel[j]].name},
             {"given", detail::names_of(dist, given)},
             {"value", report_nonnegative(conditional_mutual_information(dist, x, y, given))}});
      }
    }
    std::vector<VariableSubset> parts;
    for (std::size_t i : sel) parts.push_back(VariableSubset{i});
    report["conditional_mutual_information"] = std::move(cmi);
    report["co_information"] = multiway_mutual_information(dist, parts);
  }
  return detail::dump(report);
}

/// Geometry of the selection: distance matrix, every triple area (plain,
/// Euclidean and blended), every quadruple volume, and the n-volume, surface
/// and single-distribution reactivity of the whole selection.
inline std::string cmd_geometry(const RunConfig& config) {
  const auto dist = io::load_distribution(config.input, config.tolerances.normalization);
  const auto sel = detail::select(dist, config.subset);
  const std::size_t n = sel.size();
  if (n < 2) throw Error(ErrorCode::SubsetTooSmall, "geometry needs at least two variables");
  if (config.require_volume && n < 4) {
    throw Error(ErrorCode::SubsetTooSmall, "volumes need at least four variables");
  }
  const auto facets = detail::facets_of(config.facets);

  json distances = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < n; ++j) {
      row.push_back(i == j ? 0.0 : report_nonnegative(info_distance(dist, sel[i], sel[j])));
    }
    distances.push_back(std::move(row));
  }

  json areas = json::array();
  for (const auto& t : triple_areas(dist, sel, config.tolerances.radicand_clamp)) {
    areas.push_back({{"variables", detail::names_of(dist, VariableSubset({t.indices[0],
                                                                          t.indices[1],
                                                                          t.indices[2]}))},
                     {"info_area", report_nonnegative(t.info_area)},
                     {"euclidean_area", t.euclidean_area},
                     {"blended_area", report_nonnegative(t.blended_area)}});
  }

  json volumes = json::array();
  for (const auto& q : quadruple_volumes(dist, sel)) {
    volumes.push_back(
        {{"variables", detail::names_of(dist, VariableSubset({q.indices[0], q.indices[1],
                                                              q.indices[2], q.indices[3]}))},
         {"info_volume", report_nonnegative(q.info_volume)}});
  }

  const double volume = n_volume(dist, sel);
  json surface = nullptr;
  json react = nullptr;
  if (n >= 3) {
    const double s = surface_area(dist, sel, facets);
    surface = report_nonnegative(s);
    react = reactivity_to_json(reactivity(s, volume, config.tolerances.divergence));
  }

  json m = detail::meta(config);
  m["variables"] = detail::names_of(dist, sel);
  m["setting_count"] = nullptr;
  m["distribution"] = io::distribution_to_json(dist);

  json report = {
      {"distances", std::move(distances)},
      {"areas", std::move(areas)},
      {"volumes", std::move(volumes)},
      {"n_volume", report_nonnegative(volume)},
      {"surface_area", std::move(surface)},
      {"reactivity", std::move(react)},
      {"meta", std::move(m)},
  };
  return detail::dump(report);
}

namespace detail {

inline json stats_to_json(const SampleStats& s) {
  return {{"min", s.min}, {"max", s.max}, {"mean", s.mean}};
}

}  // namespace detail

/// Averages surface and volume of the full qubit set over measurement settings.
inline std::string cmd_quantum(const RunConfig& config) {
  const auto spec = io::parse_json(io::read_file(config.input));
  const auto state = io::state_from_json(spec);
  const auto sc = detail::setting_config(config);
  const auto settings = sample_settings(state.qubit_count(), sc.count, sc.seed, sc.to_scheme());
  AveragingOptions opts;
  opts.facets = detail::facets_of(config.facets);
  opts.divergence_threshold = config.tolerances.divergence;
  opts.threads = config.threads;
  const auto summary = evaluate_reactivity(state, settings, opts);

  json m = detail::meta(config);
  m["seed"] = sc.seed;
  m["setting_config"] = io::setting_config_to_json(sc);
  m["setting_count"] = summary.setting_count;
  json report = {
      {"meta", std::move(m)},
      {"state", spec},
      {"qubits", state.qubit_count()},
      {"mean_surface_area", summary.surface.mean},
      {"mean_n_volume", summary.volume.mean},
      {"reactivity", reactivity_to_json(summary.reactivity)},
      {"surface_stats", detail::stats_to_json(summary.surface)},
      {"volume_stats", detail::stats_to_json(summary.volume)},
  };
  return detail::dump(report);
}

namespace detail {

inline std::string format_double(double x) {
  std::ostringstream ss;
  ss << std::setprecision(17) << x;
  return ss.str();
}

}  // namespace detail

/// CSV over the family cos(alpha)|0..0> + sin(alpha)|1..1>, one row per alpha.
/// Every row reuses the same measurement settings.
inline std::string cmd_sweep(const RunConfig& config) {
  if (!std::isfinite(config.alpha_start) || !std::isfinite(config.alpha_stop) ||
      !(config.alpha_start < config.alpha_stop) || config.steps < 2) {
    throw Error(ErrorCode::MalformedInput,
                "sweep needs finite alpha-start < alpha-stop and steps >= 2");
  }
  const auto sc = detail::setting_config(config);
  const auto settings = sample_settings(config.qubits, sc.count, sc.seed, sc.to_scheme());
  AveragingOptions opts;
  opts.facets = detail::facets_of(config.facets);
  opts.divergence_threshold = config.tolerances.divergence;
  opts.threads = config.threads;

  std::ostringstream out;
  out << "alpha,surface,volume,reactivity\n";
  const double span = config.alpha_stop - config.alpha_start;
  for (std::size_t k = 0; k < config.steps; ++k) {
    const double alpha =
        k + 1 == config.steps
            ? config.alpha_stop
            : config.alpha_start + span * static_cast<double>(k) / static_cast<double>(config.steps - 1);
    const auto summary = evaluate_reactivity(alpha_family(config.qubits, alpha), settings, opts);
    out << detail::format_double(alpha) << ',' << detail::format_double(summary.surface.mean)
        << ',' << detail::format_double(summary.volume.mean) << ','
        << (summary.reactivity.divergent ? std::string("DIVERGENT")
                                         : detail::format_double(summary.reactivity.value))
        << '\n';
  }
  return out.str();
}

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Validation: return kValidationError;
    case ErrorKind::Precondition: return kPreconditionError;
    case ErrorKind::NumericFault: return kNumericFault;
  }
  return kNumericFault;
}

inline std::string error_object(std::string_view code, std::string_view message) {
  return json{{"error", {{"code", code}, {"message", message}}}}.dump() + "\n";
}

/// Runs one command, mapping failures to exit codes and an error object.
inline CommandResult run(const RunConfig& config) {
  CommandResult result;
  try {
    if (config.command == "measures") {
      result.output = cmd_measures(config);
    } else if (config.command == "geometry") {
      result.output = cmd_geometry(config);
    } else if (config.command == "quantum") {
      result.output = cmd_quantum(config);
    } else if (config.command == "sweep") {
      result.output = cmd_sweep(config);
    } else {
      result.exit_code = kValidationError;
      result.error = error_object("UNKNOWN_COMMAND", "unknown command '" + config.command + "'");
    }
  } catch (const Error& e) {
    result.exit_code = exit_code_for(e.kind());
    result.error = error_object(to_string(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    result.exit_code = kValidationError;
    result.error = error_object("MALFORMED_INPUT", e.what());
  } catch (const std::exception& e) {
    result.exit_code = kNumericFault;
    result.error = error_object("INTERNAL", e.what());
  }
  return result;
}

}  // namespace infogeo::cli
