#pragma once

// File formats: distribution JSON, sample CSV, state-spec JSON and
// setting-config JSON.

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "infogeo/distribution.hpp"
#include "infogeo/error.hpp"
#include "infogeo/quantum.hpp"

namespace infogeo::io {

using nlohmann::json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MalformedInput, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::MalformedInput, e.what());
  }
}

namespace detail {

template <typename T>
T get_field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(ErrorCode::MalformedInput, std::string("missing field '") + key + "'");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::MalformedInput, std::string("field '") + key + "' has the wrong type");
  }
}

inline std::size_t get_count(const json& value, const char* what) {
  if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
    throw Error(ErrorCode::MalformedInput, std::string(what) + " must be a nonnegative integer");
  }
  return value.get<std::size_t>();
}

}  // namespace detail

/// {"variables": [{"name", "cardinality"}...], "probabilities": [...]}
inline JointDistribution distribution_from_json(const json& doc,
                                                double tolerance = kNormalizationTolerance) {
  if (!doc.is_object()) throw Error(ErrorCode::MalformedInput, "distribution must be an object");
  const auto vars_json = detail::get_field<json>(doc, "variables");
  const auto probs_json = detail::get_field<json>(doc, "probabilities");
  if (!vars_json.is_array() || !probs_json.is_array()) {
    throw Error(ErrorCode::MalformedInput, "variables and probabilities must be arrays");
  }
  std::vector<Variable> vars;
  for (const auto& v : vars_json) {
    const auto name = detail::get_field<std::string>(v, "name");
    const auto card = detail::get_count(detail::get_field<json>(v, "cardinality"), "cardinality");
    vars.push_back({name, card});
  }
  std::vector<double> probs;
  for (const auto& p : probs_json) {
    if (!p.is_number()) throw Error(ErrorCode::MalformedInput, "probability must be a number");
    probs.push_back(p.get<double>());
  }
  return JointDistribution::build(std::move(vars), std::move(probs), tolerance);
}

inline json distribution_to_json(const JointDistribution& dist) {
  json vars = json::array();
  for (const auto& v : dist.variables()) {
    vars.push_back({{"name", v.name}, {"cardinality", v.cardinality}});
  }
  json probs = json::array();
  for (double p : dist.probabilities()) probs.push_back(p);
  return {{"variables", std::move(vars)}, {"probabilities", std::move(probs)}};
}

/// Header row of variable names, then one outcome tuple per row. Each
/// variable's cardinality is one more than its largest observed outcome.
inline JointDistribution distribution_from_csv(std::string_view text) {
  auto split = [](std::string_view line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      auto cell = line.substr(start, comma == std::string_view::npos ? line.npos : comma - start);
      while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
      while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t' || cell.back() == '\r')) {
        cell.remove_suffix(1);
      }
      cells.emplace_back(cell);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return cells;
  };

  std::vector<std::string> header;
  std::vector<std::vector<std::size_t>> records;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    auto cells = split(line);
    if (header.empty()) {
      header = std::move(cells);
      continue;
    }
    if (cells.size() != header.size()) {
      throw Error(ErrorCode::ShapeMismatch, "line " + std::to_string(line_no) + " has " +
                                                std::to_string(cells.size()) + " fields");
    }
    std::vector<std::size_t> rec;
    for (const auto& c : cells) {
      std::size_t used = 0;
      long long v = -1;
      try {
        v = std::stoll(c, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != c.size() || c.empty()) {
        throw Error(ErrorCode::MalformedInput,
                    "line " + std::to_string(line_no) + ": '" + c + "' is not an integer");
      }
      if (v < 0) {
        throw Error(ErrorCode::OutOfRangeOutcome,
                    "line " + std::to_string(line_no) + ": negative outcome");
      }
      rec.push_back(static_cast<std::size_t>(v));
    }
    records.push_back(std::move(rec));
  }
  if (header.empty()) throw Error(ErrorCode::EmptySample, "CSV has no header");
  std::vector<Variable> vars;
  for (std::size_t i = 0; i < header.size(); ++i) {
    std::size_t card = 1;
    for (const auto& r : records) card = std::max(card, r[i] + 1);
    vars.push_back({header[i], card});
  }
  return from_samples(records, std::move(vars));
}

/// Dispatches on extension: ".csv" is a sample table, anything else JSON.
inline JointDistribution load_distribution(const std::string& path,
                                           double tolerance = kNormalizationTolerance) {
  const auto text = read_file(path);
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) {
    return distribution_from_csv(text);
  }
  return distribution_from_json(parse_json(text), tolerance);
}

/// {"kind": "ghz"|"w"|"product_zero"|"random"|"amplitudes", "n": int,
///  "seed": int?, "amplitudes": [[re, im], ...]?}
inline PureState state_from_json(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::MalformedInput, "state spec must be an object");
  const auto kind = detail::get_field<std::string>(doc, "kind");
  if (kind == "amplitudes") {
    const auto arr = detail::get_field<json>(doc, "amplitudes");
    if (!arr.is_array()) throw Error(ErrorCode::MalformedInput, "amplitudes must be an array");
    std::vector<Amplitude> amps;
    for (const auto& a : arr) {
      if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
        throw Error(ErrorCode::MalformedInput, "amplitude must be [re, im]");
      }
      amps.emplace_back(a[0].get<double>(), a[1].get<double>());
    }
    auto state = PureState::from_amplitudes(std::move(amps));
    if (doc.contains("n") &&
        detail::get_count(doc["n"], "n") != state.qubit_count()) {
      throw Error(ErrorCode::SizeMismatch, "n does not match amplitude count");
    }
    return state;
  }
  const auto n = detail::get_count(detail::get_field<json>(doc, "n"), "n");
  if (kind == "ghz") return ghz(n);
  if (kind == "w") return w_state(n);
  if (kind == "product_zero") return product_zero(n);
  if (kind == "random") {
    const auto seed = detail::get_field<json>(doc, "seed");
    if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
      throw Error(ErrorCode::MalformedInput, "seed must be a nonnegative integer");
    }
    return random_state(n, seed.get<std::uint64_t>());
  }
  throw Error(ErrorCode::MalformedInput, "unknown state kind '" + kind + "'");
}

struct SettingConfig {
  std::string scheme = "uniform_sphere";
  std::size_t count = 1000;
  std::uint64_t seed = 1;
  std::size_t n_theta = 0;
  std::size_t n_phi = 0;

  SettingScheme to_scheme() const {
    if (scheme == "uniform_sphere") return SettingScheme::uniform_sphere();
    if (scheme == "grid") return SettingScheme::grid(n_theta, n_phi);
    throw Error(ErrorCode::BadScheme, "unknown scheme '" + scheme + "'");
  }
};

inline SettingConfig setting_config_from_json(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::MalformedInput, "setting config must be an object");
  SettingConfig c;
  c.scheme = detail::get_field<std::string>(doc, "scheme");
  c.count = detail::get_count(detail::get_field<json>(doc, "count"), "count");
  c.seed = detail::get_count(detail::get_field<json>(doc, "seed"), "seed");
  if (doc.contains("n_theta")) c.n_theta = detail::get_count(doc["n_theta"], "n_theta");
  if (doc.contains("n_phi")) c.n_phi = detail::get_count(doc["n_phi"], "n_phi");
  c.to_scheme();
  return c;
}

inline json setting_config_to_json(const SettingConfig& c) {
  json j = {{"scheme", c.scheme}, {"count", c.count}, {"seed", c.seed}};
  if (c.scheme == "grid") {
    j["n_theta"] = c.n_theta;
    j["n_phi"] = c.n_phi;
  }
  return j;
}

}  // namespace infogeo::io
