#pragma once

// Run configuration shared by every CLI command. A config is one JSON object;
// command-line flags are applied on top of it through the same key setter.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cqm/energy.hpp"
#include "cqm/numerics.hpp"
#include "cqm/potentials.hpp"

namespace cqm::config {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class OutputFormat { Csv, Json };

struct ShapeSpec {
  std::string kind = "single";     ///< single | two-quark | three-quark | custom
  std::vector<double> coeffs;      ///< custom: p(r) = sum coeffs[j] r^j
  int m = 0;                       ///< custom: denominator exponent
  double c = 1.0;                  ///< three-quark: position of the minimum
};

struct RunConfig {
  potentials::ModelParams model;
  double q = 1.0 / 3.0;
  double gamma = -2.0;
  ShapeSpec shape;
  potentials::ConfiningCoefficients coeffs;
  energy::UnstableParams unstable{10.0, 1.0, 0.0, 0.0};
  bool unstable_given = false;  ///< any of D, U, N, T was set
  potentials::GridSpec grid;
  numerics::Tolerance tolerance;
  std::optional<double> n;          ///< shm / energy scale: fixed n instead of solving for it
  OutputFormat format = OutputFormat::Csv;
  std::string out;                  ///< empty: standard output
  int jobs = 1;
  std::string golden;               ///< verify: golden values file, empty for built-in

  /// Sets one key; dotted keys address nested objects ("grid.lo").
  /// Throws ConfigError for unknown keys and ill-typed values.
  void set(std::string_view key, const nlohmann::json& value);

  /// Applies every key of a JSON object, recursing into "grid" and "tolerance".
  void merge(const nlohmann::json& doc);

  /// Range checks on everything; throws ConfigError.
  void validate() const;

  potentials::WeakPotentialShape make_shape() const;
};

/// Every key accepted by `set`, in documentation order.
const std::vector<std::string>& known_keys();

RunConfig load_config_file(const std::string& path);

/// Parses "0.25", "1e-3" or a fraction such as "1/3" or "-2/3".
double parse_number(std::string_view text);

}  // namespace cqm::config
