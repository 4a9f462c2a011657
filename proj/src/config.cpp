#include "cqm/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace cqm::config {

using nlohmann::json;

namespace {

double to_double(std::string_view key, const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      return parse_number(v.get<std::string>());
    } catch (const ConfigError& e) {
      throw ConfigError(std::string(key) + ": " + e.what());
    }
  }
  throw ConfigError(std::string(key) + ": expected a number");
}

int to_int(std::string_view key, const json& v) {
  const double d = to_double(key, v);
  if (d != std::floor(d) || std::abs(d) > 2e9) throw ConfigError(std::string(key) + ": expected an integer");
  return static_cast<int>(d);
}

std::string to_string_value(std::string_view key, const json& v) {
  if (!v.is_string()) throw ConfigError(std::string(key) + ": expected a string");
  return v.get<std::string>();
}

std::vector<double> to_list(std::string_view key, const json& v) {
  std::vector<double> out;
  if (v.is_array()) {
    for (const auto& e : v) out.push_back(to_double(key, e));
    return out;
  }
  if (v.is_string()) {
    // Comma separated, as given on the command line.
    std::stringstream ss(v.get<std::string>());
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(key, json(item)));
    return out;
  }
  throw ConfigError(std::string(key) + ": expected a list of numbers");
}

}  // namespace

double parse_number(std::string_view text) {
  auto parse_plain = [&](std::string_view t) {
    while (!t.empty() && t.front() == ' ') t.remove_prefix(1);
    while (!t.empty() && t.back() == ' ') t.remove_suffix(1);
    if (!t.empty() && t.front() == '+') t.remove_prefix(1);
    double v = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
      throw ConfigError("not a number: '" + std::string(text) + "'");
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_plain(text);
  const double den = parse_plain(text.substr(slash + 1));
  if (den == 0.0) throw ConfigError("zero denominator: '" + std::string(text) + "'");
  return parse_plain(text.substr(0, slash)) / den;
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys{
      "s",        "alpha",        "lambda",    "k",          "t",          "b",       "q",
      "gamma",    "gamma_sq",     "shape",     "coeffs",     "m",          "shape_c", "K",
      "P",        "C",            "D",         "U",          "N",          "T",       "grid.spacing",
      "grid.lo",  "grid.hi",      "grid.count", "tolerance.rel", "tolerance.abs", "tolerance.max_evals",
      "n",        "format",       "out",       "jobs",       "golden",
  };
  return keys;
}

void RunConfig::set(std::string_view key, const json& v) {
  if (key == "s") model.s = to_double(key, v);
  else if (key == "alpha") model.alpha = to_double(key, v);
  else if (key == "lambda") model.lambda_amp = to_double(key, v);
  else if (key == "k") model.k_amp = to_double(key, v);
  else if (key == "t") model.t = to_double(key, v);
  else if (key == "b") model.b = to_double(key, v);
  else if (key == "q") q = to_double(key, v);
  else if (key == "gamma") gamma = to_double(key, v);
  else if (key == "gamma_sq") {
    const double g2 = to_double(key, v);
    if (!(g2 >= 0.0)) throw ConfigError("gamma_sq: must be >= 0");
    gamma = -std::sqrt(g2);  // confining sign
  } else if (key == "shape") shape.kind = to_string_value(key, v);
  else if (key == "coeffs") shape.coeffs = to_list(key, v);
  else if (key == "m") shape.m = to_int(key, v);
  else if (key == "shape_c") shape.c = to_double(key, v);
  else if (key == "K") coeffs.K = to_double(key, v);
  else if (key == "P") coeffs.P = to_double(key, v);
  else if (key == "C") coeffs.C = to_double(key, v);
  else if (key == "D") {
    unstable.D = to_double(key, v);
    unstable_given = true;
  }
  else if (key == "U") {
    unstable.U = to_double(key, v);
    unstable_given = true;
  }
  else if (key == "N") {
    unstable.N = to_double(key, v);
    unstable_given = true;
  }
  else if (key == "T") {
    unstable.T = to_double(key, v);
    unstable_given = true;
  }
  else if (key == "grid.spacing") {
    const auto sp = to_string_value(key, v);
    if (sp == "log") grid.spacing = potentials::GridSpacing::Log;
    else if (sp == "lin" || sp == "linear") grid.spacing = potentials::GridSpacing::Linear;
    else throw ConfigError("grid.spacing: expected 'lin' or 'log'");
  } else if (key == "grid.lo") grid.lo = to_double(key, v);
  else if (key == "grid.hi") grid.hi = to_double(key, v);
  else if (key == "grid.count") grid.count = to_int(key, v);
  else if (key == "tolerance.rel") tolerance.rel = to_double(key, v);
  else if (key == "tolerance.abs") tolerance.abs = to_double(key, v);
  else if (key == "tolerance.max_evals") tolerance.max_evals = static_cast<long>(to_int(key, v));
  else if (key == "n") n = to_double(key, v);
  else if (key == "format") {
    const auto f = to_string_value(key, v);
    if (f == "csv") format = OutputFormat::Csv;
    else if (f == "json") format = OutputFormat::Json;
    else throw ConfigError("format: expected 'csv' or 'json'");
  } else if (key == "out") out = to_string_value(key, v);
  else if (key == "jobs") jobs = to_int(key, v);
  else if (key == "golden") golden = to_string_value(key, v);
  else throw ConfigError("unknown config key '" + std::string(key) + "'");
}

void RunConfig::merge(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config: top level must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "grid" || key == "tolerance") {
      if (!value.is_object()) throw ConfigError(key + ": expected an object");
      for (const auto& [sub, sv] : value.items()) set(key + "." + sub, sv);
    } else {
      set(key, value);
    }
  }
}

void RunConfig::validate() const {
  try {
    model.validate();
    coeffs.validate();
    grid.validate();
    tolerance.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!std::isfinite(q) || q == 0.0) throw ConfigError("q: must be finite and nonzero");
  if (!std::isfinite(gamma)) throw ConfigError("gamma: must be finite");
  for (double v : {unstable.D, unstable.U, unstable.N, unstable.T})
    if (!std::isfinite(v)) throw ConfigError("D, U, N, T: must be finite");
  if (n && !(*n > 1.0 && std::isfinite(*n))) throw ConfigError("n: must be > 1");
  if (jobs < 1) throw ConfigError("jobs: must be >= 1");
  (void)make_shape();
}

potentials::WeakPotentialShape RunConfig::make_shape() const {
  using potentials::WeakPotentialShape;
  try {
    if (shape.kind == "single") return WeakPotentialShape::single_quark();
    if (shape.kind == "two-quark") return WeakPotentialShape::two_quark();
    if (shape.kind == "three-quark") return WeakPotentialShape::three_quark(shape.c);
    if (shape.kind == "custom") return WeakPotentialShape::rational(shape.coeffs, shape.m, "custom");
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("shape: ") + e.what());
  }
  throw ConfigError("shape: expected single, two-quark, three-quark or custom");
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  RunConfig cfg;
  cfg.merge(doc);
  return cfg;
}

}  // namespace cqm::config
