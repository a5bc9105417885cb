#ifndef PITMAN_IO_HPP
#define PITMAN_IO_HPP

// JSON (de)serialization of laws, functionals and experiment configs.
// Requires nlohmann/json on the include path.

#include <cstdint>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pitman/distributions.hpp"
#include "pitman/error.hpp"
#include "pitman/experiments.hpp"
#include "pitman/functional.hpp"

namespace pitman::io {

using json = nlohmann::json;

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T get(const json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("field '") + key + "': " + e.what());
  }
}

// Counts must be nonnegative JSON integers; the library's get<std::size_t>
// would wrap a negative value around silently.
inline std::size_t to_count(const json& v, const char* key) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ConfigError(std::string("field '") + key + "' must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

inline std::size_t count_or(const json& j, const char* key, std::size_t fallback) {
  return j.contains(key) ? to_count(j.at(key), key) : fallback;
}

}  // namespace detail

inline GaussianLaw gaussian_from_json(const json& j) {
  return GaussianLaw(detail::get<double>(j, "mean"), detail::get<double>(j, "var"));
}

inline json to_json(const GaussianLaw& g) {
  return {{"kind", "gaussian"}, {"mean", g.mean()}, {"var", g.variance()}};
}

inline AtomicLaw atomic_from_json(const json& j) {
  const auto kind = detail::get<std::string>(j, "kind");
  if (kind == "finite") {
    std::vector<std::pair<double, double>> atoms;
    for (const auto& a : detail::field(j, "atoms")) {
      if (!a.is_array() || a.size() != 2) throw ConfigError("finite law: atoms must be [value, weight] pairs");
      atoms.emplace_back(a[0].get<double>(), a[1].get<double>());
    }
    return AtomicLaw::finite(std::move(atoms));
  }
  if (kind == "powerlaw") return AtomicLaw::power_law(detail::get<double>(j, "alpha"));
  throw ConfigError("unknown atomic law kind '" + kind + "'");
}

inline json to_json(const AtomicLaw& a) {
  if (a.is_power_law()) return {{"kind", "powerlaw"}, {"alpha", a.exponent()}};
  json atoms = json::array();
  for (std::size_t i = 0; i < a.values().size(); ++i) atoms.push_back({a.values()[i], a.weights()[i]});
  return {{"kind", "finite"}, {"atoms", atoms}};
}

/// {"kind":"finite"|"powerlaw"|"gaussian"|"mixture", ...}; a mixture is
/// {"kind":"mixture","lambda":λ,"discrete":{...},"continuous":{...}}.
inline Law law_from_json(const json& j) {
  const auto kind = detail::get<std::string>(j, "kind");
  if (kind == "gaussian") return gaussian_from_json(j);
  if (kind == "mixture") {
    const double lambda = detail::get<double>(j, "lambda");
    std::optional<AtomicLaw> d;
    std::optional<GaussianLaw> c;
    if (j.contains("discrete")) d = atomic_from_json(j.at("discrete"));
    if (j.contains("continuous")) c = gaussian_from_json(j.at("continuous"));
    return P0Decomposition(lambda, std::move(d), std::move(c));
  }
  return atomic_from_json(j);
}

inline json to_json(const Law& law) {
  return std::visit(
      [](const auto& l) -> json {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, P0Decomposition>) {
          json j{{"kind", "mixture"}, {"lambda", l.lambda()}};
          if (l.discrete()) j["discrete"] = to_json(*l.discrete());
          if (l.continuous()) j["continuous"] = to_json(*l.continuous());
          return j;
        } else {
          return to_json(l);
        }
      },
      law);
}

/// A law entry is either a standard name ("P1", "P2", "P3") or an object
/// with an optional "name".
inline NamedLaw named_law_from_json(const json& j, std::size_t index) {
  if (j.is_string()) return standard_law(j.get<std::string>());
  if (!j.is_object()) throw ConfigError("law entries must be names or objects");
  const std::string name = j.value("name", "law" + std::to_string(index));
  return {name, law_from_json(j)};
}

inline Functional functional_from_json(const json& j) {
  const auto kind = detail::get<std::string>(j, "kind");
  if (kind == "indicator_above") return Functional::indicator_above(detail::get<double>(j, "a"));
  if (kind == "two_sided") return Functional::two_sided(detail::get<double>(j, "a"));
  if (kind == "interval") return Functional::interval(detail::get<double>(j, "a"), detail::get<double>(j, "b"));
  if (kind == "identity") return Functional::identity();
  throw ConfigError("unknown functional kind '" + kind + "'");
}

inline json to_json(const Functional& f) {
  switch (f.kind()) {
    case Functional::Kind::IndicatorAbove: return {{"kind", "indicator_above"}, {"a", f.a()}};
    case Functional::Kind::TwoSided: return {{"kind", "two_sided"}, {"a", f.a()}};
    case Functional::Kind::IndicatorInterval: return {{"kind", "interval"}, {"a", f.a()}, {"b", f.b()}};
    case Functional::Kind::Identity: return {{"kind", "identity"}};
  }
  return {};
}

/// Reads a config; absent fields keep their defaults. "law" (single) and
/// "laws" (list) are both accepted; the default law list is P1, P2, P3.
inline ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig cfg;
  try {
    if (j.contains("laws")) {
      std::size_t i = 0;
      for (const auto& l : j.at("laws")) cfg.laws.push_back(named_law_from_json(l, i++));
    } else if (j.contains("law")) {
      cfg.laws.push_back(named_law_from_json(j.at("law"), 0));
    } else {
      for (const char* name : {"P1", "P2", "P3"}) cfg.laws.push_back(standard_law(name));
    }
    cfg.sigma = j.value("sigma", cfg.sigma);
    cfg.mass = j.value("M", cfg.mass);
    if (j.contains("G")) cfg.base = gaussian_from_json(j.at("G"));
    if (j.contains("f")) cfg.f = functional_from_json(j.at("f"));
    if (j.contains("sample_sizes")) {
      cfg.sample_sizes.clear();
      for (const auto& n : j.at("sample_sizes")) cfg.sample_sizes.push_back(detail::to_count(n, "sample_sizes"));
    }
    cfg.replications = detail::count_or(j, "replications", cfg.replications);
    cfg.posterior_draws = detail::count_or(j, "posterior_draws", cfg.posterior_draws);
    if (j.contains("level")) {
      const auto lv = j.at("level").get<std::vector<double>>();
      if (lv.size() != 2) throw ConfigError("level must be [alpha, beta]");
      cfg.alpha = lv[0];
      cfg.beta = lv[1];
    }
    cfg.master_seed = detail::count_or(j, "master_seed", cfg.master_seed);
    if (j.contains("sigma_mode")) cfg.sigma_mode = parse_sigma_mode(j.at("sigma_mode").get<std::string>());
    cfg.output_path = j.value("output_path", cfg.output_path);
    cfg.sigma_grid = detail::count_or(j, "sigma_grid", cfg.sigma_grid);
    cfg.epsilon_scale = j.value("epsilon_scale", cfg.epsilon_scale);
    cfg.band_alpha = j.value("band_alpha", cfg.band_alpha);
    if (j.contains("band_grid")) cfg.band_grid = parse_band_grid(j.at("band_grid").get<std::string>());
    if (j.contains("sigma_window")) {
      const auto w = j.at("sigma_window").get<std::vector<double>>();
      if (w.size() != 2) throw ConfigError("sigma_window must be [lo, hi]");
      cfg.window_lo = w[0];
      cfg.window_hi = w[1];
    }
    cfg.threads = static_cast<unsigned>(detail::count_or(j, "threads", cfg.threads));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

inline ExperimentConfig read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  return config_from_json(j);
}

inline json to_json(const ExperimentConfig& cfg) {
  json laws = json::array();
  for (const auto& l : cfg.laws) {
    json entry = to_json(l.law);
    entry["name"] = l.name;
    laws.push_back(entry);
  }
  return {{"laws", laws},
          {"sigma", cfg.sigma},
          {"M", cfg.mass},
          {"G", to_json(cfg.base)},
          {"f", to_json(cfg.f)},
          {"sample_sizes", cfg.sample_sizes},
          {"replications", cfg.replications},
          {"posterior_draws", cfg.posterior_draws},
          {"level", {cfg.alpha, cfg.beta}},
          {"master_seed", cfg.master_seed},
          {"sigma_mode", to_string(cfg.sigma_mode)},
          {"output_path", cfg.output_path},
          {"sigma_grid", cfg.sigma_grid},
          {"epsilon_scale", cfg.epsilon_scale},
          {"band_alpha", cfg.band_alpha},
          {"band_grid", to_string(cfg.band_grid)},
          {"sigma_window", {cfg.window_lo, cfg.window_hi}}};
}

}  // namespace pitman::io

#endif  // PITMAN_IO_HPP
