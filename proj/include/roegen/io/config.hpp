#pragma once

/// \file
/// Strict JSON configuration.
///
/// Every section and key is optional; absent keys take the documented
/// defaults and unknown keys are rejected.
///
/// \code{.json}
/// {
///   "eos":        {"kind": "VanDerWaals", "a": 3, "b": 0.3333333333333333, "R": 2.6666666666666665, "c": 1.5},
///   "solid":      {"I_t": 0.55, "L_melt": 0.5, "dQ_melt": 0.05, "L_sub": 2.0},
///   "grid":       {"n_increase_decrease": 128, "n_boom_crisis": 128, "n_recovery_recession": 128,
///                  "I_min": 0.3, "I_max": 1.2},
///   "tolerances": {"root": 1e-12, "area": 1e-10, "ode": 1e-10, "boundary": 1e-9},
///   "fields":     {"chi_e": 1.0, "chi_m": 1.0},
///   "offsets":    {"E0": 0.0, "U0": 0.0},
///   "sectors":    [{"nu": 0.1}],
///   "dictionary": [{"thermo_symbol": "F", "thermo_name": "free energy",
///                   "econ_symbol": "F_e", "econ_name": "free growth"}]
/// }
/// \endcode

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "roegen/core_model.hpp"
#include "roegen/eos.hpp"
#include "roegen/errors.hpp"
#include "roegen/fields.hpp"
#include "roegen/phase_equilibrium.hpp"
#include "roegen/potentials.hpp"

namespace roegen {

struct Config {
  EosParams eos = EosParams::reduced();
  SolidModel solid;
  GridSpec grid;
  Tolerances tolerances;
  FieldResponse fields;
  PotentialOffsets offsets;
  std::vector<Sector> sectors;
  std::vector<DictionaryEntry> dictionary_extensions;

  Dictionary dictionary() const {
    Dictionary d;
    for (const auto& e : dictionary_extensions) d.extend(e);
    return d;
  }
};

namespace detail {

using Json = nlohmann::json;

inline void reject_unknown(const Json& obj, const std::string& where, std::initializer_list<const char*> known) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) {
      std::string list;
      for (const char* k : known) list += std::string(list.empty() ? "" : ", ") + k;
      throw UnknownKeyError("unknown key '" + where + key + "' (expected one of: " + list + ")");
    }
  }
}

inline const Json& section(const Json& root, const char* name) {
  static const Json empty = Json::object();
  if (!root.contains(name)) return empty;
  const Json& s = root.at(name);
  if (!s.is_object()) throw ValidationError(std::string("'") + name + "' must be an object");
  return s;
}

inline void read_number(const Json& obj, const std::string& where, const char* key, double& out) {
  if (!obj.contains(key)) return;
  const Json& v = obj.at(key);
  if (!v.is_number()) throw ValidationError("'" + where + key + "' must be a number");
  out = v.get<double>();
  if (!std::isfinite(out)) throw ValidationError("'" + where + key + "' must be finite");
}

inline void read_count(const Json& obj, const std::string& where, const char* key, std::size_t& out) {
  if (!obj.contains(key)) return;
  const Json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 2)
    throw ValidationError("'" + where + key + "' must be an integer >= 2");
  out = static_cast<std::size_t>(v.get<long long>());
}

inline void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

inline void require_positive_tol(double v, const char* key) {
  require(v > 0 && v < 1, std::string("'tolerances.") + key + "' must lie in (0, 1)");
}

}  // namespace detail

inline Config parse_config(const nlohmann::json& root) {
  using detail::require;
  if (!root.is_object()) throw ParseError("configuration must be a JSON object");
  detail::reject_unknown(root, "", {"eos", "solid", "grid", "tolerances", "fields", "offsets", "sectors", "dictionary"});
  Config cfg;

  const auto& eos = detail::section(root, "eos");
  detail::reject_unknown(eos, "eos.", {"kind", "a", "b", "R", "c"});
  if (eos.contains("kind")) {
    const auto& k = eos.at("kind");
    require(k.is_string(), "'eos.kind' must be a string");
    const auto kind = k.get<std::string>();
    if (kind == "Ideal") {
      cfg.eos = EosParams{EosKind::Ideal, 0.0, 0.0, cfg.eos.R, cfg.eos.c};
    } else {
      require(kind == "VanDerWaals", "'eos.kind' must be \"VanDerWaals\" or \"Ideal\"");
    }
  }
  detail::read_number(eos, "eos.", "a", cfg.eos.a);
  detail::read_number(eos, "eos.", "b", cfg.eos.b);
  detail::read_number(eos, "eos.", "R", cfg.eos.R);
  detail::read_number(eos, "eos.", "c", cfg.eos.c);
  try {
    cfg.eos.validate();
  } catch (const ArgumentError& e) {
    throw ValidationError(std::string("eos: ") + e.what());
  }

  const auto& solid = detail::section(root, "solid");
  detail::reject_unknown(solid, "solid.", {"I_t", "L_melt", "dQ_melt", "L_sub"});
  detail::read_number(solid, "solid.", "I_t", cfg.solid.I_t);
  detail::read_number(solid, "solid.", "L_melt", cfg.solid.L_melt);
  detail::read_number(solid, "solid.", "dQ_melt", cfg.solid.dQ_melt);
  detail::read_number(solid, "solid.", "L_sub", cfg.solid.L_sub);
  try {
    cfg.solid.validate();
  } catch (const ArgumentError& e) {
    throw ValidationError(e.what());
  }

  if (cfg.eos.is_van_der_waals()) {
    double I_c = 0;
    try {
      I_c = find_critical(cfg.eos).I;
    } catch (const Error& e) {
      throw ValidationError(std::string("eos: critical point unavailable: ") + e.what());
    }
    if (!(cfg.solid.I_t < I_c)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "'solid.I_t' invalid: I_t must be < I_c (I_t = " << cfg.solid.I_t << ", I_c = " << I_c << ")";
      throw ValidationError(msg.str());
    }
  }
  const auto& grid = detail::section(root, "grid");
  detail::reject_unknown(grid, "grid.", {"n_increase_decrease", "n_boom_crisis", "n_recovery_recession", "I_min", "I_max"});
  detail::read_count(grid, "grid.", "n_increase_decrease", cfg.grid.n_increase_decrease);
  detail::read_count(grid, "grid.", "n_boom_crisis", cfg.grid.n_boom_crisis);
  detail::read_count(grid, "grid.", "n_recovery_recession", cfg.grid.n_recovery_recession);
  detail::read_number(grid, "grid.", "I_min", cfg.grid.I_min);
  detail::read_number(grid, "grid.", "I_max", cfg.grid.I_max);
  require(cfg.grid.I_min > 0, "'grid.I_min' must be > 0");
  require(cfg.grid.I_min < cfg.solid.I_t, "'grid.I_min' must be < I_t");
  require(cfg.grid.I_max > cfg.solid.I_t, "'grid.I_max' must be > I_t");

  const auto& tol = detail::section(root, "tolerances");
  detail::reject_unknown(tol, "tolerances.", {"root", "area", "ode", "boundary"});
  detail::read_number(tol, "tolerances.", "root", cfg.tolerances.root);
  detail::read_number(tol, "tolerances.", "area", cfg.tolerances.area);
  detail::read_number(tol, "tolerances.", "ode", cfg.tolerances.ode);
  detail::read_number(tol, "tolerances.", "boundary", cfg.tolerances.boundary);
  detail::require_positive_tol(cfg.tolerances.root, "root");
  detail::require_positive_tol(cfg.tolerances.area, "area");
  detail::require_positive_tol(cfg.tolerances.ode, "ode");
  detail::require_positive_tol(cfg.tolerances.boundary, "boundary");

  const auto& fields = detail::section(root, "fields");
  detail::reject_unknown(fields, "fields.", {"chi_e", "chi_m"});
  detail::read_number(fields, "fields.", "chi_e", cfg.fields.chi_e);
  detail::read_number(fields, "fields.", "chi_m", cfg.fields.chi_m);
  require(cfg.fields.chi_e >= 0, "'fields.chi_e' must be >= 0");
  require(cfg.fields.chi_m >= 0, "'fields.chi_m' must be >= 0");

  const auto& offsets = detail::section(root, "offsets");
  detail::reject_unknown(offsets, "offsets.", {"E0", "U0"});
  detail::read_number(offsets, "offsets.", "E0", cfg.offsets.E0);
  detail::read_number(offsets, "offsets.", "U0", cfg.offsets.U0);

  if (root.contains("sectors")) {
    const auto& arr = root.at("sectors");
    require(arr.is_array(), "'sectors' must be an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto& s = arr[i];
      const std::string where = "sectors[" + std::to_string(i) + "].";
      require(s.is_object(), "'" + where.substr(0, where.size() - 1) + "' must be an object");
      detail::reject_unknown(s, where, {"nu"});
      require(s.contains("nu"), "'" + where + "nu' is required");
      Sector sec;
      detail::read_number(s, where, "nu", sec.nu);
      cfg.sectors.push_back(sec);
    }
  }

  if (root.contains("dictionary")) {
    const auto& arr = root.at("dictionary");
    require(arr.is_array(), "'dictionary' must be an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto& e = arr[i];
      const std::string where = "dictionary[" + std::to_string(i) + "].";
      require(e.is_object(), "'dictionary[" + std::to_string(i) + "]' must be an object");
      detail::reject_unknown(e, where, {"thermo_symbol", "thermo_name", "econ_symbol", "econ_name"});
      DictionaryEntry entry;
      for (auto [key, field] : {std::pair{"thermo_symbol", &entry.thermo_symbol},
                                std::pair{"thermo_name", &entry.thermo_name},
                                std::pair{"econ_symbol", &entry.econ_symbol}, std::pair{"econ_name", &entry.econ_name}}) {
        require(e.contains(key) && e.at(key).is_string(), "'" + where + key + "' must be a string");
        *field = e.at(key).get<std::string>();
      }
      cfg.dictionary_extensions.push_back(entry);
    }
    try {
      (void)cfg.dictionary();
    } catch (const ArgumentError& e) {
      throw ValidationError(std::string("dictionary: ") + e.what() + " (built-in entries cannot be overridden)");
    }
  }

  return cfg;
}

inline Config parse_config(const std::string& text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed configuration JSON: ") + e.what());
  }
  return parse_config(root);
}

inline Config load_config(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("cannot open configuration file '" + file.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ConfigError& e) {
    // keep the error family; prefix the file for context
    const std::string what = file.string() + ": " + e.what();
    if (dynamic_cast<const ParseError*>(&e)) throw ParseError(what);
    if (dynamic_cast<const UnknownKeyError*>(&e)) throw UnknownKeyError(what);
    throw ValidationError(what);
  }
}

}  // namespace roegen
