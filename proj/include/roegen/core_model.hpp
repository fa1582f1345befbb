#pragma once

/// \file
/// Domain vocabulary: state points, phase and curve labels, and the
/// thermodynamics-to-economics dictionary used to name every output.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "roegen/errors.hpp"

namespace roegen {

/// A point (I, P, Q) of the economic state space.
struct EconomicState {
  double I;  ///< internal politics stability, > 0
  double P;  ///< price level
  double Q;  ///< output volume, > b of the active equation of state
};

/// A point of the I-P phase diagram.
struct DiagramPoint {
  double I;
  double P;

  friend bool operator==(const DiagramPoint&, const DiagramPoint&) = default;
};

enum class Phase { Inflation, Liquidity, Income, Supercritical };

/// The three coexistence curves of the diagram.
enum class CurveKind { BoomCrisis, RecoveryRecession, IncreaseDecrease };

inline constexpr std::array<CurveKind, 3> kAllCurves = {
    CurveKind::BoomCrisis, CurveKind::RecoveryRecession, CurveKind::IncreaseDecrease};

inline std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::Inflation:
      return "Inflation";
    case Phase::Liquidity:
      return "Liquidity";
    case Phase::Income:
      return "Income";
    case Phase::Supercritical:
      return "Supercritical";
  }
  return "?";
}

inline std::string_view to_string(CurveKind k) {
  switch (k) {
    case CurveKind::BoomCrisis:
      return "BoomCrisis";
    case CurveKind::RecoveryRecession:
      return "RecoveryRecession";
    case CurveKind::IncreaseDecrease:
      return "IncreaseDecrease";
  }
  return "?";
}

/// Human-readable region name, as drawn on the figure.
inline std::string_view region_name(Phase p) {
  switch (p) {
    case Phase::Inflation:
      return "inflation";
    case Phase::Liquidity:
      return "monetary policy as liquidity";
    case Phase::Income:
      return "income";
    case Phase::Supercritical:
      return "supercritical";
  }
  return "?";
}

/// The two phases a curve separates, in the order its forward reading uses.
inline std::pair<Phase, Phase> separated_phases(CurveKind k) {
  switch (k) {
    case CurveKind::BoomCrisis:
      return {Phase::Inflation, Phase::Income};
    case CurveKind::RecoveryRecession:
      return {Phase::Inflation, Phase::Liquidity};
    case CurveKind::IncreaseDecrease:
      return {Phase::Liquidity, Phase::Income};
  }
  return {Phase::Income, Phase::Income};
}

/// Curve separating two distinct non-supercritical phases.
inline std::optional<CurveKind> curve_between(Phase a, Phase b) {
  for (CurveKind k : kAllCurves) {
    auto [x, y] = separated_phases(k);
    if ((a == x && b == y) || (a == y && b == x)) return k;
  }
  return std::nullopt;
}

/// Result of classifying a diagram point: either a region or a point lying
/// on one or more boundary curves (three at the triple point).
struct PointClass {
  std::optional<Phase> phase;
  std::vector<CurveKind> on_curves;

  bool is_boundary() const { return !on_curves.empty(); }

  std::string label() const {
    if (phase) return std::string(to_string(*phase));
    std::string out;
    for (std::size_t i = 0; i < on_curves.size(); ++i) {
      if (i) out += "+";
      out += to_string(on_curves[i]);
    }
    return out;
  }

  friend bool operator==(const PointClass&, const PointClass&) = default;
};

// ---- dictionary ---------------------------------------------------------

struct DictionaryEntry {
  std::string thermo_symbol;
  std::string thermo_name;
  std::string econ_symbol;
  std::string econ_name;

  friend bool operator==(const DictionaryEntry&, const DictionaryEntry&) = default;
};

enum class LookupDirection { ThermoToEcon, EconToThermo };

/// Built-in rows. Vector field quantities carry a `_vec` suffix so that the
/// pressure/polarization pair does not collide on the symbol `P`.
inline const std::vector<DictionaryEntry>& builtin_dictionary() {
  static const std::vector<DictionaryEntry> rows = {
      {"U", "internal energy", "G", "growth potential"},
      {"T", "temperature", "I", "internal politics stability"},
      {"S", "entropy", "E", "entropy"},
      {"P", "pressure", "P", "price level (inflation)"},
      {"V", "volume", "Q", "volume, structure, quality"},
      {"W", "mechanical work", "W", "wealth of the system"},
      {"Q_heat", "heat", "q", "production of goods"},
      {"mu_k", "chemical potential", "nu_k", "sector potential"},
      {"N_k", "particle number", "N_k", "sector commodity count"},
      {"Gibbs", "Gibbs free energy", "Gamma", "exchange potential"},
      {"E_vec", "external electric field", "e_vec", "external investment (econo-electric) field"},
      {"P_vec", "polarization", "p_vec", "initial growth condition field (econo-polarization)"},
      {"H_vec", "external magnetic field", "h_vec", "external growth (econo-magnetic) field"},
      {"M_vec", "magnetization", "m_vec", "growth (econo-magnetization)"},
      {"solid", "solid", "inflation", "inflation"},
      {"fluid", "fluid", "liquidity", "monetary policy as liquidity"},
      {"gas", "gas", "income", "income"},
  };
  return rows;
}

/// Thermodynamics-economics dictionary. Built-in rows are fixed; user rows
/// may be appended as long as neither symbol is already taken.
class Dictionary {
 public:
  Dictionary() : entries_(builtin_dictionary()) {}

  void extend(DictionaryEntry entry) {
    if (entry.thermo_symbol.empty() || entry.econ_symbol.empty())
      throw ArgumentError("dictionary entry symbols must be non-empty");
    for (const auto& e : entries_) {
      if (e.thermo_symbol == entry.thermo_symbol)
        throw ArgumentError("dictionary already defines thermo symbol '" + entry.thermo_symbol + "'");
      if (e.econ_symbol == entry.econ_symbol)
        throw ArgumentError("dictionary already defines econ symbol '" + entry.econ_symbol + "'");
    }
    entries_.push_back(std::move(entry));
  }

  const DictionaryEntry& lookup(std::string_view symbol, LookupDirection dir) const {
    if (symbol.empty()) throw ArgumentError("dictionary lookup needs a non-empty symbol");
    for (const auto& e : entries_) {
      const std::string& key = dir == LookupDirection::ThermoToEcon ? e.thermo_symbol : e.econ_symbol;
      if (key == symbol) return e;
    }
    std::ostringstream msg;
    msg << "unknown " << (dir == LookupDirection::ThermoToEcon ? "thermodynamic" : "economic")
        << " symbol '" << symbol << "'; available:";
    for (const auto& e : entries_)
      msg << ' ' << (dir == LookupDirection::ThermoToEcon ? e.thermo_symbol : e.econ_symbol);
    throw LookupError(msg.str());
  }

  /// Economic name of a thermodynamic symbol.
  const std::string& econ_name(std::string_view thermo_symbol) const {
    return lookup(thermo_symbol, LookupDirection::ThermoToEcon).econ_name;
  }

  std::span<const DictionaryEntry> entries() const { return entries_; }

  /// Rows sorted by thermo_symbol (byte order).
  std::vector<DictionaryEntry> sorted() const {
    std::vector<DictionaryEntry> rows = entries_;
    std::sort(rows.begin(), rows.end(),
              [](const auto& x, const auto& y) { return x.thermo_symbol < y.thermo_symbol; });
    return rows;
  }

 private:
  std::vector<DictionaryEntry> entries_;
};

inline const DictionaryEntry& dictionary_lookup(std::string_view symbol, LookupDirection dir) {
  static const Dictionary dict;
  return dict.lookup(symbol, dir);
}

}  // namespace roegen
