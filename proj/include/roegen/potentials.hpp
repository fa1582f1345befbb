#pragma once

/// \file
/// Thermodynamic-style potentials in economic variables and the law checks
/// built on them.
///
///   entropy        E(I, Q)   = R ln(Q - b) + c R ln I + E0
///   growth energy  U_g(I, Q) = c R I - a/Q + U0 - sum_k nu_k N_k
///   exchange       Gamma     = U_g - I E + P Q
///
/// These satisfy the Gibbs-Pfaff form dU_g = I dE - P dQ - sum_k nu_k dN_k
/// for the price level of eos.hpp.

#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "roegen/eos.hpp"
#include "roegen/errors.hpp"
#include "roegen/fields.hpp"

namespace roegen {

struct PotentialOffsets {
  double E0 = 0.0;
  double U0 = 0.0;
};

/// A commodity sector with constant potential nu.
struct Sector {
  double nu = 0.0;
};

inline double entropy(const EosParams& p, double I, double Q, const PotentialOffsets& off = {}) {
  detail::check_state(p, I, Q);
  return p.R * std::log(Q - p.b) + p.c * p.R * std::log(I) + off.E0;
}

/// dE/dQ at fixed I; equal to dP/dI at fixed Q.
inline double entropy_dQ(const EosParams& p, double I, double Q) {
  detail::check_state(p, I, Q);
  return p.R / (Q - p.b);
}

inline double growth_energy(const EosParams& p, double I, double Q, const PotentialOffsets& off = {}) {
  detail::check_state(p, I, Q);
  return p.c * p.R * I - p.a / Q + off.U0;
}

inline double exchange_potential(const EosParams& p, double I, double Q, const PotentialOffsets& off = {}) {
  return growth_energy(p, I, Q, off) - I * entropy(p, I, Q, off) + price_level(p, I, Q) * Q;
}

struct SectorState {
  double nu;
  double N;
};

struct PotentialState {
  double E;
  double U_g;
  double G_x;
  std::vector<SectorState> sectors;
};

/// Potentials at (I, Q) with sector commodity counts N aligned to sectors.
inline PotentialState potential_state(const EosParams& p, double I, double Q, const PotentialOffsets& off = {},
                                      std::span<const Sector> sectors = {}, std::span<const double> counts = {}) {
  if (sectors.size() != counts.size())
    throw ArgumentError("sector counts (" + std::to_string(counts.size()) + ") do not match sectors (" +
                        std::to_string(sectors.size()) + ")");
  PotentialState s;
  s.E = entropy(p, I, Q, off);
  s.U_g = growth_energy(p, I, Q, off);
  for (std::size_t k = 0; k < sectors.size(); ++k) {
    if (!(counts[k] >= 0)) throw ArgumentError("sector commodity count must be >= 0");
    s.U_g -= sectors[k].nu * counts[k];
    s.sectors.push_back({sectors[k].nu, counts[k]});
  }
  s.G_x = s.U_g - I * s.E + price_level(p, I, Q) * Q;
  return s;
}

// ---- quasi-static paths -------------------------------------------------

struct PathPoint {
  double I;
  double Q;
  std::vector<double> N;  ///< sector commodity counts, may be empty
};

struct QuasiStaticPath {
  std::vector<PathPoint> samples;
  bool reversible = true;
  double dissipation = 0.0;  ///< per-step loss, used when !reversible

  bool closed() const {
    return samples.size() >= 2 && samples.front().I == samples.back().I && samples.front().Q == samples.back().Q;
  }
};

namespace detail {

inline void check_path(const EosParams& p, const QuasiStaticPath& path) {
  if (path.samples.size() < 2) throw ArgumentError("path needs at least 2 samples");
  for (std::size_t i = 0; i < path.samples.size(); ++i) {
    const auto& s = path.samples[i];
    if (!(s.I > 0) || !(s.Q > p.b) || !std::isfinite(s.I) || !std::isfinite(s.Q))
      throw DomainError("path sample " + std::to_string(i) + " is outside the equation-of-state domain");
  }
  if (!path.reversible && path.dissipation < 0) throw ArgumentError("dissipation must be >= 0");
}

/// Midpoint-rule increments of one segment.
struct SegmentForms {
  double I_dE;
  double P_dQ;
};

inline SegmentForms segment_forms(const EosParams& p, double I0, double Q0, double I1, double Q1) {
  const double I_mid = 0.5 * (I0 + I1);
  const double Q_mid = 0.5 * (Q0 + Q1);
  const double dE = entropy(p, I1, Q1) - entropy(p, I0, Q0);
  return {I_mid * dE, price_level(p, I_mid, Q_mid) * (Q1 - Q0)};
}

}  // namespace detail

/// |closed-loop integral of (I dE - P dQ)| with the loop's polyline split into
/// `segments` midpoint segments. The exact value is zero, so the residual is
/// pure discretization error, O(1/segments^2).
inline double pfaff_loop_residual(const EosParams& p, const QuasiStaticPath& loop, std::size_t segments) {
  detail::check_path(p, loop);
  if (!loop.closed()) throw ArgumentError("Pfaff loop residual needs a closed path (first sample == last)");
  if (!loop.reversible) throw ArgumentError("Pfaff loop residual needs a reversible path");
  const auto& s = loop.samples;
  const std::size_t edges = s.size() - 1;
  if (segments < edges) segments = edges;
  double sum = 0.0;
  for (std::size_t e = 0; e < edges; ++e) {
    const std::size_t m = segments / edges + (e < segments % edges ? 1 : 0);
    const PathPoint& a = s[e];
    const PathPoint& z = s[e + 1];
    for (std::size_t j = 0; j < m; ++j) {
      const double t0 = static_cast<double>(j) / static_cast<double>(m);
      const double t1 = static_cast<double>(j + 1) / static_cast<double>(m);
      const double I0 = a.I + (z.I - a.I) * t0, Q0 = a.Q + (z.Q - a.Q) * t0;
      const double I1 = j + 1 == m ? z.I : a.I + (z.I - a.I) * t1;
      const double Q1 = j + 1 == m ? z.Q : a.Q + (z.Q - a.Q) * t1;
      const auto f = detail::segment_forms(p, I0, Q0, I1, Q1);
      sum += f.I_dE - f.P_dQ;
    }
  }
  return std::abs(sum);
}

/// Growth-energy change along a path from the Gibbs-Pfaff form,
/// sum of (I dE - P dQ) minus sum_k nu_k dN_k.
inline double growth_energy_change(const EosParams& p, const QuasiStaticPath& path,
                                   std::span<const Sector> sectors = {}) {
  detail::check_path(p, path);
  const auto& s = path.samples;
  double sum = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    const auto f = detail::segment_forms(p, s[i - 1].I, s[i - 1].Q, s[i].I, s[i].Q);
    sum += f.I_dE - f.P_dQ;
  }
  if (!sectors.empty()) {
    const auto& a = s.front().N;
    const auto& z = s.back().N;
    if (a.size() != sectors.size() || z.size() != sectors.size())
      throw ArgumentError("path sector counts do not match the configured sectors");
    for (std::size_t k = 0; k < sectors.size(); ++k) sum -= sectors[k].nu * (z[k] - a[k]);
  }
  return sum;
}

// ---- production and wealth ----------------------------------------------

struct ProductionBreakdown {
  double reversible = 0.0;  ///< sum of I_mid dE
  double dissipated = 0.0;  ///< sum of per-step losses

  double total() const { return reversible - dissipated; }
};

inline ProductionBreakdown production_breakdown(const EosParams& p, const QuasiStaticPath& path) {
  detail::check_path(p, path);
  ProductionBreakdown out;
  const auto& s = path.samples;
  for (std::size_t i = 1; i < s.size(); ++i) {
    out.reversible += detail::segment_forms(p, s[i - 1].I, s[i - 1].Q, s[i].I, s[i].Q).I_dE;
    if (!path.reversible) out.dissipated += path.dissipation;
  }
  return out;
}

/// Cumulative production of goods q along the path.
inline double production_along_path(const EosParams& p, const QuasiStaticPath& path) {
  return production_breakdown(p, path).total();
}

/// Cumulative wealth, sum of P_mid dQ, plus field work when a field
/// trajectory aligned sample-for-sample with the path is supplied.
inline double wealth_along_path(const EosParams& p, const QuasiStaticPath& path,
                                const FieldPath* fields = nullptr, const FieldResponse& response = {}) {
  detail::check_path(p, path);
  const auto& s = path.samples;
  double w = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i)
    w += detail::segment_forms(p, s[i - 1].I, s[i - 1].Q, s[i].I, s[i].Q).P_dQ;
  if (fields) {
    if (fields->samples.size() != s.size())
      throw ArgumentError("field trajectory has " + std::to_string(fields->samples.size()) +
                          " samples but the path has " + std::to_string(s.size()));
    w += field_work(*fields, response);
  }
  return w;
}

// ---- laws ---------------------------------------------------------------

enum class SecondLawVerdict { ReversibleEquality, IrreversibleStrict, Violation };

inline const char* to_string(SecondLawVerdict v) {
  switch (v) {
    case SecondLawVerdict::ReversibleEquality:
      return "reversible-equality";
    case SecondLawVerdict::IrreversibleStrict:
      return "irreversible-strict";
    case SecondLawVerdict::Violation:
      return "violation";
  }
  return "?";
}

/// Judges a production figure against the reference sum of I dE.
/// `dissipated` is the known non-negative loss already subtracted from
/// `production`; a positive loss makes the inequality strict even when it
/// is below the floating-point resolution of `production`.
inline SecondLawVerdict judge_second_law(double production, double reference, double dissipated,
                                         double tol = 1e-12) {
  const double scale = tol * std::max(1.0, std::abs(reference));
  const double excess = production - reference;
  if (excess > scale) return SecondLawVerdict::Violation;
  if (excess < -scale || dissipated > 0) return SecondLawVerdict::IrreversibleStrict;
  return SecondLawVerdict::ReversibleEquality;
}

inline SecondLawVerdict second_law_check(const EosParams& p, const QuasiStaticPath& path, double tol = 1e-12) {
  const ProductionBreakdown b = production_breakdown(p, path);
  return judge_second_law(b.total(), b.reversible, b.dissipated, tol);
}

enum class ThirdLawVerdict { Satisfied, ViolatedDiverges, ViolatedNonzeroLimit };

inline const char* to_string(ThirdLawVerdict v) {
  switch (v) {
    case ThirdLawVerdict::Satisfied:
      return "satisfied";
    case ThirdLawVerdict::ViolatedDiverges:
      return "violated (diverges)";
    case ThirdLawVerdict::ViolatedNonzeroLimit:
      return "violated (nonzero limit)";
  }
  return "?";
}

struct ThirdLawProbe {
  std::vector<std::pair<double, double>> table;  ///< (I, E)
  double ln_I_coefficient = 0.0;                 ///< least-squares slope of E against ln I
  ThirdLawVerdict verdict = ThirdLawVerdict::Satisfied;
};

/// Tabulates an entropy model E(I) along a sequence decreasing to 0+ and
/// decides whether E tends to zero.
template <class EntropyOfI>
ThirdLawProbe third_law_probe(EntropyOfI&& entropy_of_I, std::span<const double> I_sequence, double tol = 1e-9) {
  if (I_sequence.size() < 2) throw ArgumentError("third-law probe needs at least 2 stability values");
  for (std::size_t i = 0; i < I_sequence.size(); ++i) {
    if (!(I_sequence[i] > 0)) throw ArgumentError("third-law probe requires every I > 0");
    if (i && !(I_sequence[i] < I_sequence[i - 1]))
      throw ArgumentError("third-law probe requires a strictly decreasing I sequence");
  }
  ThirdLawProbe out;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double I : I_sequence) {
    const double E = entropy_of_I(I);
    out.table.emplace_back(I, E);
    const double x = std::log(I);
    sx += x;
    sy += E;
    sxx += x * x;
    sxy += x * E;
  }
  const double n = static_cast<double>(I_sequence.size());
  const double denom = n * sxx - sx * sx;
  out.ln_I_coefficient = denom != 0 ? (n * sxy - sx * sy) / denom : 0.0;

  const double last = std::abs(out.table.back().second);
  const double first = std::abs(out.table.front().second);
  if (std::abs(out.ln_I_coefficient) > tol && last > first) {
    out.verdict = ThirdLawVerdict::ViolatedDiverges;
  } else if (last <= tol) {
    out.verdict = ThirdLawVerdict::Satisfied;
  } else {
    out.verdict = ThirdLawVerdict::ViolatedNonzeroLimit;
  }
  return out;
}

/// Third-law probe of the classical entropy model at fixed Q.
inline ThirdLawProbe third_law_probe(const EosParams& p, std::span<const double> I_sequence, double Q,
                                     const PotentialOffsets& off = {}) {
  if (!(Q > p.b)) throw DomainError("third-law probe needs Q > b");
  return third_law_probe([&](double I) { return entropy(p, I, Q, off); }, I_sequence);
}

}  // namespace roegen
