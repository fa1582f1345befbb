#pragma once

/// \file
/// Region classification over a built PhaseDiagram.
///
///   I < I_t          Inflation if P > P_sub(I), else Income
///   I_t <= I < I_c   Inflation if P > P_melt(I); Liquidity if
///                    P_sat(I) < P <= P_melt(I); else Income
///   I >= I_c         Supercritical if P > P_c, else Income

#include <cmath>
#include <limits>

#include "roegen/core_model.hpp"
#include "roegen/phase_equilibrium.hpp"

namespace roegen {

/// Region of (I, P) given the boundary prices at I; no boundary snapping.
inline Phase region_from(const PhaseDiagram& d, const CurveValues& v, double I, double P) {
  if (I < d.triple().I) return P > *v.sublimation ? Phase::Inflation : Phase::Income;
  if (I < d.critical().I) {
    if (P > *v.melting) return Phase::Inflation;
    if (P > *v.saturation) return Phase::Liquidity;
    return Phase::Income;
  }
  return P > d.critical().P ? Phase::Supercritical : Phase::Income;
}

/// Strict region of a point; points on a curve fall on one side of it.
inline Phase region_of(const PhaseDiagram& d, double I, double P) {
  d.check_range(I);
  return region_from(d, d.curve_values(I), I, P);
}

namespace detail {

inline bool near(double x, double ref, double rel_tol) {
  return std::abs(x - ref) <= rel_tol * std::max(std::abs(ref), std::numeric_limits<double>::min());
}

}  // namespace detail

/// Region label of a diagram point, or the curve(s) it lies on when within
/// the diagram's boundary tolerance of one.
inline PointClass classify_phase(DiagramPoint pt, const PhaseDiagram& d) {
  d.check_range(pt.I);
  const double tol = d.tolerances().boundary;
  const auto& t = d.triple();
  const auto& c = d.critical();
  PointClass out;
  if (detail::near(pt.I, t.I, tol) && detail::near(pt.P, t.P, tol)) {
    out.on_curves.assign(kAllCurves.begin(), kAllCurves.end());
    return out;
  }
  const CurveValues v = d.curve_values(pt.I);
  if (pt.I < t.I) {
    if (detail::near(pt.P, *v.sublimation, tol)) out.on_curves.push_back(CurveKind::BoomCrisis);
  } else if (pt.I < c.I) {
    if (detail::near(pt.P, *v.melting, tol)) out.on_curves.push_back(CurveKind::RecoveryRecession);
    if (detail::near(pt.P, *v.saturation, tol)) out.on_curves.push_back(CurveKind::IncreaseDecrease);
  } else if (detail::near(pt.I, c.I, tol) && detail::near(pt.P, c.P, tol)) {
    out.on_curves.push_back(CurveKind::IncreaseDecrease);
  }
  if (!out.is_boundary()) out.phase = region_from(d, v, pt.I, pt.P);
  return out;
}

}  // namespace roegen
