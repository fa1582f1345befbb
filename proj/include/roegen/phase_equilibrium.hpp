#pragma once

/// \file
/// Phase equilibrium of the Van der Waals price-level surface: the critical
/// point, the Maxwell equal-area construction, the three coexistence curves
/// and the triple point, assembled into a PhaseDiagram.
///
/// The inflation (solid-analog) phase has no equation of state of its own.
/// It is anchored by a configured triple stability I_t and constant latent
/// parameters, and its two boundaries follow from Clausius-Clapeyron
/// integration out of the triple point:
///
///   boom-crisis         P_sub(I)  = P_t exp(-(L_sub/R)(1/I - 1/I_t))
///   recovery-recession  P_melt(I) = P_t + (L_melt/dQ_melt) ln(I/I_t)

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include "roegen/core_model.hpp"
#include "roegen/eos.hpp"
#include "roegen/errors.hpp"
#include "roegen/potentials.hpp"

namespace roegen {

struct Tolerances {
  double root = 1e-12;      ///< relative residual of polished volume roots
  double area = 1e-10;      ///< adaptive quadrature tolerance
  double ode = 1e-10;       ///< RK45 step-control tolerance
  double boundary = 1e-9;   ///< relative distance at which a point lies on a curve

  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

// Fixed acceptance thresholds of the constructions below.
inline constexpr double kStationarityTol = 1e-9;
inline constexpr double kEqualAreaTol = 1e-8;
inline constexpr double kExchangePotentialTol = 1e-6;
inline constexpr double kOdeAgreementTol = 1e-8;
inline constexpr double kMeetingTol = 1e-8;
/// Offset below I_c, relative to I_c, at which curve tracing stops.
inline constexpr double kCriticalOffset = 1e-6;

struct CriticalPoint {
  double I;
  double P;
  double Q;

  friend bool operator==(const CriticalPoint&, const CriticalPoint&) = default;
};

/// One saturation record on the liquidity-income boundary.
struct CoexistencePoint {
  double I;
  double P_sat;
  double Q_low;     ///< liquidity branch
  double Q_high;    ///< income branch
  double latent_q;  ///< I (E(Q_high) - E(Q_low))

  friend bool operator==(const CoexistencePoint&, const CoexistencePoint&) = default;
};

struct TriplePoint {
  double I;
  double P;

  friend bool operator==(const TriplePoint&, const TriplePoint&) = default;
};

/// Configured anchor of the inflation phase.
struct SolidModel {
  double I_t = 0.55;
  double L_melt = 0.5;   ///< latent production, inflation -> liquidity
  double dQ_melt = 0.05; ///< volume jump, inflation -> liquidity
  double L_sub = 2.0;    ///< latent production, inflation -> income

  void validate() const {
    if (!(I_t > 0) || !std::isfinite(I_t)) throw ArgumentError("solid I_t must be finite and > 0");
    if (!(L_melt > 0) || !std::isfinite(L_melt)) throw ArgumentError("solid L_melt must be > 0");
    if (!(dQ_melt > 0) || !std::isfinite(dQ_melt)) throw ArgumentError("solid dQ_melt must be > 0");
    if (!(L_sub >= 0) || !std::isfinite(L_sub)) throw ArgumentError("solid L_sub must be >= 0");
  }

  friend bool operator==(const SolidModel&, const SolidModel&) = default;
};

struct BoundaryCurve {
  CurveKind kind = CurveKind::IncreaseDecrease;
  std::vector<DiagramPoint> samples;  ///< I ascending
  double I_start = 0.0;
  double I_end = 0.0;
  /// Full saturation records; IncreaseDecrease only, aligned with samples.
  std::vector<CoexistencePoint> coexistence;
  /// Largest relative gap between the closed form and the RK45 cross-check.
  double ode_max_rel_deviation = 0.0;
};

// ---- critical point -----------------------------------------------------

/// (dP/dQ, d2P/dQ2) made dimensionless by P/Q and P/Q^2; in reduced units
/// these equal the raw derivatives at the critical point.
inline std::pair<double, double> stationarity_residuals(const EosParams& p, double I, double Q) {
  const auto d = price_level_derivatives(p, I, Q);
  const double scale = std::max(std::abs(price_level(p, I, Q)), std::numeric_limits<double>::min());
  return {d.dP_dQ * Q / scale, d.d2P_dQ2 * Q * Q / scale};
}

/// Solves dP/dQ = 0 and d2P/dQ2 = 0 by two-dimensional Newton iteration.
inline CriticalPoint find_critical(const EosParams& p) {
  if (!p.is_van_der_waals()) throw UnsupportedModelError("the ideal model has no critical point");
  p.validate();
  double Q = 3.0 * p.b * (1.0 + 1e-3);
  double I = 8.0 * p.a / (27.0 * p.R * p.b) * (1.0 + 1e-3);

  double last = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 100; ++it) {
    const double dq = Q - p.b;
    const auto d = price_level_derivatives(p, I, Q);
    const double f1 = d.dP_dQ;
    const double f2 = d.d2P_dQ2;
    const double j11 = -p.R / (dq * dq);                                         // d f1 / dI
    const double j12 = f2;                                                       // d f1 / dQ
    const double j21 = 2.0 * p.R / (dq * dq * dq);                               // d f2 / dI
    const double j22 = -6.0 * p.R * I / (dq * dq * dq * dq) + 24.0 * p.a / std::pow(Q, 5);  // d f2 / dQ
    const double det = j11 * j22 - j12 * j21;
    if (det == 0.0 || !std::isfinite(det)) break;
    const double step_I = (f1 * j22 - f2 * j12) / det;
    const double step_Q = (j11 * f2 - j21 * f1) / det;
    I -= step_I;
    Q -= step_Q;
    if (!(Q > p.b) || !(I > 0)) break;
    auto [r1, r2] = stationarity_residuals(p, I, Q);
    last = std::max(std::abs(r1), std::abs(r2));
    if (std::abs(step_I) <= 4 * std::numeric_limits<double>::epsilon() * I &&
        std::abs(step_Q) <= 4 * std::numeric_limits<double>::epsilon() * Q)
      break;
  }
  if (!(Q > p.b) || !(I > 0) || !(last <= kStationarityTol)) {
    std::ostringstream msg;
    msg << "critical-point Newton iteration did not converge in 100 iterations (last residual " << last << ")";
    throw ConvergenceError(msg.str());
  }
  return {I, price_level(p, I, Q), Q};
}

// ---- Maxwell construction -----------------------------------------------

namespace detail {

/// Volumes of the isotherm's local minimum and maximum of P, ascending.
inline std::vector<double> spinodal_volumes(const EosParams& p, double I) {
  // dP/dQ = 0  <=>  R I Q^3 - 2a Q^2 + 4ab Q - 2ab^2 = 0
  const CubicRoots cubic = cubic_roots(p.R * I, -2.0 * p.a, 4.0 * p.a * p.b, -2.0 * p.a * p.b * p.b);
  std::vector<double> out;
  for (double Q : cubic.real) {
    if (!(Q > p.b) || !std::isfinite(Q)) continue;
    for (int it = 0; it < 20; ++it) {
      const auto d = price_level_derivatives(p, I, Q);
      if (d.d2P_dQ2 == 0.0) break;
      const double next = Q - d.dP_dQ / d.d2P_dQ2;
      if (!(next > p.b) || next == Q) break;
      Q = next;
    }
    out.push_back(Q);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Branches {
  double Q_low;
  double Q_high;
};

inline Branches outer_roots(const EosParams& p, double I, double P, double root_tol) {
  const auto roots = solve_volume(p, I, P, root_tol);
  if (roots.size() < 2 && !(roots.size() == 1 && roots.front().multiplicity > 1))
    throw NoCoexistenceError("isotherm at I = " + std::to_string(I) + " has no three-root window at P = " +
                             std::to_string(P));
  return {roots.front().Q, roots.back().Q};
}

/// Signed area between the isotherm and the horizontal line at P.
inline double equal_area(const EosParams& p, double I, double P, const Branches& br, double tol) {
  auto f = [&](double Q) { return price_level(p, I, Q) - P; };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, br.Q_low, br.Q_high, 10, tol);
}

}  // namespace detail

/// Equal-area rule at stability I: the saturation price at which the
/// isotherm's loop encloses zero signed area, bracketed by the loop's local
/// extrema and located by bisection.
inline CoexistencePoint maxwell_construction(const EosParams& p, double I, const Tolerances& tol = {}) {
  const CriticalPoint crit = find_critical(p);
  if (!(I > 0)) throw ArgumentError("Maxwell construction requires I > 0");
  if (I >= crit.I) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "I = " << I << " is not below the critical stability I_c = " << crit.I;
    throw SupercriticalError(msg.str());
  }
  const auto spin = detail::spinodal_volumes(p, I);
  if (spin.size() < 2) throw NoCoexistenceError("isotherm at I = " + std::to_string(I) + " has no loop");
  const double P_top = price_level(p, I, spin.back());
  const double P_bottom = price_level(p, I, spin.front());
  if (!(P_top > P_bottom) || !(P_top > 0))
    throw NoCoexistenceError("isotherm at I = " + std::to_string(I) + " has no three-root price window");

  auto area_at = [&](double P) {
    return detail::equal_area(p, I, P, detail::outer_roots(p, I, P, tol.root), tol.area);
  };

  double hi = P_top;
  double lo = P_bottom;
  if (lo <= 0) {
    // loop dips below zero; walk down from the top until the area turns positive
    lo = P_top * 1e-2;
    int guard = 0;
    while (area_at(lo) <= 0) {
      hi = lo;
      lo *= 1e-2;
      if (++guard > 30) throw NoCoexistenceError("no positive-area bracket at I = " + std::to_string(I));
    }
  }

  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (area_at(mid) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double P_sat = 0.5 * (lo + hi);
  const detail::Branches br = detail::outer_roots(p, I, P_sat, tol.root);
  const double residual = std::abs(detail::equal_area(p, I, P_sat, br, tol.area));
  if (residual > kEqualAreaTol) {
    throw ConvergenceError("equal-area residual " + std::to_string(residual) + " at I = " + std::to_string(I));
  }

  const double g_low = exchange_potential(p, I, br.Q_low);
  const double g_high = exchange_potential(p, I, br.Q_high);
  if (std::abs(g_low - g_high) > kExchangePotentialTol * std::max(1.0, std::abs(g_low))) {
    throw ConvergenceError("exchange potentials differ across branches at I = " + std::to_string(I));
  }

  const double latent = I * (entropy(p, I, br.Q_high) - entropy(p, I, br.Q_low));
  return {I, P_sat, br.Q_low, br.Q_high, latent};
}

/// Signed equal-area residual of a coexistence record.
inline double equal_area_residual(const EosParams& p, const CoexistencePoint& pt, const Tolerances& tol = {}) {
  return detail::equal_area(p, pt.I, pt.P_sat, {pt.Q_low, pt.Q_high}, tol.area);
}

/// dP/dI along the coexistence curve: latent_q / (I (Q_high - Q_low)).
inline double clausius_clapeyron_slope(const CoexistencePoint& pt) {
  const double dQ = pt.Q_high - pt.Q_low;
  if (dQ == 0.0) throw DegeneratePointError("coexistence point at I = " + std::to_string(pt.I) +
                                            " has coincident branches (critical degeneracy)");
  return pt.latent_q / (pt.I * dQ);
}

// ---- curves ---------------------------------------------------------------

namespace detail {

/// Runs fn(i) for i in [0, n) on up to hardware_concurrency threads.
/// Exceptions are collected and the one with the lowest index rethrown.
template <class Fn>
void parallel_for(std::size_t n, bool parallel, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
  auto run = [&](std::size_t i) {
    try {
      fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const std::size_t workers =
      parallel ? std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency())) : 1;
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) run(i);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < n; i += workers) run(i);
      });
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace detail

/// Liquidity-income boundary: n - 1 Maxwell constructions spaced uniformly
/// on [I_t, I_c - eps] followed by the critical point.
inline BoundaryCurve trace_increase_decrease(const EosParams& p, double I_t, std::size_t n,
                                             const Tolerances& tol = {}, bool parallel = true) {
  const CriticalPoint crit = find_critical(p);
  if (!(I_t < crit.I)) throw ArgumentError("increase-decrease trace requires I_t < I_c");
  if (!(I_t > 0)) throw ArgumentError("increase-decrease trace requires I_t > 0");
  if (n < 2) throw ArgumentError("increase-decrease trace needs n >= 2");

  const std::size_t m = n - 1;
  const double I_last = crit.I - kCriticalOffset * crit.I;
  std::vector<CoexistencePoint> points(m);
  detail::parallel_for(m, parallel, [&](std::size_t j) {
    const double I = m == 1 ? I_t
                   : j + 1 == m ? I_last
                                : I_t + (I_last - I_t) * static_cast<double>(j) / static_cast<double>(m - 1);
    try {
      points[j] = maxwell_construction(p, I, tol);
    } catch (const Error& e) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "at I = " << I << ": " << e.what();
      throw ConvergenceError(msg.str());
    }
  });
  points.push_back({crit.I, crit.P, crit.Q, crit.Q, 0.0});

  BoundaryCurve curve;
  curve.kind = CurveKind::IncreaseDecrease;
  curve.I_start = I_t;
  curve.I_end = crit.I;
  curve.ode_max_rel_deviation = 0.0;
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (j && !(points[j].P_sat > points[j - 1].P_sat))
      throw ConvergenceError("saturation price is not strictly increasing at I = " + std::to_string(points[j].I));
    curve.samples.push_back({points[j].I, points[j].P_sat});
  }
  curve.coexistence = std::move(points);
  return curve;
}

inline double sublimation_price(const EosParams& p, const SolidModel& s, const TriplePoint& t, double I) {
  return t.P * std::exp(-(s.L_sub / p.R) * (1.0 / I - 1.0 / t.I));
}

inline double melting_price(const SolidModel& s, const TriplePoint& t, double I) {
  return t.P + (s.L_melt / s.dQ_melt) * std::log(I / t.I);
}

/// RK45 (Dormand-Prince, dense output) solution of dP/dI = slope(I, P) from
/// the anchor (I0, P0), reported at each of `at`. `at` must be sorted either
/// away from I0 or toward it; values are returned in the order of `at`.
inline std::vector<double> integrate_boundary_ode(const std::function<double(double, double)>& slope, double I0,
                                                  double P0, std::span<const double> at, double ode_tol) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 1>;
  std::vector<double> out(at.size());
  if (at.empty()) return out;

  // visit targets moving away from the anchor; the anchor itself is exact
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < at.size(); ++i) {
    if (at[i] == I0) {
      out[i] = P0;
    } else {
      order.push_back(i);
    }
  }
  if (order.empty()) return out;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return std::abs(at[x] - I0) < std::abs(at[y] - I0); });
  std::vector<double> times{I0};
  for (std::size_t i : order) times.push_back(at[i]);

  auto system = [&](const State& x, State& dxdt, double I) { dxdt[0] = slope(I, x[0]); };
  State x{P0};
  std::size_t k = 0;
  auto observe = [&](const State& s, double) {
    if (k > 0) out[order[k - 1]] = s[0];
    ++k;
  };
  const double span = std::abs(times.back() - I0);
  const double dt = (times.back() > I0 ? 1.0 : -1.0) * span * 1e-3;
  // error control is relative; the absolute floor only guards P near zero
  const double abs_tol = ode_tol * 1e-3 * std::max(std::abs(P0), std::numeric_limits<double>::min());
  auto stepper = odeint::make_dense_output(abs_tol, ode_tol, odeint::runge_kutta_dopri5<State>());
  odeint::integrate_times(stepper, system, x, times.begin(), times.end(), dt, observe);
  return out;
}

namespace detail {

inline double max_rel_gap(std::span<const DiagramPoint> closed, std::span<const double> ode) {
  double worst = 0.0;
  for (std::size_t i = 0; i < closed.size(); ++i) {
    const double ref = closed[i].P;
    const double gap = std::abs(ode[i] - ref) / std::max(std::abs(ref), std::numeric_limits<double>::min());
    worst = std::max(worst, gap);
  }
  return worst;
}

inline std::vector<double> uniform(double lo, double hi, std::size_t n) {
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i)
    xs[i] = i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return xs;
}

}  // namespace detail

/// Inflation-income boundary on [I_min, I_t].
inline BoundaryCurve trace_boom_crisis(const EosParams& p, const SolidModel& s, const TriplePoint& t, double I_min,
                                       std::size_t n, const Tolerances& tol = {}) {
  if (!(I_min > 0) || !(I_min < t.I))
    throw ArgumentError("boom-crisis trace requires 0 < I_min < I_t");
  if (n < 2) throw ArgumentError("boom-crisis trace needs n >= 2");
  BoundaryCurve curve;
  curve.kind = CurveKind::BoomCrisis;
  curve.I_start = I_min;
  curve.I_end = t.I;
  const auto Is = detail::uniform(I_min, t.I, n);
  for (double I : Is) curve.samples.push_back({I, sublimation_price(p, s, t, I)});

  const double k = s.L_sub / p.R;
  const auto ode = integrate_boundary_ode([k](double I, double P) { return k * P / (I * I); }, t.I, t.P, Is, tol.ode);
  curve.ode_max_rel_deviation = detail::max_rel_gap(curve.samples, ode);
  if (curve.ode_max_rel_deviation > kOdeAgreementTol)
    throw ConvergenceError("boom-crisis ODE cross-check deviates by " + std::to_string(curve.ode_max_rel_deviation));
  return curve;
}

/// Inflation-liquidity boundary on [I_t, I_max].
inline BoundaryCurve trace_recovery_recession(const EosParams& /*p*/, const SolidModel& s, const TriplePoint& t,
                                              double I_max, std::size_t n, const Tolerances& tol = {}) {
  if (!(I_max > t.I)) throw ArgumentError("recovery-recession trace requires I_max > I_t");
  if (n < 2) throw ArgumentError("recovery-recession trace needs n >= 2");
  BoundaryCurve curve;
  curve.kind = CurveKind::RecoveryRecession;
  curve.I_start = t.I;
  curve.I_end = I_max;
  const auto Is = detail::uniform(t.I, I_max, n);
  for (double I : Is) curve.samples.push_back({I, melting_price(s, t, I)});

  const double k = s.L_melt / s.dQ_melt;
  const auto ode = integrate_boundary_ode([k](double I, double) { return k / I; }, t.I, t.P, Is, tol.ode);
  curve.ode_max_rel_deviation = detail::max_rel_gap(curve.samples, ode);
  if (curve.ode_max_rel_deviation > kOdeAgreementTol)
    throw ConvergenceError("recovery-recession ODE cross-check deviates by " +
                           std::to_string(curve.ode_max_rel_deviation));
  return curve;
}

inline TriplePoint find_triple_point(const EosParams& p, const SolidModel& s, const Tolerances& tol = {}) {
  s.validate();
  const CriticalPoint crit = find_critical(p);
  if (!(s.I_t < crit.I)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "I_t = " << s.I_t << " must be < I_c = " << crit.I;
    throw ArgumentError(msg.str());
  }
  try {
    return {s.I_t, maxwell_construction(p, s.I_t, tol).P_sat};
  } catch (const Error& e) {
    throw ConvergenceError(std::string("saturation at the triple stability failed: ") + e.what());
  }
}

// ---- diagram --------------------------------------------------------------

struct GridSpec {
  std::size_t n_increase_decrease = 128;
  std::size_t n_boom_crisis = 128;
  std::size_t n_recovery_recession = 128;
  double I_min = 0.3;
  double I_max = 1.2;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Boundary prices available at one stability value.
struct CurveValues {
  std::optional<double> sublimation;  ///< I < I_t
  std::optional<double> melting;      ///< I_t <= I < I_c
  std::optional<double> saturation;   ///< I_t <= I < I_c
};

class PhaseDiagram {
 public:
  PhaseDiagram() = default;

  PhaseDiagram(EosParams params, SolidModel solid, GridSpec grid, Tolerances tol, CriticalPoint critical,
               TriplePoint triple, BoundaryCurve boom_crisis, BoundaryCurve recovery_recession,
               BoundaryCurve increase_decrease)
      : params_(params),
        solid_(solid),
        grid_(grid),
        tol_(tol),
        critical_(critical),
        triple_(triple),
        curves_{std::move(boom_crisis), std::move(recovery_recession), std::move(increase_decrease)} {}

  const EosParams& params() const { return params_; }
  const SolidModel& solid() const { return solid_; }
  const GridSpec& grid() const { return grid_; }
  const Tolerances& tolerances() const { return tol_; }
  const CriticalPoint& critical() const { return critical_; }
  const TriplePoint& triple() const { return triple_; }
  double I_min() const { return grid_.I_min; }
  double I_max() const { return grid_.I_max; }

  const BoundaryCurve& curve(CurveKind k) const { return curves_[static_cast<std::size_t>(k)]; }

  double sublimation_price(double I) const { return roegen::sublimation_price(params_, solid_, triple_, I); }
  double melting_price(double I) const { return roegen::melting_price(solid_, triple_, I); }

  /// Saturation price on [I_t, I_c]. Within the tracing offset of I_c the
  /// construction is singular, so the value is interpolated linearly
  /// between the last traced sample and the critical point.
  double saturation_price(double I) const {
    if (I == triple_.I) return triple_.P;
    if (I >= critical_.I) return critical_.P;
    const auto& pts = curve(CurveKind::IncreaseDecrease).coexistence;
    if (pts.size() >= 2) {
      const auto& last = pts[pts.size() - 2];
      if (I >= last.I && last.I < critical_.I) {
        const double t = (I - last.I) / (critical_.I - last.I);
        return last.P_sat + t * (critical_.P - last.P_sat);
      }
    }
    return maxwell_construction(params_, I, tol_).P_sat;
  }

  double curve_price(CurveKind k, double I) const {
    switch (k) {
      case CurveKind::BoomCrisis:
        return sublimation_price(I);
      case CurveKind::RecoveryRecession:
        return melting_price(I);
      case CurveKind::IncreaseDecrease:
        return saturation_price(I);
    }
    return std::numeric_limits<double>::quiet_NaN();
  }

  CurveValues curve_values(double I) const {
    CurveValues v;
    if (I < triple_.I) {
      v.sublimation = sublimation_price(I);
    } else if (I < critical_.I) {
      v.melting = melting_price(I);
      v.saturation = saturation_price(I);
    }
    return v;
  }

  void check_range(double I) const {
    if (!(I >= grid_.I_min && I <= grid_.I_max)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "I = " << I << " lies outside the diagram range [" << grid_.I_min << ", " << grid_.I_max << "]";
      throw RangeError(msg.str());
    }
  }

  /// Checks the diagram invariants, throwing ConvergenceError on failure.
  void validate() const {
    const auto& bc = curve(CurveKind::BoomCrisis);
    const auto& rr = curve(CurveKind::RecoveryRecession);
    const auto& id = curve(CurveKind::IncreaseDecrease);
    if (bc.samples.size() < 2 || rr.samples.size() < 2 || id.samples.size() < 2)
      throw ConvergenceError("diagram curves are incomplete");
    const double meet = std::max({std::abs(bc.samples.back().P - triple_.P), std::abs(rr.samples.front().P - triple_.P),
                                  std::abs(id.samples.front().P - triple_.P)});
    if (meet > kMeetingTol) throw ConvergenceError("curves do not meet at the triple point (gap " + std::to_string(meet) + ")");
    if (bc.samples.back().I != triple_.I || rr.samples.front().I != triple_.I || id.samples.front().I != triple_.I)
      throw ConvergenceError("curves are not anchored at the triple stability");
    if (!(id.samples.back() == DiagramPoint{critical_.I, critical_.P}))
      throw ConvergenceError("increase-decrease curve does not end at the critical point");
    const auto [r1, r2] = stationarity_residuals(params_, critical_.I, critical_.Q);
    if (std::abs(r1) > kStationarityTol || std::abs(r2) > kStationarityTol)
      throw ConvergenceError("critical point is not stationary");
    for (std::size_t i = 1; i < id.samples.size(); ++i) {
      if (!(id.samples[i].P > id.samples[i - 1].P)) throw ConvergenceError("saturation curve is not increasing");
      if (i + 1 < id.samples.size() && !(melting_price(id.samples[i].I) > id.samples[i].P))
        throw ConvergenceError("recovery-recession curve falls below the increase-decrease curve at I = " +
                               std::to_string(id.samples[i].I));
    }
    if (!(triple_.I < critical_.I)) throw ConvergenceError("triple point lies beyond the critical point");
  }

 private:
  EosParams params_{};
  SolidModel solid_{};
  GridSpec grid_{};
  Tolerances tol_{};
  CriticalPoint critical_{};
  TriplePoint triple_{};
  std::array<BoundaryCurve, 3> curves_{};
};

/// Assembles and validates the full diagram. Failures are reported as a
/// BuildError naming the stage.
inline PhaseDiagram build_diagram(const EosParams& p, const SolidModel& s, const GridSpec& grid,
                                  const Tolerances& tol = {}, bool parallel = true) {
  auto stage = [](const char* name, auto&& fn) {
    try {
      return fn();
    } catch (const BuildError&) {
      throw;
    } catch (const std::exception& e) {
      throw BuildError(name, e.what());
    }
  };
  stage("parameters", [&] {
    p.validate();
    s.validate();
    if (!(grid.I_min > 0 && grid.I_min < s.I_t && s.I_t < grid.I_max))
      throw ArgumentError("grid requires 0 < I_min < I_t < I_max");
    return 0;
  });
  const CriticalPoint crit = stage("critical", [&] { return find_critical(p); });
  const TriplePoint triple = stage("triple-point", [&] { return find_triple_point(p, s, tol); });
  BoundaryCurve id = stage("increase-decrease",
                           [&] { return trace_increase_decrease(p, s.I_t, grid.n_increase_decrease, tol, parallel); });
  BoundaryCurve bc =
      stage("boom-crisis", [&] { return trace_boom_crisis(p, s, triple, grid.I_min, grid.n_boom_crisis, tol); });
  BoundaryCurve rr = stage("recovery-recession",
                           [&] { return trace_recovery_recession(p, s, triple, grid.I_max, grid.n_recovery_recession, tol); });
  PhaseDiagram diagram(p, s, grid, tol, crit, triple, std::move(bc), std::move(rr), std::move(id));
  stage("validation", [&] {
    diagram.validate();
    return 0;
  });
  return diagram;
}

}  // namespace roegen
