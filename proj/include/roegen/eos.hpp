#pragma once

/// \file
/// Economic equations of state: the Van der Waals price-level surface
/// P(I, Q) and its ideal reference model, with closed-form derivatives,
/// isotherm sampling and volume-root solving.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "roegen/errors.hpp"

namespace roegen {

enum class EosKind { VanDerWaals, Ideal };

/// Parameters of the price-level equation of state and the entropy model.
///
/// VanDerWaals:  P = R*I/(Q - b) - a/Q^2
/// Ideal:        P = R*I/Q
struct EosParams {
  EosKind kind = EosKind::VanDerWaals;
  double a = 3.0;        ///< attraction coefficient
  double b = 1.0 / 3.0;  ///< excluded-volume floor
  double R = 8.0 / 3.0;  ///< stability-price coupling
  double c = 1.5;        ///< entropy degrees-of-freedom coefficient

  /// Canonical reduced parameters; critical point at (I, P, Q) = (1, 1, 1).
  static EosParams reduced() { return van_der_waals(3.0, 1.0 / 3.0, 8.0 / 3.0, 1.5); }

  static EosParams van_der_waals(double a, double b, double R, double c = 1.5) {
    EosParams p{EosKind::VanDerWaals, a, b, R, c};
    p.validate();
    return p;
  }

  static EosParams ideal(double R, double c = 1.5) {
    EosParams p{EosKind::Ideal, 0.0, 0.0, R, c};
    p.validate();
    return p;
  }

  void validate() const {
    auto finite = [](double x) { return std::isfinite(x); };
    if (!finite(a) || !finite(b) || !finite(R) || !finite(c))
      throw ArgumentError("equation-of-state parameters must be finite");
    if (!(R > 0)) throw ArgumentError("R must be > 0");
    if (!(c > 0)) throw ArgumentError("c must be > 0");
    if (kind == EosKind::VanDerWaals) {
      if (!(a > 0)) throw ArgumentError("VanDerWaals requires a > 0");
      if (!(b > 0)) throw ArgumentError("VanDerWaals requires b > 0");
    } else if (a != 0.0 || b != 0.0) {
      throw ArgumentError("Ideal model requires a = 0 and b = 0");
    }
  }

  bool is_van_der_waals() const { return kind == EosKind::VanDerWaals; }

  friend bool operator==(const EosParams&, const EosParams&) = default;
};

inline const char* to_string(EosKind k) { return k == EosKind::VanDerWaals ? "VanDerWaals" : "Ideal"; }

namespace detail {

inline void check_state(const EosParams& p, double I, double Q) {
  if (!(I > 0) || !std::isfinite(I))
    throw DomainError("stability I must be finite and > 0 (got " + std::to_string(I) + ")");
  if (!(Q > p.b) || !std::isfinite(Q))
    throw DomainError("volume Q must exceed the floor b = " + std::to_string(p.b) +
                      " (got " + std::to_string(Q) + ")");
}

}  // namespace detail

inline double price_level(const EosParams& p, double I, double Q) {
  detail::check_state(p, I, Q);
  if (p.kind == EosKind::Ideal) return p.R * I / Q;
  return p.R * I / (Q - p.b) - p.a / (Q * Q);
}

struct PriceDerivatives {
  double dP_dQ;    ///< at fixed I
  double d2P_dQ2;  ///< at fixed I
  double dP_dI;    ///< at fixed Q
};

inline PriceDerivatives price_level_derivatives(const EosParams& p, double I, double Q) {
  detail::check_state(p, I, Q);
  if (p.kind == EosKind::Ideal) {
    return {-p.R * I / (Q * Q), 2.0 * p.R * I / (Q * Q * Q), p.R / Q};
  }
  const double d = Q - p.b;
  return {-p.R * I / (d * d) + 2.0 * p.a / (Q * Q * Q),
          2.0 * p.R * I / (d * d * d) - 6.0 * p.a / (Q * Q * Q * Q),
          p.R / d};
}

struct IsothermSample {
  double Q;
  double P;
};

/// n samples of P(I, .) at uniform Q spacing on [q_min, q_max].
inline std::vector<IsothermSample> isotherm(const EosParams& p, double I, double q_min, double q_max,
                                            std::size_t n) {
  if (n < 2) throw ArgumentError("isotherm needs n >= 2 samples");
  if (!(q_min > p.b)) throw DomainError("isotherm q_min must exceed the floor b = " + std::to_string(p.b));
  if (!(q_max > q_min)) throw ArgumentError("isotherm requires q_min < q_max");
  std::vector<IsothermSample> out;
  out.reserve(n);
  const double step = (q_max - q_min) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double Q = i + 1 == n ? q_max : q_min + step * static_cast<double>(i);
    out.push_back({Q, price_level(p, I, Q)});
  }
  return out;
}

// ---- cubic roots --------------------------------------------------------

/// Roots of c3*x^3 + c2*x^2 + c1*x + c0 (c3 != 0) by the closed form.
struct CubicRoots {
  std::vector<double> real;  ///< unsorted real roots
  /// Real part of the complex-conjugate pair, when there is one.
  std::optional<double> pair_real_part;
};

inline CubicRoots cubic_roots(double c3, double c2, double c1, double c0) {
  const double A = c2 / c3, B = c1 / c3, C = c0 / c3;
  const double shift = A / 3.0;
  const double p = B - A * A / 3.0;
  const double q = 2.0 * A * A * A / 27.0 - A * B / 3.0 + C;
  const double disc = (q / 2.0) * (q / 2.0) + (p / 3.0) * (p / 3.0) * (p / 3.0);

  CubicRoots out;
  if (disc > 0) {
    const double s = std::sqrt(disc);
    const double u = std::cbrt(-q / 2.0 + s);
    const double v = std::cbrt(-q / 2.0 - s);
    out.real.push_back(u + v - shift);
    out.pair_real_part = -(u + v) / 2.0 - shift;
  } else if (p == 0.0) {
    out.real.assign(3, std::cbrt(-q) - shift);
  } else {
    const double r = std::sqrt(-p / 3.0);
    const double arg = std::clamp(-q / (2.0 * r * r * r), -1.0, 1.0);
    const double phi = std::acos(arg);
    for (int k = 0; k < 3; ++k)
      out.real.push_back(2.0 * r * std::cos((phi - 2.0 * std::numbers::pi * k) / 3.0) - shift);
  }
  return out;
}

// ---- volume roots -------------------------------------------------------

/// A root of P(I, Q) = P_target. Coalesced roots (near the critical point)
/// are reported once with their multiplicity.
struct VolumeRoot {
  double Q;
  int multiplicity = 1;
};

namespace detail {

inline double polish_volume(const EosParams& p, double I, double P, double Q) {
  double best = Q;
  double best_res = std::abs(price_level(p, I, Q) - P);
  for (int it = 0; it < 60 && best_res > 0; ++it) {
    const double f = price_level(p, I, Q) - P;
    const double df = price_level_derivatives(p, I, Q).dP_dQ;
    if (df == 0.0 || !std::isfinite(df)) break;
    double next = Q - f / df;
    // stay in the physical domain
    if (!(next > p.b)) next = p.b + 0.5 * (Q - p.b);
    const double res = std::abs(price_level(p, I, next) - P);
    if (res < best_res) {
      best = next;
      best_res = res;
    } else if (it > 3) {
      break;
    }
    if (next == Q) break;
    Q = next;
  }
  return best;
}

}  // namespace detail

/// All real roots Q > b of price_level(I, Q) = P, ascending.
///
/// Each root is Newton-polished to |P(Q) - P| <= residual_tol * max(1, P).
/// Adjacent roots closer than 1e-9, or whose midpoint is itself a root to
/// within the residual bound, are merged into one root with multiplicity.
inline std::vector<VolumeRoot> solve_volume(const EosParams& p, double I, double P,
                                            double residual_tol = 1e-12) {
  if (!(I > 0)) throw ArgumentError("solve_volume requires I > 0");
  if (!(P > 0)) throw ArgumentError("solve_volume requires P > 0");
  const double tol = residual_tol * std::max(1.0, P);

  if (p.kind == EosKind::Ideal) return {{p.R * I / P, 1}};

  // P Q^3 - (P b + R I) Q^2 + a Q - a b = 0
  const CubicRoots cubic = cubic_roots(P, -(P * p.b + p.R * I), p.a, -p.a * p.b);
  std::vector<double> roots;
  for (double q : cubic.real) {
    if (!std::isfinite(q) || !(q > p.b)) continue;
    roots.push_back(detail::polish_volume(p, I, P, q));
  }
  // a conjugate pair indistinguishable from a real double root
  if (cubic.pair_real_part && *cubic.pair_real_part > p.b &&
      std::abs(price_level(p, I, *cubic.pair_real_part) - P) <= tol) {
    roots.insert(roots.end(), 2, *cubic.pair_real_part);
  }
  std::sort(roots.begin(), roots.end());

  std::vector<VolumeRoot> out;
  std::vector<double> members;
  auto flush = [&] {
    if (members.empty()) return;
    double sum = 0;
    for (double m : members) sum += m;
    out.push_back({sum / static_cast<double>(members.size()), static_cast<int>(members.size())});
    members.clear();
  };
  for (double q : roots) {
    if (!members.empty()) {
      const double prev = members.back();
      const double mid = 0.5 * (prev + q);
      const bool close = std::abs(q - prev) <= 1e-9;
      const bool flat = std::abs(price_level(p, I, mid) - P) <= tol;
      if (!close && !flat) flush();
    }
    members.push_back(q);
  }
  flush();

  std::vector<VolumeRoot> accepted;
  for (const VolumeRoot& r : out) {
    if (std::abs(price_level(p, I, r.Q) - P) <= tol) accepted.push_back(r);
  }
  return accepted;
}

}  // namespace roegen
