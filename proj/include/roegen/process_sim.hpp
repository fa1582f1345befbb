#pragma once

/// \file
/// Quasi-static paths through the I-P diagram: per-sample phase labels and
/// the named curve crossings between them.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "roegen/classify.hpp"
#include "roegen/core_model.hpp"
#include "roegen/phase_equilibrium.hpp"
#include "roegen/potentials.hpp"

namespace roegen {

enum class CrossingDirection { Forward, Backward };

/// Economic reading of a crossing from one phase into another.
///
/// Forward readings: liquidity -> income "economic increasing",
/// inflation -> income "economic boom", inflation -> liquidity "recovery".
inline std::string direction_reading(Phase from, Phase to) {
  using enum Phase;
  if (from == Liquidity && to == Income) return "economic increasing (monetary policy of liquidity to income)";
  if (from == Income && to == Liquidity) return "economic decreasing (income to monetary policy of liquidity)";
  if (from == Inflation && to == Income) return "economic boom (inflation to income)";
  if (from == Income && to == Inflation) return "crisis (income to inflation)";
  if (from == Inflation && to == Liquidity) return "recovery (inflation to monetary policy of liquidity)";
  if (from == Liquidity && to == Inflation) return "recession (monetary policy of liquidity to inflation)";
  throw ArgumentError("no named crossing from " + std::string(to_string(from)) + " to " + std::string(to_string(to)));
}

struct TransitionEvent {
  CurveKind curve;
  Phase from;
  Phase to;
  CrossingDirection direction;
  std::string reading;
  DiagramPoint location;
  std::size_t segment_index;
};

inline TransitionEvent make_event(Phase from, Phase to, DiagramPoint at, std::size_t segment) {
  const CurveKind k = *curve_between(from, to);
  const auto dir = separated_phases(k).first == from ? CrossingDirection::Forward : CrossingDirection::Backward;
  return {k, from, to, dir, direction_reading(from, to), at, segment};
}

struct SimulationReport {
  std::vector<PointClass> labels;
  std::vector<TransitionEvent> events;
  std::optional<SecondLawVerdict> second_law;
};

namespace detail {

struct RawTransition {
  double s;
  Phase from;
  Phase to;
};

class SegmentScan {
 public:
  SegmentScan(const PhaseDiagram& d, DiagramPoint a, DiagramPoint b) : d_(d), a_(a), b_(b) {}

  DiagramPoint at(double s) const { return {a_.I + (b_.I - a_.I) * s, a_.P + (b_.P - a_.P) * s}; }

  Phase region(double s) const {
    const DiagramPoint p = at(s);
    return region_of(d_, p.I, p.P);
  }

  void locate(double lo, Phase r_lo, double hi, Phase r_hi, std::vector<RawTransition>& out) const {
    for (;;) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) {
        out.push_back({hi, r_lo, r_hi});
        return;
      }
      const Phase r_mid = region(mid);
      if (r_mid == r_lo) {
        lo = mid;
      } else if (r_mid == r_hi) {
        hi = mid;
        r_hi = r_mid;
      } else {
        locate(lo, r_lo, mid, r_mid, out);
        lo = mid;
        r_lo = r_mid;
      }
    }
  }

 private:
  const PhaseDiagram& d_;
  DiagramPoint a_;
  DiagramPoint b_;
};

inline bool near_point(DiagramPoint p, double I, double P, double tol) {
  return std::abs(p.I - I) <= tol * std::max(1.0, std::abs(I)) && std::abs(p.P - P) <= tol * std::max(1.0, std::abs(P));
}

inline constexpr std::size_t kSegmentProbes = 64;
inline constexpr double kTripleProximity = 1e-9;

}  // namespace detail

/// Named curve crossings on one polyline segment, in path order. Empty when
/// both endpoints share a region. A crossing within 1e-9 of the triple
/// point is reported on all three curves.
inline std::vector<TransitionEvent> detect_crossing(const PhaseDiagram& d, DiagramPoint a, DiagramPoint b,
                                                    std::size_t segment_index = 0) {
  d.check_range(a.I);
  d.check_range(b.I);
  detail::SegmentScan scan(d, a, b);
  const Phase r_a = scan.region(0.0);
  const Phase r_b = scan.region(1.0);
  std::vector<TransitionEvent> events;
  if (r_a == r_b) return events;

  std::vector<detail::RawTransition> raw;
  double s_prev = 0.0;
  Phase r_prev = r_a;
  for (std::size_t k = 1; k <= detail::kSegmentProbes; ++k) {
    const double s = static_cast<double>(k) / static_cast<double>(detail::kSegmentProbes);
    const Phase r = k == detail::kSegmentProbes ? r_b : scan.region(s);
    if (r != r_prev) scan.locate(s_prev, r_prev, s, r, raw);
    s_prev = s;
    r_prev = r;
  }

  const auto& t = d.triple();
  const double tol = d.tolerances().boundary;
  std::optional<Phase> triple_from;
  Phase triple_to = r_a;
  bool triple_emitted = false;

  auto flush_triple = [&] {
    if (!triple_from || triple_emitted) return;
    triple_emitted = true;
    const Phase from = *triple_from;
    const Phase to = triple_to;
    if (from == to || from == Phase::Supercritical || to == Phase::Supercritical) return;
    Phase third = Phase::Inflation;
    for (Phase p : {Phase::Inflation, Phase::Liquidity, Phase::Income})
      if (p != from && p != to) third = p;
    const DiagramPoint at{t.I, t.P};
    events.push_back(make_event(from, third, at, segment_index));
    events.push_back(make_event(from, to, at, segment_index));
    events.push_back(make_event(third, to, at, segment_index));
  };

  for (const auto& tr : raw) {
    const DiagramPoint loc = scan.at(tr.s);
    if (detail::near_point(loc, t.I, t.P, detail::kTripleProximity)) {
      if (!triple_from) triple_from = tr.from;
      triple_to = tr.to;
      continue;
    }
    flush_triple();
    const auto curve = curve_between(tr.from, tr.to);
    if (!curve) continue;  // supercritical continuation, no named curve
    // transitions across the I = I_c line are not curve crossings
    if (!detail::near(loc.P, d.curve_price(*curve, loc.I), std::max(tol, 1e-12))) continue;
    events.push_back(make_event(tr.from, tr.to, loc, segment_index));
  }
  flush_triple();
  return events;
}

/// Labels every sample and collects the crossings of each segment.
inline SimulationReport simulate(const PhaseDiagram& d, std::span<const DiagramPoint> path) {
  if (path.size() < 2) throw ArgumentError("simulation path needs at least 2 samples");
  for (std::size_t i = 0; i < path.size(); ++i) {
    try {
      d.check_range(path[i].I);
    } catch (const RangeError& e) {
      throw RangeError("path sample " + std::to_string(i) + ": " + e.what());
    }
  }
  SimulationReport report;
  for (const auto& p : path) report.labels.push_back(classify_phase(p, d));
  for (std::size_t i = 1; i < path.size(); ++i) {
    auto ev = detect_crossing(d, path[i - 1], path[i], i - 1);
    report.events.insert(report.events.end(), ev.begin(), ev.end());
  }
  return report;
}

/// As above, adding the second-law verdict of an accompanying (I, Q) path.
inline SimulationReport simulate(const PhaseDiagram& d, std::span<const DiagramPoint> path,
                                 const QuasiStaticPath& states) {
  SimulationReport report = simulate(d, path);
  report.second_law = second_law_check(d.params(), states);
  return report;
}

}  // namespace roegen
