#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "fixtures.hpp"
#include "roegen/roegen.hpp"

using namespace roegen;

namespace {

const std::string kBoom = "economic boom (inflation to income)";
const std::string kCrisis = "crisis (income to inflation)";
const std::string kIncreasing = "economic increasing (monetary policy of liquidity to income)";
const std::string kDecreasing = "economic decreasing (income to monetary policy of liquidity)";
const std::string kRecovery = "recovery (inflation to monetary policy of liquidity)";
const std::string kRecession = "recession (monetary policy of liquidity to inflation)";

// Six segments, one crossing of each curve.
const std::vector<DiagramPoint> kTour{{0.4, 0.01}, {0.4, 0.1}, {0.5, 0.3}, {0.8, 0.5},
                                      {0.8, 0.3},  {0.6, 0.02}, {0.45, 0.01}};

}  // namespace

TEST(DirectionReading, NamedTable) {
  EXPECT_EQ(direction_reading(Phase::Liquidity, Phase::Income), kIncreasing);
  EXPECT_EQ(direction_reading(Phase::Income, Phase::Liquidity), kDecreasing);
  EXPECT_EQ(direction_reading(Phase::Inflation, Phase::Income), kBoom);
  EXPECT_EQ(direction_reading(Phase::Income, Phase::Inflation), kCrisis);
  EXPECT_EQ(direction_reading(Phase::Inflation, Phase::Liquidity), kRecovery);
  EXPECT_EQ(direction_reading(Phase::Liquidity, Phase::Inflation), kRecession);
  EXPECT_THROW(direction_reading(Phase::Income, Phase::Supercritical), ArgumentError);
}

TEST(Simulate, PathInsideIncomeHasNoEvents) {
  const auto& d = fixtures::default_diagram();
  const std::vector<DiagramPoint> path{{0.7, 0.05}, {0.9, 0.1}, {1.1, 0.2}, {1.2, 0.5}};
  const auto r = simulate(d, path);
  EXPECT_TRUE(r.events.empty());
  for (const auto& l : r.labels) EXPECT_EQ(l.label(), "Income");
  EXPECT_FALSE(r.second_law);
}

TEST(Simulate, VerticalIncomeToLiquidity) {
  const auto& d = fixtures::default_diagram();
  const std::vector<DiagramPoint> path{{0.8, 0.3}, {0.8, 0.5}};
  const auto r = simulate(d, path);
  ASSERT_EQ(r.events.size(), 1u);
  EXPECT_EQ(r.events[0].curve, CurveKind::IncreaseDecrease);
  EXPECT_EQ(r.events[0].reading, kDecreasing);
  EXPECT_EQ(r.events[0].direction, CrossingDirection::Backward);
  EXPECT_EQ(r.events[0].segment_index, 0u);
  EXPECT_NEAR(r.events[0].location.I, 0.8, 1e-15);
  EXPECT_LE(std::abs(r.events[0].location.P - d.saturation_price(0.8)), 1e-8);
}

TEST(Simulate, DownwardAcrossBoomCrisis) {
  const auto& d = fixtures::default_diagram();
  const std::vector<DiagramPoint> path{{0.4, 0.2}, {0.4, 0.005}};
  const auto r = simulate(d, path);
  ASSERT_EQ(r.events.size(), 1u);
  EXPECT_EQ(r.events[0].curve, CurveKind::BoomCrisis);
  EXPECT_EQ(r.events[0].reading, kBoom);
  EXPECT_LE(std::abs(r.events[0].location.P - d.sublimation_price(0.4)), 1e-8);
}

TEST(Simulate, TourCrossesEachCurveOnce) {
  const auto& d = fixtures::default_diagram();
  const auto r = simulate(d, kTour);
  ASSERT_EQ(r.events.size(), 3u);
  EXPECT_EQ(r.events[0].curve, CurveKind::BoomCrisis);
  EXPECT_EQ(r.events[0].reading, kCrisis);
  EXPECT_EQ(r.events[0].segment_index, 0u);
  EXPECT_EQ(r.events[1].curve, CurveKind::RecoveryRecession);
  EXPECT_EQ(r.events[1].reading, kRecovery);
  EXPECT_EQ(r.events[1].segment_index, 2u);
  EXPECT_EQ(r.events[2].curve, CurveKind::IncreaseDecrease);
  EXPECT_EQ(r.events[2].reading, kIncreasing);
  EXPECT_EQ(r.events[2].segment_index, 3u);
  for (const auto& e : r.events)
    EXPECT_LE(std::abs(e.location.P - d.curve_price(e.curve, e.location.I)), 1e-8) << to_string(e.curve);
  ASSERT_EQ(r.labels.size(), kTour.size());
  const std::vector<std::string> expected{"Income", "Inflation", "Inflation", "Liquidity", "Income", "Income", "Income"};
  for (std::size_t i = 0; i < kTour.size(); ++i) EXPECT_EQ(r.labels[i].label(), expected[i]) << i;
}

TEST(Simulate, ReversalSymmetry) {
  const auto& d = fixtures::default_diagram();
  auto reversed = kTour;
  std::reverse(reversed.begin(), reversed.end());
  const auto fwd = simulate(d, kTour);
  const auto back = simulate(d, reversed);
  ASSERT_EQ(fwd.events.size(), back.events.size());
  const std::size_t n = fwd.events.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& f = fwd.events[i];
    const auto& b = back.events[n - 1 - i];
    EXPECT_EQ(f.curve, b.curve);
    EXPECT_EQ(f.from, b.to);
    EXPECT_EQ(f.to, b.from);
    EXPECT_NE(f.direction, b.direction);
    EXPECT_EQ(b.segment_index, kTour.size() - 2 - f.segment_index);
    EXPECT_NEAR(f.location.I, b.location.I, 1e-12);
    EXPECT_NEAR(f.location.P, b.location.P, 1e-12);
  }
}

TEST(Simulate, LoopAvoidingTriplePointHasZeroNetCrossings) {
  const auto& d = fixtures::default_diagram();
  const std::vector<std::vector<DiagramPoint>> loops{
      {{0.7, 0.1}, {0.7, 0.6}, {0.9, 0.6}, {0.9, 0.3}, {0.7, 0.1}},
      {{0.6, 0.02}, {0.6, 3.5}, {0.8, 3.5}, {0.8, 0.2}, {0.6, 0.02}},
  };
  for (const auto& loop : loops) {
    const auto r = simulate(d, loop);
    EXPECT_FALSE(r.events.empty());
    EXPECT_EQ(r.labels.front().label(), r.labels.back().label());
    std::map<CurveKind, int> net, count;
    for (const auto& e : r.events) {
      ++count[e.curve];
      net[e.curve] += e.direction == CrossingDirection::Forward ? 1 : -1;
    }
    for (const auto& [k, n] : count) EXPECT_EQ(n % 2, 0) << to_string(k);
    for (const auto& [k, n] : net) EXPECT_EQ(n, 0) << to_string(k);
  }
}

TEST(Simulate, LoopAroundTriplePointCrossesEachCurveOnceInOneSense) {
  const auto& d = fixtures::default_diagram();
  auto loop = kTour;
  loop.push_back(loop.front());
  const auto r = simulate(d, loop);
  EXPECT_EQ(r.labels.front().label(), r.labels.back().label());
  std::map<CurveKind, int> count;
  for (const auto& e : r.events) ++count[e.curve];
  ASSERT_EQ(count.size(), 3u);
  for (const auto& [k, n] : count) EXPECT_EQ(n, 1) << to_string(k);
  // a cyclic walk through the three regions: each event leaves the region the previous one entered
  for (std::size_t i = 0; i < r.events.size(); ++i)
    EXPECT_EQ(r.events[i].to, r.events[(i + 1) % r.events.size()].from) << i;
}

TEST(Simulate, LabelsConstantBetweenEvents) {
  const auto& d = fixtures::default_diagram();
  const auto r = simulate(d, kTour);
  for (std::size_t i = 1; i < kTour.size(); ++i) {
    const bool crossed = std::any_of(r.events.begin(), r.events.end(),
                                     [&](const auto& e) { return e.segment_index == i - 1; });
    if (!crossed) {
      EXPECT_EQ(r.labels[i].label(), r.labels[i - 1].label()) << i;
    }
  }
}

TEST(Simulate, OutOfRangeSampleNamesIndex) {
  const auto& d = fixtures::default_diagram();
  const std::vector<DiagramPoint> path{{0.5, 0.1}, {0.6, 0.1}, {1.5, 0.1}};
  try {
    simulate(d, path);
    FAIL();
  } catch (const RangeError& e) {
    EXPECT_NE(std::string(e.what()).find("sample 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(simulate(d, std::vector<DiagramPoint>{{0.5, 0.1}}), ArgumentError);
}

TEST(Simulate, SecondLawFromStates) {
  const auto& d = fixtures::default_diagram();
  QuasiStaticPath states;
  for (const auto& p : kTour) states.samples.push_back({p.I, 1.0 + p.P, {}});
  const auto r = simulate(d, kTour, states);
  ASSERT_TRUE(r.second_law);
  EXPECT_EQ(*r.second_law, SecondLawVerdict::ReversibleEquality);
}

TEST(DetectCrossing, SameRegionGivesNothing) {
  const auto& d = fixtures::default_diagram();
  EXPECT_TRUE(detect_crossing(d, {0.7, 0.05}, {0.9, 0.1}).empty());
  // both endpoints in liquidity
  EXPECT_TRUE(detect_crossing(d, {0.7, 0.3}, {0.7, 0.35}).empty());
}

TEST(DetectCrossing, StraddlingMeltingCurve) {
  const auto& d = fixtures::default_diagram();
  const auto ev = detect_crossing(d, {0.6, 0.5}, {0.7, 3.0});
  ASSERT_EQ(ev.size(), 1u);
  EXPECT_EQ(ev[0].curve, CurveKind::RecoveryRecession);
  EXPECT_EQ(ev[0].reading, kRecession);
  const auto& s = d.solid();
  const double P_melt = d.triple().P + (s.L_melt / s.dQ_melt) * std::log(ev[0].location.I / s.I_t);
  EXPECT_LE(std::abs(ev[0].location.P - P_melt), 1e-8);
}

TEST(DetectCrossing, ThroughTriplePointReportsAllCurves) {
  const auto& d = fixtures::default_diagram();
  const auto& t = d.triple();
  const auto ev = detect_crossing(d, {t.I - 0.05, t.P + 0.04}, {t.I + 0.05, t.P - 0.04});
  ASSERT_EQ(ev.size(), 3u);
  std::set<CurveKind> curves;
  for (const auto& e : ev) {
    curves.insert(e.curve);
    EXPECT_EQ(e.location, (DiagramPoint{t.I, t.P}));
  }
  EXPECT_EQ(curves.size(), 3u);
  EXPECT_EQ(ev.front().from, Phase::Inflation);
  EXPECT_EQ(ev.back().to, Phase::Income);
}

TEST(DetectCrossing, SupercriticalContinuationIsNotAnEvent) {
  const auto& d = fixtures::default_diagram();
  // Liquidity to Supercritical by passing right of the critical point
  EXPECT_TRUE(detect_crossing(d, {0.95, 0.95}, {1.1, 1.2}).empty());
  // Income to Supercritical above I_c is not a named curve either
  EXPECT_TRUE(detect_crossing(d, {1.1, 0.5}, {1.1, 1.5}).empty());
}
