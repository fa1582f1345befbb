#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "roegen/roegen.hpp"

using namespace roegen;

namespace {

const EosParams kReduced = EosParams::reduced();

QuasiStaticPath line(double I0, double Q0, double I1, double Q1, std::size_t K) {
  QuasiStaticPath p;
  for (std::size_t i = 0; i <= K; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(K);
    p.samples.push_back({I0 + (I1 - I0) * t, Q0 + (Q1 - Q0) * t, {}});
  }
  return p;
}

QuasiStaticPath rectangle_loop() {
  QuasiStaticPath p;
  for (auto [I, Q] : {std::pair{0.8, 1.5}, {0.9, 1.5}, {0.9, 2.0}, {0.8, 2.0}, {0.8, 1.5}}) p.samples.push_back({I, Q, {}});
  return p;
}

}  // namespace

TEST(Entropy, ClassicalValues) {
  // R = 1, c = 1.5, b = 0 is the ideal model
  const auto p = EosParams::ideal(1.0, 1.5);
  EXPECT_DOUBLE_EQ(entropy(p, 1, 1), 0.0);
  EXPECT_DOUBLE_EQ(entropy(p, 1, std::exp(1.0)), 1.0);
  EXPECT_DOUBLE_EQ(entropy(p, std::exp(2.0), 1), 3.0);
  EXPECT_DOUBLE_EQ(entropy(p, 1, 1, {0.25, 0}), 0.25);
  EXPECT_THROW(entropy(kReduced, 1, 0.2), DomainError);
}

TEST(GrowthEnergy, ClassicalValues) {
  EXPECT_DOUBLE_EQ(growth_energy(kReduced, 1, 1), 1.0);
  EXPECT_DOUBLE_EQ(growth_energy(kReduced, 0.5, 3), 1.0);
  const auto ideal = EosParams::ideal(1.0, 1.5);
  for (double Q : {0.1, 1.0, 7.0}) EXPECT_DOUBLE_EQ(growth_energy(ideal, 2, Q), 3.0);
}

TEST(ExchangePotential, Definition) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uI(0.2, 2.0), uQ(0.4, 6.0);
  for (int i = 0; i < 100; ++i) {
    const double I = uI(rng), Q = uQ(rng);
    const double g = growth_energy(kReduced, I, Q) - I * entropy(kReduced, I, Q) + price_level(kReduced, I, Q) * Q;
    EXPECT_NEAR(exchange_potential(kReduced, I, Q), g, 1e-12 * std::max(1.0, std::abs(g)));
  }
  EXPECT_DOUBLE_EQ(exchange_potential(kReduced, 1, 1), growth_energy(kReduced, 1, 1) - entropy(kReduced, 1, 1) + 1);
}

TEST(ExchangePotential, EqualAcrossMaxwellBranches) {
  const auto pt = maxwell_construction(kReduced, 0.9);
  const double a = exchange_potential(kReduced, 0.9, pt.Q_low);
  const double b = exchange_potential(kReduced, 0.9, pt.Q_high);
  EXPECT_LE(std::abs(a - b), 1e-6 * std::max(1.0, std::abs(a)));
}

TEST(PotentialState, SectorTermsShiftGrowthEnergy) {
  const std::vector<Sector> sectors{{0.1}, {0.4}};
  const std::vector<double> counts{2.0, 0.5};
  const auto s = potential_state(kReduced, 0.9, 1.4, {}, sectors, counts);
  EXPECT_NEAR(s.U_g, growth_energy(kReduced, 0.9, 1.4) - 0.1 * 2.0 - 0.4 * 0.5, 1e-15);
  EXPECT_THROW(potential_state(kReduced, 0.9, 1.4, {}, sectors, std::vector<double>{1.0}), ArgumentError);
}

TEST(MaxwellRelation, EntropySlopeEqualsPriceSlope) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uI(0.3, 2.0), uQ(0.4, 6.0);
  for (int i = 0; i < 100; ++i) {
    const double I = uI(rng), Q = uQ(rng);
    const double exact = kReduced.R / (Q - kReduced.b);
    const double dE_dQ = (entropy(kReduced, I, Q + 1e-6) - entropy(kReduced, I, Q - 1e-6)) / 2e-6;
    const double dP_dI = (price_level(kReduced, I + 1e-6, Q) - price_level(kReduced, I - 1e-6, Q)) / 2e-6;
    EXPECT_LT(fixtures::rel_diff(dE_dQ, dP_dI), 1e-6);
    EXPECT_LT(fixtures::rel_diff(dE_dQ, exact), 1e-6);
    EXPECT_DOUBLE_EQ(entropy_dQ(kReduced, I, Q), exact);
    EXPECT_DOUBLE_EQ(price_level_derivatives(kReduced, I, Q).dP_dI, exact);
  }
}

TEST(PfaffLoop, RectangleResidualSmallAndSecondOrder) {
  const auto loop = rectangle_loop();
  const double r1 = pfaff_loop_residual(kReduced, loop, 2048);
  const double r2 = pfaff_loop_residual(kReduced, loop, 4096);
  EXPECT_LE(r1, 1e-6);
  EXPECT_GT(r1 / r2, 3.5);
  EXPECT_LT(r1 / r2, 4.5);
}

TEST(PfaffLoop, DegenerateAndReversed) {
  QuasiStaticPath point;
  point.samples = {{0.9, 1.5, {}}, {0.9, 1.5, {}}};
  EXPECT_EQ(pfaff_loop_residual(kReduced, point, 64), 0.0);
  auto loop = rectangle_loop();
  const double fwd = pfaff_loop_residual(kReduced, loop, 2048);
  std::reverse(loop.samples.begin(), loop.samples.end());
  EXPECT_NEAR(pfaff_loop_residual(kReduced, loop, 2048), fwd, 1e-15);
}

TEST(PfaffLoop, OpenPathRejected) {
  EXPECT_THROW(pfaff_loop_residual(kReduced, line(0.8, 1.5, 0.9, 2.0, 4), 64), ArgumentError);
}

TEST(GrowthEnergyChange, PathIndependence) {
  // two routes between (0.8, 1.5) and (0.95, 2.5)
  const double exact = growth_energy(kReduced, 0.95, 2.5) - growth_energy(kReduced, 0.8, 1.5);
  for (std::size_t K : {256, 512}) {
    QuasiStaticPath a = line(0.8, 1.5, 0.95, 1.5, K);
    auto a2 = line(0.95, 1.5, 0.95, 2.5, K);
    a.samples.insert(a.samples.end(), a2.samples.begin() + 1, a2.samples.end());
    QuasiStaticPath b = line(0.8, 1.5, 0.8, 2.5, K);
    auto b2 = line(0.8, 2.5, 0.95, 2.5, K);
    b.samples.insert(b.samples.end(), b2.samples.begin() + 1, b2.samples.end());
    const double da = growth_energy_change(kReduced, a), db = growth_energy_change(kReduced, b);
    const double bound = 10.0 / static_cast<double>(K * K);
    EXPECT_NEAR(da, exact, bound) << K;
    EXPECT_NEAR(db, exact, bound) << K;
  }
}

TEST(GrowthEnergyChange, SectorShiftIsAffine) {
  auto path = line(0.8, 1.5, 0.9, 2.0, 64);
  const double base = growth_energy_change(kReduced, path);
  const std::vector<Sector> sectors{{0.3}, {-0.2}};
  path.samples.front().N = {1.0, 4.0};
  path.samples.back().N = {2.5, 3.0};
  const double shifted = growth_energy_change(kReduced, path, sectors);
  EXPECT_NEAR(shifted - base, -(0.3 * 1.5 + -0.2 * -1.0), 1e-12);
}

TEST(Production, ConstantEntropyPathProducesNothing) {
  // hold E fixed: (Q - b) I^c constant
  QuasiStaticPath p;
  for (int i = 0; i <= 32; ++i) {
    const double I = 0.8 + 0.2 * i / 32.0;
    p.samples.push_back({I, kReduced.b + std::pow(0.8 / I, kReduced.c), {}});
  }
  EXPECT_NEAR(production_along_path(kReduced, p), 0.0, 1e-14);
}

TEST(Production, IsothermalIdealExpansion) {
  const auto ideal = EosParams::ideal(1.0, 2.0);
  auto p = line(1.0, 1.0, 1.0, std::exp(1.0), 10);
  EXPECT_NEAR(production_along_path(ideal, p), 1.0, 1e-14);
  p.reversible = false;
  p.dissipation = 1e-3;
  EXPECT_NEAR(production_along_path(ideal, p), 1.0 - 1e-2, 1e-14);
}

TEST(Production, LatentIdentityOnCoexistencePoints) {
  for (const auto& pt : fixtures::default_diagram().curve(CurveKind::IncreaseDecrease).coexistence) {
    if (pt.Q_high == pt.Q_low) continue;  // critical endpoint
    const double expected = pt.I * kReduced.R * std::log((pt.Q_high - kReduced.b) / (pt.Q_low - kReduced.b));
    EXPECT_LE(fixtures::rel_diff(pt.latent_q, expected), 1e-12) << pt.I;
  }
}

TEST(Wealth, ConstantVolumeWithoutFields) {
  EXPECT_EQ(wealth_along_path(kReduced, line(0.8, 1.5, 0.9, 1.5, 16)), 0.0);
}

TEST(Wealth, IdealIsothermMidpointRule) {
  const auto ideal = EosParams::ideal(1.0);
  EXPECT_NEAR(wealth_along_path(ideal, line(1, 1, 1, 2, 4096)), std::log(2.0), 1e-6);
}

TEST(Wealth, ConstantVolumeWithFieldsIsFieldWork) {
  const auto path = line(0.8, 1.5, 0.9, 1.5, 8);
  FieldPath f;
  for (int i = 0; i <= 8; ++i) f.samples.push_back({{0.1 * i, 0, 0}, {0, 0.05 * i, 0}});
  const FieldResponse r{2.0, 0.5};
  EXPECT_DOUBLE_EQ(wealth_along_path(kReduced, path, &f, r), field_work(f, r));
  f.samples.pop_back();
  EXPECT_THROW(wealth_along_path(kReduced, path, &f, r), ArgumentError);
}

TEST(SecondLaw, Verdicts) {
  auto p = line(0.8, 1.5, 0.95, 2.5, 32);
  EXPECT_EQ(second_law_check(kReduced, p), SecondLawVerdict::ReversibleEquality);
  p.reversible = false;
  for (double delta : {1e-20, 1e-9, 1e-3, 0.5}) {
    p.dissipation = delta;
    EXPECT_EQ(second_law_check(kReduced, p), SecondLawVerdict::IrreversibleStrict) << delta;
  }
  const auto b = production_breakdown(kReduced, p);
  EXPECT_EQ(judge_second_law(b.reversible + 1.0, b.reversible, 0.0), SecondLawVerdict::Violation);
  EXPECT_STREQ(to_string(SecondLawVerdict::ReversibleEquality), "reversible-equality");
  EXPECT_STREQ(to_string(SecondLawVerdict::IrreversibleStrict), "irreversible-strict");
}

TEST(ThirdLaw, ClassicalEntropyDiverges) {
  const std::vector<double> I_seq{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  const auto probe = third_law_probe(kReduced, I_seq, 2.0);
  EXPECT_EQ(probe.verdict, ThirdLawVerdict::ViolatedDiverges);
  EXPECT_STREQ(to_string(probe.verdict), "violated (diverges)");
  const double cR = kReduced.c * kReduced.R;
  EXPECT_LT(std::abs(probe.ln_I_coefficient - cR) / cR, 0.02);
  EXPECT_EQ(probe.table.size(), I_seq.size());
}

TEST(ThirdLaw, ZeroCapacityModelSatisfied) {
  // E = R ln(Q - b) + 0 * ln I + E0 with E0 = -R ln(Q - b)
  const double Q = 2.0;
  const double E0 = -kReduced.R * std::log(Q - kReduced.b);
  auto model = [&](double) { return kReduced.R * std::log(Q - kReduced.b) + E0; };
  const std::vector<double> I_seq{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  EXPECT_EQ(third_law_probe(model, std::span<const double>(I_seq)).verdict, ThirdLawVerdict::Satisfied);
}

TEST(ThirdLaw, NonzeroLimit) {
  auto model = [](double) { return 0.7; };
  const std::vector<double> I_seq{1e-1, 1e-2, 1e-3};
  EXPECT_EQ(third_law_probe(model, std::span<const double>(I_seq)).verdict, ThirdLawVerdict::ViolatedNonzeroLimit);
}

TEST(ThirdLaw, IncreasingSequenceRejected) {
  const std::vector<double> I_seq{1e-3, 1e-2};
  EXPECT_THROW(third_law_probe(kReduced, I_seq, 2.0), ArgumentError);
}
