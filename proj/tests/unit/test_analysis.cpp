#include <gtest/gtest.h>

#include <cmath>

#include "pblab/analysis.hpp"

using namespace pblab;

namespace {

CurvilinearAngle radius_angle(double r) { return CurvilinearAngle(canonical_curve(CurveKind::radius, 0.0, 0.0), r); }

ClusterRegion angle_region(const CurvilinearAngle& a, int level) {
  return {[a, level](DiskPoint z) { return angle_contains(a, z, level); }, {}};
}

}  // namespace

TEST(Trend, Verdicts) {
  EXPECT_EQ(trend_verdict({1.0, 2.0, 1.0, 1.01, 1.02}), TrendVerdict::bounded);
  EXPECT_EQ(trend_verdict({1.0, 2.0, 4.0, 8.0}), TrendVerdict::diverging);
  EXPECT_EQ(trend_verdict({1.0, 2.0, 3.0, 4.0}), TrendVerdict::inconclusive);
  EXPECT_EQ(trend_verdict({0.0, 0.0, 0.0}), TrendVerdict::bounded);
  EXPECT_EQ(trend_verdict({1.0, 1.0}), TrendVerdict::inconclusive);
}

TEST(Normality, IdentityAttainsOneAtTheOrigin) {
  const auto rep = normality_sup(identity_function(), radius_angle(0.5), 12);
  EXPECT_NEAR(rep.levels.back().sup, 1.0, 1e-12);
  EXPECT_EQ(rep.verdict, TrendVerdict::bounded);
  EXPECT_EQ(rep.failures, 0);
  for (std::size_t i = 1; i < rep.levels.size(); ++i) EXPECT_GE(rep.levels[i].sup, rep.levels[i - 1].sup);
}

TEST(Normality, AutomorphismBoundedByOne) {
  const auto rep = normality_sup(mobius_function(DiskPoint(0.3, 0.0)), radius_angle(0.5), 12);
  EXPECT_LE(rep.levels.back().sup, 1.0 + 1e-9);
  EXPECT_EQ(rep.verdict, TrendVerdict::bounded);
}

TEST(Normality, PoleSumIsBoundedInsideTheAngle) {
  const auto rep = normality_sup(example1_f0(Example1Schedule::make_default()), radius_angle(0.5), 14);
  EXPECT_EQ(rep.verdict, TrendVerdict::bounded);
}

TEST(Normality, SquareExpDiverges) {
  const auto rep = normality_sup(gallery("square_exp"), radius_angle(0.5), 14);
  EXPECT_EQ(rep.verdict, TrendVerdict::diverging);
}

TEST(Normality, RequiresFourLevels) {
  EXPECT_THROW(normality_sup(identity_function(), radius_angle(0.5), 3), DomainError);
}

TEST(Indicator, ConstantIsZero) {
  const auto seq = radial_sequence(0.0, 10);
  const auto t8 = p_indicator_t8(constant_function(2.0), seq);
  for (double v : t8.values) EXPECT_EQ(v, 0.0);
  EXPECT_FALSE(t8.positive);
  const auto t9 = p_indicator_t9(constant_function(2.0), seq, std::vector<double>(seq.size(), 0.5));
  for (double v : t9.values) EXPECT_EQ(v, 0.0);
}

TEST(Indicator, IdentityBoundedByOne) {
  const auto seq = radial_sequence(0.4, 12);
  const auto t9 = p_indicator_t9(identity_function(), seq, std::vector<double>(seq.size(), 1.0));
  for (double v : t9.values) EXPECT_LE(v, 1.0 + 1e-12);
  EXPECT_FALSE(t9.positive);
}

TEST(Indicator, PoleAdjacentPointsArePositive) {
  const auto s = Example1Schedule::make_default(5);
  std::vector<DiskPoint> seq;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double e = s.radii[k];
    seq.emplace_back(s.poles[k].value() + e * e * 1e-3);
  }
  const auto rep = p_indicator_t8(example1_f0(s), seq);
  EXPECT_TRUE(rep.positive);
}

TEST(Indicator, PoleSequenceDiverges) {
  const auto s = Example1Schedule::make_default();
  std::vector<double> radii;
  for (std::size_t k = 0; k < s.size(); ++k) radii.push_back(s.hyperbolic_diameter(k));
  const auto rep = p_indicator_t9(example1_f0(s), s.poles, radii);
  EXPECT_EQ(rep.trend, TrendVerdict::diverging);
  EXPECT_TRUE(rep.positive);
}

TEST(Indicator, GavrilovTrendIsRecorded) {
  const auto rep = p_indicator_t8(gallery("gavrilov_g"), radial_sequence(0.0, 8));
  EXPECT_EQ(rep.values.size(), 8u);
  EXPECT_EQ(rep.exceed_from.size(), 3u);
}

TEST(WitnessCheck, PoleSumWitnesses) {
  const auto s = Example1Schedule::make_default();
  std::vector<DiskPoint> a, b;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double e = s.radii[k];
    a.emplace_back(s.poles[k].value() + e * e * e);
    b.emplace_back(s.poles[k].value() + e);
  }
  const auto f = example1_f0(s);
  // Along a the pole term eps_k^2 / eps_k^3 blows up; along b the value stays small.
  const auto rep = theorem10_check(f, a, b, ExtendedComplex::infinity(), 0.5);
  EXPECT_TRUE(rep.values_converge);
  EXPECT_TRUE(rep.values_separated);
  EXPECT_TRUE(rep.points_merge);
  EXPECT_TRUE(rep.flagged());
  for (std::size_t k = s.size() / 2; k < s.size(); ++k) EXPECT_GT(rep.ds_b[k], 0.9);
}

TEST(WitnessCheck, NegativeCases) {
  const auto seq = radial_sequence(0.0, 10);
  const auto c = theorem10_check(constant_function(3.0), seq, seq, ExtendedComplex(3.0), 0.1);
  EXPECT_FALSE(c.values_separated);
  EXPECT_FALSE(c.flagged());
  const auto same = theorem10_check(identity_function(), seq, seq, ExtendedComplex(1.0), 0.1);
  EXPECT_FALSE(same.values_separated);
  EXPECT_THROW(theorem10_check(identity_function(), seq, radial_sequence(0.0, 5), 1.0, 0.1), DomainError);
}

TEST(Cluster, IdentityAlongTheRadius) {
  const auto a = radius_angle(0.3);
  const auto est = cluster_estimate(identity_function(), angle_region(a, 18), 0.0, 14, 3);
  ASSERT_TRUE(est.limit_candidate.has_value());
  EXPECT_LT(spherical_distance(*est.limit_candidate, 1.0), 1e-3);
  for (std::size_t i = 1; i < est.shells.size(); ++i) EXPECT_LT(est.shells[i].diameter, est.shells[i - 1].diameter);
}

TEST(Cluster, ProductFunctionTendsToZero) {
  const auto est = cluster_estimate(example2_f1(Example1Schedule::make_default()), angle_region(radius_angle(0.3), 18),
                                    0.0, 14, 3);
  ASSERT_TRUE(est.limit_candidate.has_value());
  EXPECT_LT(spherical_distance(*est.limit_candidate, 0.0), 1e-3);
}

TEST(Cluster, PoleAtomsAddInfinity) {
  // Enough pairs that poles reach the last shells.
  const auto s = Example1Schedule::make_default(16);
  auto region = angle_region(radius_angle(0.3), 18);
  region.atoms = s.poles;
  const auto est = cluster_estimate(example2_f1(s), region, 0.0, 14, 3);
  EXPECT_FALSE(est.limit_candidate.has_value());
  int both = 0;
  for (const auto& sh : est.shells) {
    bool zero = false, inf = false;
    for (const auto& v : sh.values) {
      zero = zero || spherical_distance(v, 0.0) < 1e-2;
      inf = inf || spherical_distance(v, ExtendedComplex::infinity()) < 1e-2;
    }
    both += zero && inf;
  }
  EXPECT_GE(both, 2);
}

TEST(Cluster, EmptyRegionIsInconclusive) {
  const ClusterRegion nothing{[](DiskPoint) { return false; }, {}};
  const auto est = cluster_estimate(identity_function(), nothing, 0.0, 6, 1);
  EXPECT_TRUE(est.inconclusive);
  EXPECT_FALSE(est.limit_candidate.has_value());
}

TEST(Family, Examples) {
  const auto w = radial_sequence(0.0, 16);
  const auto c = renormalized_family_check(constant_function(Complex{0.2, 0.1}), w, 0.5, Complex{0.2, 0.1});
  for (double v : c.sup_ds) EXPECT_EQ(v, 0.0);
  const auto id = renormalized_family_check(identity_function(), w, 0.9, 1.0);
  EXPECT_TRUE(id.converges);
  for (std::size_t i = 1; i < id.sup_ds.size(); ++i) EXPECT_LT(id.sup_ds[i], id.sup_ds[i - 1]);
  const auto f1 = renormalized_family_check(example2_f1(Example1Schedule::make_default()), w, 0.5, 0.0);
  EXPECT_TRUE(f1.converges);
  EXPECT_THROW(renormalized_family_check(identity_function(), w, 1.0, 1.0), DomainError);
}
