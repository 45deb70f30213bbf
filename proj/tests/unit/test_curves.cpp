#include <gtest/gtest.h>

#include <cmath>

#include "pblab/curves.hpp"
#include "pblab/random.hpp"

using namespace pblab;

TEST(Refinement, TruncationAndPrefix) {
  for (CurveKind kind : {CurveKind::radius, CurveKind::chord, CurveKind::hypercycle, CurveKind::horocycle}) {
    const auto c = canonical_curve(kind, 0.7, default_curve_parameter(kind));
    auto prev = c.refine(3);
    for (int k = 4; k <= 14; ++k) {
      const auto cur = c.refine(k);
      EXPECT_LE(1.0 - cur->points.back().abs(), std::ldexp(1.0, -k)) << to_string(kind);
      ASSERT_GE(cur->points.size(), prev->points.size());
      for (std::size_t i = 0; i < prev->points.size(); ++i) EXPECT_EQ(cur->points[i], prev->points[i]);
      prev = cur;
    }
    const auto pts = prev->points;
    const Complex e = c.endpoint();
    EXPECT_LT(std::abs(pts.back().value() - e), std::abs(pts.front().value() - e));
  }
}

TEST(Refinement, MemoizedAcrossCalls) {
  const auto c = canonical_curve(CurveKind::radius, 0.0, 0.0);
  EXPECT_EQ(c.refine(9).get(), c.refine(9).get());
}

TEST(CanonicalCurve, RadiusIsRealAndIncreasing) {
  const auto pts = canonical_curve(CurveKind::radius, 0.0, 0.0).points(12);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_EQ(pts[i].imag(), 0.0);
    EXPECT_GE(pts[i].real(), 0.0);
    if (i) { EXPECT_GT(pts[i].real(), pts[i - 1].real()); }
  }
}

TEST(CanonicalCurve, HorocycleStaysOnItsCircle) {
  const auto pts = canonical_curve(CurveKind::horocycle, 0.0, 0.5).points(14);
  EXPECT_NEAR(pts.front().abs(), 0.0, 1e-15);
  for (const auto& z : pts) EXPECT_LE(std::abs(std::abs(z.value() - 0.5) - 0.5), 1e-12);
}

TEST(CanonicalCurve, ChordIsCollinear) {
  const double a = kPi / 6;
  const Complex dir = std::polar(1.0, a);
  for (const auto& z : canonical_curve(CurveKind::chord, 0.0, a).points(14)) {
    const Complex rel = (1.0 - z.value()) / dir;
    EXPECT_NEAR(rel.imag(), 0.0, 1e-12);
    EXPECT_GT(rel.real(), 0.0);
  }
}

TEST(CanonicalCurve, HypercycleKeepsItsDistance) {
  const double beta = 0.4;
  for (const auto& z : canonical_curve(CurveKind::hypercycle, 0.0, beta).points(12)) {
    // Nearest point of the diameter has the same real band coordinate.
    const Complex band = 2.0 * std::atanh(z.value());
    const DiskPoint foot(std::tanh(0.5 * band.real()), 0.0);
    EXPECT_NEAR(pseudo_hyperbolic_distance(z, foot), std::tan(beta / 2), 1e-9);
  }
}

TEST(CanonicalCurve, RejectsIllegalParameters) {
  EXPECT_THROW(canonical_curve(CurveKind::chord, 0.0, kPi / 2), DomainError);
  EXPECT_THROW(canonical_curve(CurveKind::hypercycle, 0.0, -2.0), DomainError);
  EXPECT_THROW(canonical_curve(CurveKind::horocycle, 0.0, 1.0), DomainError);
  EXPECT_THROW(curve_kind_from_string("spiral"), DomainError);
}

TEST(CurvilinearAngle, Membership) {
  const auto radius = canonical_curve(CurveKind::radius, 0.0, 0.0);
  const CurvilinearAngle thin(radius, 0.0);
  for (const auto& z : radius.points(8)) EXPECT_TRUE(angle_contains(thin, z, 8));
  const CurvilinearAngle a(radius, 0.5);
  EXPECT_TRUE(angle_contains(a, DiskPoint(0.5, 0.005), 10));
  // Brute force against a much denser sampling of the same radius; the
  // refinement slack widens the boundary band.
  const double outer = 0.5 + radius.refine(12)->slack;
  Rng rng(7);
  for (int i = 0; i < 300; ++i) {
    const DiskPoint z(rng.in_disk(0.97));
    double best = 1.0;
    for (int j = 0; j <= 60000; ++j) {
      best = std::min(best, pseudo_hyperbolic_distance(z, DiskPoint(std::tanh(j * 1e-4), 0.0)));
    }
    if (best < 0.49) {
      EXPECT_TRUE(angle_contains(a, z, 12));
    } else if (best > outer + 1e-9) {
      EXPECT_FALSE(angle_contains(a, z, 12));
    }
  }
  EXPECT_FALSE(angle_contains(a, DiskPoint(-0.9, 0.0), 12));
}

TEST(DirectedDistance, ReflexiveWithinSlack) {
  const auto c = canonical_curve(CurveKind::chord, 0.0, 0.3);
  for (int k = 1; k <= 10; ++k) EXPECT_LE(directed_curve_distance(c, c, k), 0.05);
}

TEST(DirectedDistance, ChordStaysBoundedHorocycleGrows) {
  const auto r = canonical_curve(CurveKind::radius, 0.0, 0.0);
  const auto chord = canonical_curve(CurveKind::chord, 0.0, kPi / 6);
  const auto horo = canonical_curve(CurveKind::horocycle, 0.0, 0.5);
  double prev = -1.0;
  for (int k = 1; k <= 12; ++k) {
    // The origin sees the chord at Euclidean distance sin(pi/6).
    EXPECT_LE(directed_curve_distance(r, chord, k), std::log(3.0) + 1e-9);
    const double h = directed_curve_distance(r, horo, k);
    if (k >= 4) { EXPECT_GT(h, prev); }
    prev = h;
  }
}

TEST(DirectedDistance, DifferentEndpointsRejected) {
  EXPECT_THROW(directed_curve_distance(canonical_curve(CurveKind::radius, 0.0, 0.0),
                                       canonical_curve(CurveKind::radius, 1.0, 0.0), 4),
               DomainError);
}

TEST(Equivalence, Examples) {
  const auto r = canonical_curve(CurveKind::radius, 0.0, 0.0);
  const auto h1 = canonical_curve(CurveKind::hypercycle, 0.0, 0.3);
  const auto h2 = canonical_curve(CurveKind::hypercycle, 0.0, -0.6);
  const auto horo = canonical_curve(CurveKind::horocycle, 0.0, 0.5);
  EXPECT_EQ(are_equivalent(r, r, 12).verdict, Equivalence::equivalent);
  EXPECT_EQ(are_equivalent(h1, h2, 12).verdict, Equivalence::equivalent);
  EXPECT_EQ(are_equivalent(r, horo, 12).verdict, Equivalence::not_equivalent);
  EXPECT_EQ(are_equivalent(horo, r, 12).verdict, Equivalence::not_equivalent);
}

TEST(Equivalence, TrendRules) {
  const std::vector<LevelValue> flat = {{1, 1.0}, {2, 1.02}, {3, 1.03}};
  const std::vector<LevelValue> grow = {{1, 1.0}, {2, 2.0}, {3, 3.0}, {4, 4.0}, {5, 5.0}, {6, 6.0}};
  EXPECT_TRUE(is_plateau(flat, 1.05));
  EXPECT_FALSE(is_plateau(grow, 1.05));
  EXPECT_TRUE(is_strictly_growing(grow, 5, 5.0));
  EXPECT_FALSE(is_strictly_growing(grow, 5, 7.0));
}

TEST(AssertionCheck, InclusionAndShrunkRadius) {
  const auto r = canonical_curve(CurveKind::radius, 0.0, 0.0);
  const auto chord = canonical_curve(CurveKind::chord, 0.0, kPi / 6);
  EXPECT_TRUE(lemma2_assertion_check(r, r, 0.0, 1.0, 500, 10).holds);
  double d = 0.0;
  for (int k = 1; k <= 12; ++k) d = std::max(d, directed_curve_distance(r, chord, k));
  EXPECT_TRUE(lemma2_assertion_check(r, chord, d, 1.0, 1000, 10).holds);
  const auto shrunk = lemma2_assertion_check(r, chord, d / 2.0, 1.0, 1000, 10);
  EXPECT_FALSE(shrunk.holds);
  EXPECT_GT(shrunk.witnesses, 0);
}

TEST(SimplePolyline, DetectsCrossings) {
  const std::vector<Complex> simple = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const std::vector<Complex> bowtie = {{0, 0}, {1, 1}, {1, 0}, {0, 1}};
  EXPECT_TRUE(is_simple_polyline(simple));
  EXPECT_FALSE(is_simple_polyline(bowtie));
}

TEST(PolylineCurve, ContinuesToEndpoint) {
  const std::vector<Complex> samples = {{0.0, 0.0}, {0.3, 0.1}, {0.6, 0.0}};
  const auto c = BoundaryCurve::from_polyline(0.0, samples, "poly");
  const auto pts = c.points(10);
  EXPECT_LE(1.0 - pts.back().abs(), std::ldexp(1.0, -10));
  EXPECT_EQ(c.polyline().size(), 3u);
}
