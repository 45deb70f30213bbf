#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "pblab/curves.hpp"

using namespace pblab;

namespace {

// tests/oracles/lemma4_oracle.py 0.5 8: 50-digit band-model distances,
// textbook coupling recursion.
constexpr std::array<double, 9> kOracle = {0.0,
                                           0.545778385691579,
                                           0.825361162666906,
                                           1.138128524458856,
                                           1.462360267373107,
                                           1.791356531118353,
                                           2.122545679057860,
                                           2.454799138044655,
                                           2.787583476088204};
constexpr std::array<std::size_t, 9> kOracleLengths1 = {28, 48, 81, 128, 188, 261, 348, 448, 561};
constexpr std::array<std::size_t, 9> kOracleLengths2 = {28, 138, 272, 454, 683, 958, 1281, 1651, 2067};

}  // namespace

TEST(Zigzag, NoZigzagIsAPrefixOfTheRadius) {
  const auto p = build_lemma4_pair(0.5, 0);
  EXPECT_EQ(discrete_frechet(p.gamma1_prefix, p.gamma2_prefix), 0.0);
  for (const auto& z : p.gamma2_prefix) EXPECT_EQ(z.imag(), 0.0);
}

TEST(Zigzag, MatchesOracle) {
  const auto profile = lemma4_frechet_profile(0.5, 8);
  ASSERT_EQ(profile.size(), 8u);
  for (int n = 1; n <= 8; ++n) {
    // Double precision loses digits as the zigzags approach the circle.
    const double tol = n <= 4 ? 1e-11 : 1e-6;
    EXPECT_NEAR(profile[n - 1], kOracle[n], tol) << "n=" << n;
  }
  for (int n = 0; n <= 8; ++n) {
    const auto p = build_lemma4_pair(0.5, n);
    EXPECT_EQ(p.gamma1_prefix.size(), kOracleLengths1[n]);
    EXPECT_EQ(p.gamma2_prefix.size(), kOracleLengths2[n]);
  }
}

TEST(Zigzag, FrechetStrictlyIncreasing) {
  const auto profile = lemma4_frechet_profile(0.5, 8);
  for (std::size_t i = 1; i < profile.size(); ++i) EXPECT_GT(profile[i], profile[i - 1]);
}

TEST(Zigzag, StaysInsideTheAngle) {
  for (double r : {0.3, 0.5}) {
    for (int n : {1, 4, 8}) {
      const auto p = build_lemma4_pair(r, n);
      const CurvilinearAngle host(p.gamma1, r);
      for (const auto& z : p.gamma2.points(44)) ASSERT_TRUE(angle_contains(host, z, 46));
      EXPECT_TRUE(is_simple_polyline(p.markers.band_polyline));
    }
  }
}

TEST(Zigzag, MarkersDescribeTheRoute) {
  const auto p = build_lemma4_pair(0.5, 3);
  const auto& m = p.markers;
  ASSERT_EQ(m.z_positions.size(), 4u);
  ASSERT_EQ(m.w_positions.size(), 3u);
  const std::vector<std::string> order = {"z1", "z2", "w1", "z3", "w2", "z4", "w3"};
  EXPECT_EQ(m.visit_order, order);
  for (std::size_t k = 0; k + 1 < m.z_positions.size(); ++k) {
    // Anchor gaps grow without bound while w_k stays within distance 1 of z_k.
    if (k) { EXPECT_GT(m.z_positions[k + 1] - m.z_positions[k], m.z_positions[k] - m.z_positions[k - 1]); }
    const DiskPoint zk(std::tanh(m.z_positions[k] / 2), 0.0), wk(std::tanh(m.w_positions[k] / 2), 0.0);
    EXPECT_LE(hyperbolic_distance(zk, wk), 1.0);
  }
  EXPECT_LT(m.clearance, m.r);
  EXPECT_LT(m.outer_lane, m.r);
}

TEST(Zigzag, CurveDistanceStaysFinite) {
  const auto p = build_lemma4_pair(0.5, 6);
  for (int k = 4; k <= 30; k += 2) {
    EXPECT_LT(directed_curve_distance(p.gamma2, p.gamma1, k), ph_to_h(0.5));
  }
}

TEST(Zigzag, RejectsBadArguments) {
  EXPECT_THROW(build_lemma4_pair(0.0, 2), DomainError);
  EXPECT_THROW(build_lemma4_pair(0.5, -1), DomainError);
  EXPECT_THROW(build_lemma4_pair(0.5, 9), DomainError);
}
