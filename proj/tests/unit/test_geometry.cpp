#include <gtest/gtest.h>

#include <cmath>

#include "pblab/geometry.hpp"
#include "pblab/random.hpp"

using namespace pblab;

namespace {

// d_ph computed from the hyperbolic cosine law, independent of the library formula.
double oracle_ph(Complex z, Complex w) {
  const double num = 2.0 * std::norm(z - w);
  const double den = (1.0 - std::norm(z)) * (1.0 - std::norm(w));
  const double dh = std::acosh(1.0 + num / den);
  return std::tanh(dh / 2.0);
}

// Chord between stereographic images computed from sphere coordinates.
double oracle_chord(const ExtendedComplex& a, const ExtendedComplex& b) {
  double p[3], q[3];
  a.to_sphere(p);
  b.to_sphere(q);
  return std::sqrt((p[0] - q[0]) * (p[0] - q[0]) + (p[1] - q[1]) * (p[1] - q[1]) + (p[2] - q[2]) * (p[2] - q[2]));
}

}  // namespace

TEST(DiskPoint, RejectsBoundaryAndOutside) {
  EXPECT_THROW(DiskPoint(1.0, 0.0), DomainError);
  EXPECT_THROW(DiskPoint(0.0, -1.5), DomainError);
  EXPECT_FALSE(DiskPoint::try_make({1.0, 0.0}).has_value());
  EXPECT_TRUE(DiskPoint::try_make({0.999, 0.0}).has_value());
  EXPECT_NEAR(DiskPoint(0.6, 0.0).conformal_weight(), 0.64, 1e-15);
}

TEST(Metric, PseudoHyperbolicExamples) {
  const DiskPoint w(0.3, -0.4);
  EXPECT_NEAR(pseudo_hyperbolic_distance(DiskPoint(), w), 0.5, 1e-15);
  EXPECT_EQ(pseudo_hyperbolic_distance(w, w), 0.0);
  EXPECT_NEAR(pseudo_hyperbolic_distance(DiskPoint(0.5, 0), DiskPoint(-0.5, 0)), 0.8, 1e-15);
}

TEST(Metric, HyperbolicExamples) {
  const DiskPoint z(0.2, 0.1);
  EXPECT_EQ(hyperbolic_distance(z, z), 0.0);
  EXPECT_NEAR(hyperbolic_distance(DiskPoint(), DiskPoint(std::tanh(0.5), 0)), 1.0, 1e-12);
  EXPECT_NEAR(hyperbolic_distance(DiskPoint(), DiskPoint(0.5, 0)), std::log(3.0), 1e-14);
}

TEST(Metric, SphericalExamples) {
  const ExtendedComplex a(Complex{0.3, 2.0});
  EXPECT_EQ(spherical_distance(a, a), 0.0);
  EXPECT_NEAR(spherical_distance(0.0, ExtendedComplex::infinity()), 2.0, 1e-15);
  EXPECT_NEAR(spherical_distance(1.0, Complex{0.0, 1.0}), std::sqrt(2.0), 1e-15);
  EXPECT_EQ(spherical_distance(ExtendedComplex::infinity(), ExtendedComplex::infinity()), 0.0);
}

TEST(Metric, RadiusConversionExamples) {
  EXPECT_EQ(ph_to_h(0.0), 0.0);
  EXPECT_NEAR(ph_to_h(0.5), std::log(3.0), 1e-14);
  EXPECT_NEAR(h_to_ph(1.0), std::tanh(0.5), 1e-15);
  EXPECT_THROW(ph_to_h(1.0), DomainError);
  EXPECT_THROW(h_to_ph(-0.1), DomainError);
}

TEST(MetricProperty, PseudoHyperbolicMatchesCoshLaw) {
  Rng rng(101);
  for (int i = 0; i < 2000; ++i) {
    const Complex z = rng.in_disk(0.95), w = rng.in_disk(0.95);
    EXPECT_NEAR(pseudo_hyperbolic_distance(DiskPoint(z), DiskPoint(w)), oracle_ph(z, w), 1e-10);
  }
}

TEST(MetricProperty, HyperbolicIsMonotoneInPseudoHyperbolic) {
  Rng rng(102);
  for (int i = 0; i < 2000; ++i) {
    const DiskPoint z(rng.in_disk(0.99)), w(rng.in_disk(0.99));
    const double ph = pseudo_hyperbolic_distance(z, w);
    EXPECT_NEAR(hyperbolic_distance(z, w), std::log((1 + ph) / (1 - ph)), 1e-9 * std::max(1.0, std::log((1 + ph) / (1 - ph))));
  }
}

TEST(MetricProperty, ChordalMatchesSphereCoordinates) {
  Rng rng(103);
  for (int i = 0; i < 2000; ++i) {
    const ExtendedComplex a = Complex{rng.uniform(-5, 5), rng.uniform(-5, 5)};
    const ExtendedComplex b = i % 7 == 0 ? ExtendedComplex::infinity() : ExtendedComplex(Complex{rng.uniform(-5, 5), rng.uniform(-5, 5)});
    const double d = spherical_distance(a, b);
    EXPECT_NEAR(d, oracle_chord(a, b), 1e-12);
    EXPECT_LE(d, 2.0);
    EXPECT_NEAR(spherical_distance(a.reciprocal(), b.reciprocal()), d, 1e-12);
  }
}

TEST(MetricProperty, AxiomsAndInvariance) {
  Rng rng(104);
  for (int i = 0; i < 5000; ++i) {
    const DiskPoint a(rng.in_disk(0.99)), b(rng.in_disk(0.99)), c(rng.in_disk(0.99));
    const MobiusAutomorphism phi(DiskPoint(rng.in_disk(0.9)), rng.uniform(-kPi, kPi));
    const double ab = pseudo_hyperbolic_distance(a, b);
    EXPECT_GE(ab, 0.0);
    EXPECT_LT(ab, 1.0);
    EXPECT_EQ(ab, pseudo_hyperbolic_distance(b, a));
    EXPECT_LE(ab, pseudo_hyperbolic_distance(a, c) + pseudo_hyperbolic_distance(c, b) + 1e-12);
    EXPECT_NEAR(pseudo_hyperbolic_distance(phi(a), phi(b)), ab, 1e-12);
    const double r = rng.uniform(0, 0.999);
    EXPECT_NEAR(h_to_ph(ph_to_h(r)), r, 1e-12);
  }
}

TEST(Mobius, Examples) {
  const MobiusAutomorphism phi(DiskPoint(0.5, 0.0));
  EXPECT_NEAR(std::abs(phi(DiskPoint()).value() - Complex{0.5, 0}), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(phi(DiskPoint(0.5, 0)).value() - Complex{0.8, 0}), 0.0, 1e-15);
}

TEST(MobiusProperty, InverseAndComposition) {
  Rng rng(105);
  for (int i = 0; i < 1000; ++i) {
    const MobiusAutomorphism f(DiskPoint(rng.in_disk(0.9)), rng.uniform(-kPi, kPi));
    const MobiusAutomorphism g(DiskPoint(rng.in_disk(0.9)), rng.uniform(-kPi, kPi));
    const DiskPoint z(rng.in_disk(0.9));
    EXPECT_NEAR(std::abs(f.inverse()(f(z)).value() - z.value()), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(f.compose(g)(z).value() - f(g(z)).value()), 0.0, 1e-12);
  }
  const DiskPoint w(0.3, 0.2);
  const MobiusAutomorphism plain(w);
  const MobiusAutomorphism minus(DiskPoint(-w.value()));
  const DiskPoint z(-0.4, 0.1);
  EXPECT_NEAR(std::abs(minus(plain(z)).value() - z.value()), 0.0, 1e-15);
}

TEST(HyperbolicDisk, MembershipMatchesDefinition) {
  Rng rng(106);
  for (int i = 0; i < 200; ++i) {
    const DiskPoint c(rng.in_disk(0.9));
    const double r = rng.uniform(0.05, 0.9);
    const HyperbolicDisk d(c, r, MetricKind::pseudo_hyperbolic);
    const HyperbolicDisk h = d.converted(MetricKind::hyperbolic);
    EXPECT_NEAR(h.radius, ph_to_h(r), 1e-12);
    for (int j = 0; j < 20; ++j) {
      const DiskPoint z(rng.in_disk(0.99));
      const double dist = pseudo_hyperbolic_distance(z, c);
      if (std::abs(dist - r) < 1e-9) continue;
      EXPECT_EQ(d.contains(z), dist <= r);
      EXPECT_EQ(h.contains(z), dist <= r);
      EXPECT_EQ(std::abs(z.value() - d.euclidean_center()) <= d.euclidean_radius(), dist <= r);
    }
  }
}

TEST(DiskImage, Examples) {
  EXPECT_TRUE(disk_image_check(DiskPoint(), 0.7, 2000));
  EXPECT_TRUE(disk_image_check(DiskPoint(0.6, 0.0), 0.3, 10000));
  EXPECT_THROW(disk_image_check(DiskPoint(), 1.0, 10), DomainError);
}
