#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "pblab/geometry.hpp"

namespace pblab {

/// Samples of a curve truncated at a refinement level.
struct Refinement {
  int level = 0;
  std::vector<double> params;
  std::vector<DiskPoint> points;
  /// Largest pseudo-hyperbolic gap between consecutive samples.
  double slack = 0.0;
};

/// A simple curve in the disk ending at e^{i theta}.
///
/// The curve is a parametrization u -> z(u), u >= 0, with z(u) -> e^{i theta}
/// as u -> infinity. refine(k) marches along it from u = 0 in hyperbolic steps
/// of length `mesh` and stops at the first sample with 1 - |z| <= 2^-k, so a
/// lower level is always a prefix of a higher one.
class BoundaryCurve {
 public:
  using Parametrization = std::function<Complex(double)>;
  static constexpr double kDefaultMesh = 0.05;

  BoundaryCurve(double endpoint_angle, Parametrization param, std::string label,
                double mesh = kDefaultMesh);

  /// A curve given by an ordered polyline. Past the last sample the curve
  /// continues along the hyperbolic geodesic to the endpoint.
  static BoundaryCurve from_polyline(double endpoint_angle, std::vector<Complex> samples,
                                     std::string label = "polyline", double mesh = kDefaultMesh);

  double endpoint_angle() const { return endpoint_angle_; }
  Complex endpoint() const { return std::polar(1.0, endpoint_angle_); }
  const std::string& label() const { return label_; }
  double mesh() const { return mesh_; }

  Complex point_at(double u) const { return param_(u); }
  /// Memoized; safe to call concurrently.
  std::shared_ptr<const Refinement> refine(int level) const;
  std::vector<DiskPoint> points(int level) const { return refine(level)->points; }
  /// Polyline vertices for polyline-backed curves, empty otherwise.
  const std::vector<Complex>& polyline() const { return polyline_; }

 private:
  struct Cache;

  double endpoint_angle_ = 0.0;
  Parametrization param_;
  std::string label_;
  double mesh_ = kDefaultMesh;
  std::vector<Complex> polyline_;
  std::shared_ptr<Cache> cache_;
};

/// Delta_r gamma: the union of closed pseudo-hyperbolic disks of radius r
/// centred on the curve.
class CurvilinearAngle {
 public:
  CurvilinearAngle(BoundaryCurve curve, double deflection);
  static CurvilinearAngle from_hyperbolic(BoundaryCurve curve, double hyperbolic_deflection);

  const BoundaryCurve& curve() const { return curve_; }
  double deflection() const { return deflection_; }
  double hyperbolic_deflection() const { return ph_to_h(deflection_); }

 private:
  BoundaryCurve curve_;
  double deflection_ = 0.0;
};

bool angle_contains(const CurvilinearAngle& angle, DiskPoint z, int level);

enum class CurveKind { radius, chord, hypercycle, horocycle };

std::string to_string(CurveKind kind);
CurveKind curve_kind_from_string(const std::string& name);

/// Canonical families ending at e^{i theta}:
///   radius      from 0 (parameter ignored)
///   chord       straight chord through e^{i theta} at angle `parameter` to the
///               radius, from the chord's midpoint; parameter in (-pi/2, pi/2)
///   hypercycle  equidistant curve of the diameter through e^{i theta} meeting
///               the circle at angle `parameter`; parameter in (-pi/2, pi/2)
///   horocycle   circle of Euclidean radius `parameter` tangent at e^{i theta},
///               starting opposite the tangency point; parameter in (0, 1)
BoundaryCurve canonical_curve(CurveKind kind, double theta, double parameter,
                              double mesh = BoundaryCurve::kDefaultMesh);
/// Default parameter per kind (0 for radius/hypercycle, pi/6 chord, 1/2 horocycle).
double default_curve_parameter(CurveKind kind);

/// sup over gamma1.refine(k) of inf over gamma2.refine(k+2) of d_h.
double directed_curve_distance(const BoundaryCurve& gamma1, const BoundaryCurve& gamma2, int level);

struct LevelValue {
  int level = 0;
  double value = 0.0;
};

enum class Equivalence { equivalent, not_equivalent, inconclusive };
std::string to_string(Equivalence v);

struct EquivalenceVerdict {
  static constexpr double kPlateauRatio = 1.05;
  static constexpr int kGrowthLevels = 5;
  static constexpr double kGrowthFloor = 5.0;

  std::vector<LevelValue> forward;   // gamma1 into gamma2
  std::vector<LevelValue> backward;  // gamma2 into gamma1
  std::vector<LevelValue> symmetric; // max of both
  Equivalence verdict = Equivalence::inconclusive;
};

EquivalenceVerdict are_equivalent(const BoundaryCurve& gamma1, const BoundaryCurve& gamma2,
                                  int max_level);

/// Trend rules shared by the equivalence verdict.
bool is_plateau(std::span<const LevelValue> values, double ratio);
bool is_strictly_growing(std::span<const LevelValue> values, int count, double floor);

/// Discrete Frechet distance with hyperbolic legs (coupled-traversal DP).
double discrete_frechet(std::span<const DiskPoint> a, std::span<const DiskPoint> b);
/// sup_{p in a} inf_{q in b} d_h(p, q).
double directed_hausdorff(std::span<const DiskPoint> a, std::span<const DiskPoint> b);

/// True iff no two non-adjacent segments of the polyline intersect.
bool is_simple_polyline(std::span<const Complex> vertices);

struct Lemma4Markers {
  double r = 0.0;              // pseudo-hyperbolic deflection of the host angle
  double clearance = 0.0;      // pseudo-hyperbolic distance of the inner lane
  double outer_lane = 0.0;     // pseudo-hyperbolic distance of the outer lane
  double schedule_scale = 0.0; // z_k at hyperbolic position scale * k^2
  double w_offset = 0.0;       // d_h(z_k, w_k)
  std::vector<double> z_positions;
  std::vector<double> w_positions;
  std::vector<std::string> visit_order;
  double rejoin_position = 0.0;
  /// Band coordinates (s + i beta) of gamma2's vertices, z = tanh((s + i beta)/2).
  std::vector<Complex> band_polyline;
};

struct Lemma4Pair {
  BoundaryCurve gamma1;
  BoundaryCurve gamma2;
  Lemma4Markers markers;
  /// Both curves up to the point where gamma2 rejoins gamma1.
  std::vector<DiskPoint> gamma1_prefix;
  std::vector<DiskPoint> gamma2_prefix;
};

/// Two curves ending at 1 with finite curve distance and Frechet distance
/// growing with the number of zigzags of gamma2 along the radius gamma1.
Lemma4Pair build_lemma4_pair(double r, int n_zigzags, double mesh = BoundaryCurve::kDefaultMesh);

/// Frechet distance of the prefix pairs for 1..max_zigzags.
std::vector<double> lemma4_frechet_profile(double r, int max_zigzags,
                                           double mesh = BoundaryCurve::kDefaultMesh);

struct Lemma2Result {
  bool holds = true;
  int samples = 0;
  int witnesses = 0;  // samples of Delta_{r1} gamma1 outside Delta_{r2} gamma2
};

/// Samples Delta_{r1} gamma1 (hyperbolic r1) and checks membership in
/// Delta_{r2} gamma2 with r2 = r1 + r (hyperbolic), up to sampling slack.
Lemma2Result lemma2_assertion_check(const BoundaryCurve& gamma1, const BoundaryCurve& gamma2,
                                    double r, double r1, int samples, int level,
                                    std::uint64_t seed = 7);

}  // namespace pblab
