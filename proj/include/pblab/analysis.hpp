#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pblab/curves.hpp"
#include "pblab/functions.hpp"

namespace pblab {

enum class TrendVerdict { bounded, diverging, inconclusive };
std::string to_string(TrendVerdict v);

struct TrendRule {
  static constexpr double kPlateauRatio = 1.05;
  static constexpr double kGrowthFactor = 2.0;
  static constexpr int kWindow = 3;
};

/// bounded: the last three values lie within 5% of each other.
/// diverging: each of the last three ratios is at least 2.
TrendVerdict trend_verdict(const std::vector<double>& values);

struct NormalityLevel {
  int level = 0;
  double sup = 0.0;
  double log_sup = 0.0;
  /// Samples first seen at this level (1 - |z| in [2^-level, 2^-(level-1))).
  int samples = 0;
  /// Largest sampled |f| inside O_r = {|z - e^{i theta}| < 1 - r}, cumulative.
  double max_abs_near_endpoint = 0.0;
};

struct NormalityReport {
  static constexpr double kFailureFraction = 0.01;
  static constexpr double kCoverMesh = 0.1;

  std::string function_label;
  std::string curve_label;
  double deflection = 0.0;
  std::vector<NormalityLevel> levels;
  TrendVerdict verdict = TrendVerdict::inconclusive;
  int evaluations = 0;
  int failures = 0;
};

/// Sup of (1 - |z|^2) f#(z) over Delta_r gamma truncated at 1 - |z| >= 2^-k.
NormalityReport normality_sup(const FunctionHandle& f, const CurvilinearAngle& region, int max_level);

struct IndicatorReport {
  static constexpr double kThresholds[3] = {10.0, 100.0, 1000.0};

  std::vector<double> values;
  /// For each threshold, the first index from which all values exceed it, or -1.
  std::vector<int> exceed_from;
  TrendVerdict trend = TrendVerdict::inconclusive;
  /// Sufficient-condition indicator only.
  bool positive = false;
};

/// Lehto-Virtanen values at z_n. Positive iff for every threshold the values
/// stay above it over at least the last two entries.
IndicatorReport p_indicator_t8(const FunctionHandle& f, const std::vector<DiskPoint>& sequence);
/// Sup over the hyperbolic disk D_h(z_n, r_n), sampled with mesh r_n / 10.
IndicatorReport p_indicator_t9(const FunctionHandle& f, const std::vector<DiskPoint>& sequence,
                               const std::vector<double>& radii);

struct Theorem10Report {
  static constexpr double kConvergence = 1e-3;

  std::vector<double> ds_a;  // d_S(f(a_n), alpha)
  std::vector<double> ds_b;  // d_S(f(b_n), alpha)
  std::vector<double> dh;    // d_h(a_n, b_n)
  bool values_converge = false;
  bool values_separated = false;
  bool points_merge = false;
  bool flagged() const { return values_converge && values_separated && points_merge; }
};

/// values_converge: the last three d_S(f(a_n), alpha) <= 1e-3; values_separated: d_S(f(b_n), alpha) >= delta
/// over the last half; points_merge: the last three d_h(a_n, b_n) <= 1e-3.
Theorem10Report theorem10_check(const FunctionHandle& f, const std::vector<DiskPoint>& seq_a,
                                const std::vector<DiskPoint>& seq_b, const ExtendedComplex& alpha,
                                double delta);

struct ClusterShell {
  int index = 0;
  double lo = 0.0;  // |z - e^{i theta}| in [lo, hi)
  double hi = 0.0;
  std::vector<ExtendedComplex> values;
  double diameter = 0.0;
  std::optional<ExtendedComplex> mean;
};

struct ClusterEstimate {
  static constexpr int kTargetSamples = 200;
  static constexpr double kConvergence = 1e-3;
  static constexpr int kMaxEmptyRun = 3;

  std::vector<ClusterShell> shells;
  std::optional<ExtendedComplex> limit_candidate;
  bool inconclusive = false;
  int empty_shells = 0;
  int failures = 0;
};

struct ClusterRegion {
  std::function<bool(DiskPoint)> contains;
  /// Points of the region sampled in every shell they fall into.
  std::vector<DiskPoint> atoms;
};

/// Samples f on region n {2^-(k+1) <= |z - e^{i theta}| < 2^-k} for k = 1..shells.
ClusterEstimate cluster_estimate(const FunctionHandle& f, const ClusterRegion& region, double theta,
                                 int shells, std::uint64_t seed = 1);

struct FamilyReport {
  static constexpr double kConvergence = 1e-3;
  static constexpr double kGridMesh = 0.02;

  std::vector<DiskPoint> w;
  double r1 = 0.0;
  ExtendedComplex target;
  std::vector<double> sup_ds;
  bool converges = false;
  int failures = 0;
};

/// sup over a grid of |z| <= r1 of d_S(f(phi_{w_n}(z)), c) per n.
FamilyReport renormalized_family_check(const FunctionHandle& f, const std::vector<DiskPoint>& w,
                                       double r1, const ExtendedComplex& c);

/// 1 - 2^-n for n = 1..count, rotated to e^{i theta}.
std::vector<DiskPoint> radial_sequence(double theta, int count);

}  // namespace pblab
