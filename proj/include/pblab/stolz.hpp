#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pblab/curves.hpp"
#include "pblab/functions.hpp"

namespace pblab {

/// 1 for alpha <= pi/3, 2 cos(alpha) above.
double rho_of_alpha(double alpha);

/// A(e^{i theta}, alpha, rho): |arg(e^{i theta} - z)| < alpha, |e^{i theta} - z| < rho.
struct StolzAngle {
  double theta = 0.0;
  double alpha = 0.0;
  double rho = 0.0;

  StolzAngle(double theta, double alpha);
  StolzAngle(double theta, double alpha, double rho);
  bool contains(Complex z) const;
  /// Closure minus the vertex (the sides and the arc are admitted).
  bool contains_closed(Complex z) const;
};

/// Conformal map of A(1, alpha, rho(alpha)) onto the disk, built as the
/// composition of seven elementary steps:
///   -z, (1 + z)/rho, e^{i alpha} z, z^{pi/(2 alpha)}, (z + 1/z)/2, e^{-pi i} z, (z - i)/(z + i).
class StolzMap {
 public:
  explicit StolzMap(double alpha);

  double alpha() const { return alpha_; }
  double rho() const { return rho_; }
  /// pi / (2 alpha).
  double exponent() const { return exponent_; }

  /// Images after each step; index 0 is z itself. Rejects z outside the
  /// closed angle and the vertex.
  std::array<Complex, 8> stages(Complex z) const;
  Complex forward(Complex z) const { return stages(z)[7]; }
  /// 1 - 4 R S / (2 rho^{pi/alpha} - (S - R)^2), S = (1-z)^e, R = rho^e.
  Complex forward_closed_form(Complex z) const;
  /// The same with the square added instead of subtracted.
  Complex forward_printed_form(Complex z) const;

  /// Inverse by reverse composition.
  Complex inverse(Complex w) const { return 1.0 - inverse_gap(1.0 - w); }
  /// 1 - z as a function of 1 - w; avoids cancellation near the vertex.
  Complex inverse_gap(Complex one_minus_w) const;

 private:
  double alpha_;
  double rho_;
  double exponent_;
};

struct Lemma6Result {
  double alpha = 0.0;
  double beta = 0.0;
  int samples = 0;
  double m_hat = 0.0;
  double M_hat = 0.0;
  double holdout_min = 0.0;
  double holdout_max = 0.0;
  bool pass = false;
};

/// Ratio (1 - |w|)/(1 - |z|)^{pi/(2 alpha)} for w in A(1, beta, rho(beta)),
/// z = phi^{-1}(w). Estimates the range on one sample set and checks that an
/// independent set stays within [m/2, 2M].
Lemma6Result lemma6_check(double alpha, double beta, int samples, std::uint64_t seed = 11);

/// Delta_r gamma together with the curvilinear triangle between the
/// horocycle gamma, the chord h(theta, alpha) and the arc |z - e^{i theta}| = rho.
/// gamma approaches e^{i theta} from the side where arg(1 - e^{-i theta} z) < 0
/// and the chord leaves on the other side.
struct GRegion {
  double theta = 0.0;
  double horocycle_radius = 0.5;
  double deflection = 0.0;
  double chord_angle = 0.0;
  double arc_radius = 0.0;

  GRegion(double theta, double horocycle_radius, double deflection, double chord_angle,
          double arc_radius);
  const CurvilinearAngle& angle() const { return angle_; }
  /// The triangle part only (closed).
  bool triangle_contains(Complex z) const;

 private:
  CurvilinearAngle angle_;
};

bool g_region_contains(const GRegion& g, DiskPoint z);

/// p(t) for t in (0, b); named closed forms:
///   log_e_plus_inverse  log(e + 1/t)
///   log_one_plus_inverse log(1 + 1/t)
///   power:s             t^-s
///   constant:c          c (not in P; used for bounds with a fixed numerator)
struct DecayProfile {
  enum class Kind { log_e_plus_inverse, log_one_plus_inverse, power, constant };

  Kind kind = Kind::log_e_plus_inverse;
  double parameter = 0.0;
  double exponent = 1.0;
  double domain_end = 1.0;

  static DecayProfile parse(const std::string& spec, double exponent);
  std::string name() const;
  double p(double t) const;
  /// p(t) / t^exponent.
  double bound(double t) const;
  /// Non-increasing on a log grid of (1e-12, b).
  bool monotone_on_grid() const;
  /// Strictly growing on t = 10^-3, 10^-6, 10^-9, 10^-12.
  bool diverges_at_zero() const;
};

struct MarginRow {
  int level = 0;
  double u = 0.0;
  double gap = 0.0;  // 1 - |z|
  double log_abs = 0.0;
  double bound = 0.0;
  double margin = 0.0;
};

enum class DecayVerdict { satisfied, violated, inconclusive };
std::string to_string(DecayVerdict v);

struct MarginTable {
  static constexpr double kRelativeTolerance = 1e-12;

  std::string function_label;
  std::string curve_label;
  std::string profile;
  double exponent = 1.0;
  int level = 0;
  std::vector<MarginRow> rows;
  DecayVerdict verdict = DecayVerdict::inconclusive;
  /// Largest gap t such that the margin is negative on every sample closer
  /// to the endpoint than t, refined by bisection along the curve.
  std::optional<double> threshold;
};

/// margin(z) = -log|f(z)| - p(1 - |z|)/(1 - |z|)^e along curve.refine(level).
MarginTable decay_margin(const FunctionHandle& f, const BoundaryCurve& curve,
                         const DecayProfile& profile, int level);

}  // namespace pblab
