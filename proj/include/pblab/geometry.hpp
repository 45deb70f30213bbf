#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace pblab {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Raised when a value violates the domain of a geometric type or operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A point of the open unit disk.
///
/// Construction rejects |z| >= 1 - 1e-15 so that 1 - |z|^2 keeps at least a
/// few significant digits. Boundary points are handled by angle elsewhere.
class DiskPoint {
 public:
  static constexpr double kBoundaryGuard = 1e-15;

  DiskPoint() = default;
  explicit DiskPoint(Complex value);
  DiskPoint(double re, double im) : DiskPoint(Complex{re, im}) {}

  /// Returns nullopt instead of throwing.
  static std::optional<DiskPoint> try_make(Complex value);

  Complex value() const { return value_; }
  double real() const { return value_.real(); }
  double imag() const { return value_.imag(); }
  double abs() const { return std::abs(value_); }
  /// 1 - |z|^2, computed as (1 - |z|)(1 + |z|).
  double conformal_weight() const;

  friend bool operator==(const DiskPoint&, const DiskPoint&) = default;

 private:
  Complex value_{0.0, 0.0};
};

/// A point of the Riemann sphere: a finite complex number or infinity.
class ExtendedComplex {
 public:
  ExtendedComplex() = default;
  ExtendedComplex(Complex value) : value_(value) {}  // NOLINT(implicit)
  ExtendedComplex(double re) : value_(Complex{re, 0.0}) {}  // NOLINT(implicit)

  static ExtendedComplex infinity() {
    ExtendedComplex e;
    e.infinite_ = true;
    e.value_ = {};
    return e;
  }
  /// Non-finite components map to infinity.
  static ExtendedComplex from_possibly_infinite(Complex value);
  /// 1/h with 1/0 = infinity and 1/infinity = 0.
  ExtendedComplex reciprocal() const;

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  /// Only meaningful when finite.
  Complex value() const { return value_; }
  /// Unit-sphere image under inverse stereographic projection.
  void to_sphere(double out[3]) const;
  static ExtendedComplex from_sphere(const double p[3]);

  std::string to_string() const;

  friend bool operator==(const ExtendedComplex& a, const ExtendedComplex& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

 private:
  bool infinite_ = false;
  Complex value_{0.0, 0.0};
};

/// z -> e^{i tau} (z + w) / (1 + z conj(w)).
class MobiusAutomorphism {
 public:
  MobiusAutomorphism() = default;
  explicit MobiusAutomorphism(DiskPoint center, double rotation = 0.0)
      : center_(center), rotation_(rotation) {}

  DiskPoint center() const { return center_; }
  double rotation() const { return rotation_; }

  /// Works on any complex argument away from the pole -1/conj(w).
  Complex apply_raw(Complex z) const;
  DiskPoint operator()(DiskPoint z) const;
  MobiusAutomorphism inverse() const;
  /// (*this) o inner.
  MobiusAutomorphism compose(const MobiusAutomorphism& inner) const;

 private:
  DiskPoint center_{};
  double rotation_ = 0.0;
};

enum class MetricKind { pseudo_hyperbolic, hyperbolic };

/// A closed disk in one of the two disk metrics.
struct HyperbolicDisk {
  DiskPoint center;
  double radius = 0.0;
  MetricKind metric = MetricKind::pseudo_hyperbolic;

  HyperbolicDisk(DiskPoint c, double r, MetricKind kind);
  /// Same set, expressed in the other metric.
  HyperbolicDisk converted(MetricKind kind) const;
  bool contains(DiskPoint z) const;
  /// Euclidean center and radius of the set.
  Complex euclidean_center() const;
  double euclidean_radius() const;
};

double pseudo_hyperbolic_distance(DiskPoint z, DiskPoint w);
double hyperbolic_distance(DiskPoint z, DiskPoint w);
double spherical_distance(const ExtendedComplex& a, const ExtendedComplex& b);

enum class RadiusDirection { ph_to_h, h_to_ph };
double radius_convert(double r, RadiusDirection direction);
inline double ph_to_h(double r) { return radius_convert(r, RadiusDirection::ph_to_h); }
inline double h_to_ph(double r) { return radius_convert(r, RadiusDirection::h_to_ph); }

/// Sampling check that the closed pseudo-hyperbolic disk of radius r about w
/// is the Moebius image of the Euclidean disk of radius r.
bool disk_image_check(DiskPoint w, double r, int samples, std::uint64_t seed = 1);

}  // namespace pblab
