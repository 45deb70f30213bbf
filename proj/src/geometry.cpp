#include "pblab/geometry.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "pblab/random.hpp"

namespace pblab {

DiskPoint::DiskPoint(Complex value) : value_(value) {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()) ||
      std::abs(value) >= 1.0 - kBoundaryGuard) {
    std::ostringstream msg;
    msg << "point " << value << " is not in the open unit disk";
    throw DomainError(msg.str());
  }
}

std::optional<DiskPoint> DiskPoint::try_make(Complex value) {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()) ||
      std::abs(value) >= 1.0 - kBoundaryGuard) {
    return std::nullopt;
  }
  return DiskPoint(value);
}

double DiskPoint::conformal_weight() const {
  const double r = std::abs(value_);
  return (1.0 - r) * (1.0 + r);
}

ExtendedComplex ExtendedComplex::from_possibly_infinite(Complex value) {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) return infinity();
  return ExtendedComplex(value);
}

ExtendedComplex ExtendedComplex::reciprocal() const {
  if (infinite_) return ExtendedComplex(Complex{0.0, 0.0});
  if (value_ == Complex{0.0, 0.0}) return infinity();
  return from_possibly_infinite(1.0 / value_);
}

void ExtendedComplex::to_sphere(double out[3]) const {
  if (infinite_) {
    out[0] = 0.0;
    out[1] = 0.0;
    out[2] = 1.0;
    return;
  }
  const double n2 = std::norm(value_);
  if (!std::isfinite(n2)) {
    out[0] = 0.0;
    out[1] = 0.0;
    out[2] = 1.0;
    return;
  }
  const double d = 1.0 + n2;
  out[0] = 2.0 * value_.real() / d;
  out[1] = 2.0 * value_.imag() / d;
  out[2] = (n2 - 1.0) / d;
}

ExtendedComplex ExtendedComplex::from_sphere(const double p[3]) {
  // Projection from the north pole (0,0,1).
  const double denom = 1.0 - p[2];
  if (denom <= 0.0) return infinity();
  return from_possibly_infinite(Complex{p[0] / denom, p[1] / denom});
}

std::string ExtendedComplex::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream s;
  s.precision(17);
  s << value_.real() << "," << value_.imag();
  return s.str();
}

Complex MobiusAutomorphism::apply_raw(Complex z) const {
  const Complex w = center_.value();
  return std::polar(1.0, rotation_) * (z + w) / (1.0 + z * std::conj(w));
}

DiskPoint MobiusAutomorphism::operator()(DiskPoint z) const {
  return DiskPoint(apply_raw(z.value()));
}

MobiusAutomorphism MobiusAutomorphism::inverse() const {
  // e^{-i tau} (y - w e^{i tau}) / (1 - y conj(w e^{i tau})).
  const Complex w = center_.value() * std::polar(1.0, rotation_);
  return MobiusAutomorphism(DiskPoint(-w), -rotation_);
}

MobiusAutomorphism MobiusAutomorphism::compose(const MobiusAutomorphism& inner) const {
  // Any automorphism is determined by the image of 0 and its rotation there:
  // g(z) = e^{i t}(z + c)/(1 + z conj(c)) has g(0) = e^{i t} c and
  // g'(0) = e^{i t}(1 - |c|^2).
  const Complex image_of_zero = apply_raw(inner.apply_raw(Complex{0.0, 0.0}));
  const Complex a = inner.center().value();
  const Complex inner_d0 = std::polar(1.0, inner.rotation()) * (1.0 - std::norm(a));
  const Complex u = inner.apply_raw(Complex{0.0, 0.0});
  const Complex w = center_.value();
  const Complex outer_du = std::polar(1.0, rotation_) * (1.0 - std::norm(w)) /
                           ((1.0 + u * std::conj(w)) * (1.0 + u * std::conj(w)));
  const double t = std::arg(outer_du * inner_d0);
  const Complex c = image_of_zero * std::polar(1.0, -t);
  return MobiusAutomorphism(DiskPoint(c), t);
}

HyperbolicDisk::HyperbolicDisk(DiskPoint c, double r, MetricKind kind)
    : center(c), radius(r), metric(kind) {
  const bool ok = kind == MetricKind::pseudo_hyperbolic ? (r >= 0.0 && r < 1.0)
                                                        : (r >= 0.0 && std::isfinite(r));
  if (!ok) throw DomainError("disk radius out of range for its metric");
}

HyperbolicDisk HyperbolicDisk::converted(MetricKind kind) const {
  if (kind == metric) return *this;
  const double r = kind == MetricKind::hyperbolic ? ph_to_h(radius) : h_to_ph(radius);
  return HyperbolicDisk(center, r, kind);
}

bool HyperbolicDisk::contains(DiskPoint z) const {
  if (metric == MetricKind::pseudo_hyperbolic) return pseudo_hyperbolic_distance(center, z) <= radius;
  return hyperbolic_distance(center, z) <= radius;
}

Complex HyperbolicDisk::euclidean_center() const {
  const double r = metric == MetricKind::pseudo_hyperbolic ? radius : h_to_ph(radius);
  const Complex w = center.value();
  return w * (1.0 - r * r) / (1.0 - r * r * std::norm(w));
}

double HyperbolicDisk::euclidean_radius() const {
  const double r = metric == MetricKind::pseudo_hyperbolic ? radius : h_to_ph(radius);
  const double n = std::norm(center.value());
  return r * (1.0 - n) / (1.0 - r * r * n);
}

double pseudo_hyperbolic_distance(DiskPoint z, DiskPoint w) {
  const Complex a = z.value();
  const Complex b = w.value();
  if (a == b) return 0.0;
  return std::abs(a - b) / std::abs(1.0 - a * std::conj(b));
}

double hyperbolic_distance(DiskPoint z, DiskPoint w) {
  // log((1+d)/(1-d)) with d the pseudo-hyperbolic distance equals
  // 2 asinh(|z-w| / sqrt((1-|z|^2)(1-|w|^2))); the latter keeps full relative
  // precision for both nearby and far-apart points.
  const Complex a = z.value();
  const Complex b = w.value();
  if (a == b) return 0.0;
  const double q = std::abs(a - b) / std::sqrt(z.conformal_weight() * w.conformal_weight());
  return 2.0 * std::asinh(q);
}

double spherical_distance(const ExtendedComplex& a, const ExtendedComplex& b) {
  if (a.is_infinite() && b.is_infinite()) return 0.0;
  if (a.is_infinite()) return 2.0 / std::sqrt(1.0 + std::norm(b.value()));
  if (b.is_infinite()) return 2.0 / std::sqrt(1.0 + std::norm(a.value()));
  const Complex z = a.value();
  const Complex w = b.value();
  if (z == w) return 0.0;
  return 2.0 * std::abs(z - w) / (std::sqrt(1.0 + std::norm(z)) * std::sqrt(1.0 + std::norm(w)));
}

double radius_convert(double r, RadiusDirection direction) {
  if (direction == RadiusDirection::ph_to_h) {
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("pseudo-hyperbolic radius must lie in [0,1)");
    return 2.0 * std::atanh(r);
  }
  if (!(r >= 0.0 && std::isfinite(r))) throw DomainError("hyperbolic radius must lie in [0,inf)");
  return std::tanh(0.5 * r);
}

bool disk_image_check(DiskPoint w, double r, int samples, std::uint64_t seed) {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("radius must lie in [0,1)");
  constexpr double kSlack = 1e-12;
  const MobiusAutomorphism phi(w);
  const MobiusAutomorphism phi_inv = phi.inverse();
  Rng rng(seed);

  for (int i = 0; i < samples; ++i) {
    const DiskPoint u(rng.in_disk(r));
    if (pseudo_hyperbolic_distance(phi(u), w) > r + kSlack) return false;
  }

  // Reverse inclusion: sample the pseudo-hyperbolic disk through its
  // Euclidean description, independent of phi.
  const HyperbolicDisk disk(w, r, MetricKind::pseudo_hyperbolic);
  const Complex c = disk.euclidean_center();
  const double radius = disk.euclidean_radius();
  int accepted = 0;
  int attempts = 0;
  while (accepted < samples && attempts < 20 * samples + 100) {
    ++attempts;
    const auto z = DiskPoint::try_make(c + rng.in_disk(radius));
    if (!z || pseudo_hyperbolic_distance(*z, w) > r) continue;
    ++accepted;
    if (phi_inv(*z).abs() > r + kSlack) return false;
  }
  return accepted == samples;
}

}  // namespace pblab
