#include "pblab/curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>

#include "pblab/random.hpp"

namespace pblab {

struct BoundaryCurve::Cache {
  std::mutex mu;
  std::vector<double> params;
  std::vector<DiskPoint> points;
  double last_step = 1e-2;
  std::map<int, std::shared_ptr<const Refinement>> levels;
  // Next parameter value that must become a sample (polyline vertices).
  std::function<double(double)> next_break;
};

namespace {

double hyperbolic_gap(DiskPoint a, DiskPoint b) { return hyperbolic_distance(a, b); }

}  // namespace

BoundaryCurve::BoundaryCurve(double endpoint_angle, Parametrization param, std::string label,
                             double mesh)
    : endpoint_angle_(endpoint_angle),
      param_(std::move(param)),
      label_(std::move(label)),
      mesh_(mesh),
      cache_(std::make_shared<Cache>()) {
  if (!(mesh > 0.0 && mesh <= 1.0)) throw DomainError("curve mesh must lie in (0, 1]");
  if (!param_) throw DomainError("curve parametrization is empty");
  const auto start = DiskPoint::try_make(param_(0.0));
  if (!start) throw DomainError("curve must start inside the open disk");
  cache_->params.push_back(0.0);
  cache_->points.push_back(*start);
}

BoundaryCurve BoundaryCurve::from_polyline(double endpoint_angle, std::vector<Complex> samples,
                                           std::string label, double mesh) {
  if (samples.empty()) throw DomainError("polyline needs at least one sample");
  for (const Complex& z : samples) {
    if (!DiskPoint::try_make(z)) throw DomainError("polyline sample outside the open disk");
  }
  const auto verts = std::make_shared<const std::vector<Complex>>(samples);
  const double last_index = static_cast<double>(verts->size() - 1);
  const Complex end = std::polar(1.0, endpoint_angle);
  const MobiusAutomorphism to_last(DiskPoint(verts->back()));
  const Complex direction = to_last.inverse().apply_raw(end);

  Parametrization param = [verts, last_index, direction, to_last](double u) -> Complex {
    if (u <= last_index) {
      const auto i = static_cast<std::size_t>(std::floor(u));
      if (i + 1 >= verts->size()) return verts->back();
      const double t = u - static_cast<double>(i);
      return (*verts)[i] + t * ((*verts)[i + 1] - (*verts)[i]);
    }
    // Geodesic ray from the last vertex; u - last_index is arclength.
    const double t = u - last_index;
    return to_last.apply_raw(std::tanh(0.5 * t) * direction);
  };

  BoundaryCurve curve(endpoint_angle, std::move(param), std::move(label), mesh);
  curve.polyline_ = std::move(samples);
  curve.cache_->next_break = [last_index](double u) {
    if (u >= last_index) return std::numeric_limits<double>::infinity();
    return std::min(last_index, std::floor(u) + 1.0);
  };
  return curve;
}

std::shared_ptr<const Refinement> BoundaryCurve::refine(int level) const {
  if (level < 0) throw DomainError("refinement level must be non-negative");
  Cache& c = *cache_;
  std::lock_guard<std::mutex> lock(c.mu);
  if (auto it = c.levels.find(level); it != c.levels.end()) return it->second;

  const double target = std::ldexp(1.0, -level);
  auto reached = [&]() { return 1.0 - c.points.back().abs() <= target; };

  while (!reached()) {
    const double u = c.params.back();
    const DiskPoint p = c.points.back();
    const double limit = c.next_break ? c.next_break(u) : std::numeric_limits<double>::infinity();

    double lo = u;
    DiskPoint lo_point = p;
    double hi = std::numeric_limits<double>::quiet_NaN();
    double du = c.last_step;
    bool hit_break = false;
    for (int iter = 0; iter < 200; ++iter) {
      double cand = u + du;
      if (cand >= limit) cand = limit;
      const auto q = DiskPoint::try_make(param_(cand));
      if (!q || hyperbolic_gap(p, *q) > mesh_) {
        hi = cand;
        break;
      }
      lo = cand;
      lo_point = *q;
      if (cand == limit) {
        hit_break = true;
        break;
      }
      du *= 2.0;
    }
    if (!hit_break) {
      if (std::isnan(hi)) {
        std::ostringstream msg;
        msg << "curve '" << label_ << "' does not approach the boundary";
        throw DomainError(msg.str());
      }
      for (int iter = 0; iter < 80; ++iter) {
        if (lo > u && hyperbolic_gap(p, lo_point) >= 0.8 * mesh_) break;
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const auto q = DiskPoint::try_make(param_(mid));
        if (!q || hyperbolic_gap(p, *q) > mesh_) {
          hi = mid;
        } else {
          lo = mid;
          lo_point = *q;
        }
      }
    }
    if (!(lo > u)) {
      std::ostringstream msg;
      msg << "curve '" << label_ << "' stalled while refining";
      throw DomainError(msg.str());
    }
    c.last_step = std::max(lo - u, 1e-12);
    c.params.push_back(lo);
    c.points.push_back(lo_point);
  }

  // Shortest prefix that reaches the level.
  std::size_t n = 1;
  while (n < c.points.size() && 1.0 - c.points[n - 1].abs() > target) ++n;
  auto ref = std::make_shared<Refinement>();
  ref->level = level;
  ref->params.assign(c.params.begin(), c.params.begin() + static_cast<std::ptrdiff_t>(n));
  ref->points.assign(c.points.begin(), c.points.begin() + static_cast<std::ptrdiff_t>(n));
  for (std::size_t i = 1; i < n; ++i) {
    ref->slack = std::max(ref->slack, pseudo_hyperbolic_distance(ref->points[i - 1], ref->points[i]));
  }
  c.levels.emplace(level, ref);
  return ref;
}

CurvilinearAngle::CurvilinearAngle(BoundaryCurve curve, double deflection)
    : curve_(std::move(curve)), deflection_(deflection) {
  if (!(deflection >= 0.0 && deflection < 1.0)) {
    throw DomainError("pseudo-hyperbolic deflection must lie in [0,1)");
  }
}

CurvilinearAngle CurvilinearAngle::from_hyperbolic(BoundaryCurve curve, double hyperbolic_deflection) {
  return CurvilinearAngle(std::move(curve), h_to_ph(hyperbolic_deflection));
}

bool angle_contains(const CurvilinearAngle& angle, DiskPoint z, int level) {
  if (level < 1) throw DomainError("level must be >= 1");
  const auto ref = angle.curve().refine(level);
  const double bound = angle.deflection() + ref->slack;
  for (const DiskPoint& p : ref->points) {
    if (pseudo_hyperbolic_distance(z, p) <= bound) return true;
  }
  return false;
}

std::string to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::radius: return "radius";
    case CurveKind::chord: return "chord";
    case CurveKind::hypercycle: return "hypercycle";
    case CurveKind::horocycle: return "horocycle";
  }
  return "unknown";
}

CurveKind curve_kind_from_string(const std::string& name) {
  if (name == "radius") return CurveKind::radius;
  if (name == "chord") return CurveKind::chord;
  if (name == "hypercycle") return CurveKind::hypercycle;
  if (name == "horocycle") return CurveKind::horocycle;
  throw DomainError("unknown curve kind '" + name + "'");
}

double default_curve_parameter(CurveKind kind) {
  switch (kind) {
    case CurveKind::chord: return kPi / 6.0;
    case CurveKind::horocycle: return 0.5;
    default: return 0.0;
  }
}

BoundaryCurve canonical_curve(CurveKind kind, double theta, double parameter, double mesh) {
  const Complex rot = std::polar(1.0, theta);
  std::ostringstream label;
  label.precision(17);
  label << to_string(kind) << ":" << theta;
  switch (kind) {
    case CurveKind::radius:
      return BoundaryCurve(theta, [rot](double u) { return rot * std::tanh(0.5 * u); },
                           label.str(), mesh);
    case CurveKind::chord: {
      if (!(std::abs(parameter) < kPi / 2)) throw DomainError("chord angle must lie in (-pi/2, pi/2)");
      label << ":" << parameter;
      const double half = std::cos(parameter);
      const Complex dir = std::polar(1.0, parameter);
      return BoundaryCurve(
          theta, [rot, half, dir](double u) { return rot * (1.0 - half * std::exp(-u) * dir); },
          label.str(), mesh);
    }
    case CurveKind::hypercycle: {
      if (!(std::abs(parameter) < kPi / 2)) {
        throw DomainError("hypercycle angle must lie in (-pi/2, pi/2)");
      }
      label << ":" << parameter;
      return BoundaryCurve(
          theta, [rot, parameter](double u) { return rot * std::tanh(0.5 * Complex{u, parameter}); },
          label.str(), mesh);
    }
    case CurveKind::horocycle: {
      if (!(parameter > 0.0 && parameter < 1.0)) throw DomainError("horocycle radius must lie in (0, 1)");
      label << ":" << parameter;
      const double radius = parameter;
      return BoundaryCurve(
          theta,
          [rot, radius](double u) {
            const double psi = kPi / (1.0 + u);
            return rot * (1.0 - radius + radius * std::polar(1.0, psi));
          },
          label.str(), mesh);
    }
  }
  throw DomainError("unknown curve kind");
}

double directed_curve_distance(const BoundaryCurve& gamma1, const BoundaryCurve& gamma2, int level) {
  if (level < 1) throw DomainError("level must be >= 1");
  const double d_angle = std::remainder(gamma1.endpoint_angle() - gamma2.endpoint_angle(), 2.0 * kPi);
  if (std::abs(d_angle) > 1e-9) throw DomainError("curves end at different boundary points");
  const auto a = gamma1.refine(level);
  const auto b = gamma2.refine(level + 2);
  return directed_hausdorff(a->points, b->points);
}

std::string to_string(Equivalence v) {
  switch (v) {
    case Equivalence::equivalent: return "equivalent";
    case Equivalence::not_equivalent: return "not_equivalent";
    case Equivalence::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

bool is_plateau(std::span<const LevelValue> values, double ratio) {
  if (values.size() < 3) return false;
  const auto tail = values.last(3);
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const LevelValue& v : tail) {
    lo = std::min(lo, v.value);
    hi = std::max(hi, v.value);
  }
  if (!std::isfinite(hi)) return false;
  if (hi <= 1e-12) return true;
  return hi <= ratio * lo;
}

bool is_strictly_growing(std::span<const LevelValue> values, int count, double floor) {
  if (count < 2 || values.size() < static_cast<std::size_t>(count)) return false;
  const auto tail = values.last(static_cast<std::size_t>(count));
  for (std::size_t i = 1; i < tail.size(); ++i) {
    if (!(tail[i].value > tail[i - 1].value)) return false;
  }
  return tail.back().value > floor;
}

EquivalenceVerdict are_equivalent(const BoundaryCurve& gamma1, const BoundaryCurve& gamma2,
                                  int max_level) {
  if (max_level < 3) throw DomainError("equivalence needs at least three levels");
  EquivalenceVerdict out;
  for (int k = 1; k <= max_level; ++k) {
    const double f = directed_curve_distance(gamma1, gamma2, k);
    const double b = directed_curve_distance(gamma2, gamma1, k);
    out.forward.push_back({k, f});
    out.backward.push_back({k, b});
    out.symmetric.push_back({k, std::max(f, b)});
  }
  if (is_strictly_growing(out.symmetric, EquivalenceVerdict::kGrowthLevels,
                          EquivalenceVerdict::kGrowthFloor)) {
    out.verdict = Equivalence::not_equivalent;
  } else if (is_plateau(out.forward, EquivalenceVerdict::kPlateauRatio) &&
             is_plateau(out.backward, EquivalenceVerdict::kPlateauRatio)) {
    out.verdict = Equivalence::equivalent;
  } else {
    out.verdict = Equivalence::inconclusive;
  }
  return out;
}

Lemma2Result lemma2_assertion_check(const BoundaryCurve& gamma1, const BoundaryCurve& gamma2,
                                    double r, double r1, int samples, int level,
                                    std::uint64_t seed) {
  if (!(r >= 0.0) || !(r1 >= 0.0)) throw DomainError("radii must be non-negative");
  const auto stations = gamma1.refine(level);
  const CurvilinearAngle target = CurvilinearAngle::from_hyperbolic(gamma2, r1 + r);
  const double euclid = h_to_ph(r1);
  Rng rng(seed);
  Lemma2Result out;
  for (int i = 0; i < samples; ++i) {
    const DiskPoint& station = stations->points[rng.index(stations->points.size())];
    const auto z = DiskPoint::try_make(MobiusAutomorphism(station).apply_raw(rng.in_disk(euclid)));
    if (!z) continue;
    ++out.samples;
    if (!angle_contains(target, *z, level + 2)) ++out.witnesses;
  }
  out.holds = out.witnesses == 0;
  return out;
}

}  // namespace pblab
