#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>

#include "pblab/functions.hpp"

namespace pblab {
namespace {

constexpr double kPoleSnap = 1e-14;

// Pair m (0-based) at hyperbolic position m along the radius, deflection
// 1 - 0.4 * 2^-m. The first pair lands at +-0.6i.
constexpr double kDeflectionGap = 0.4;

}  // namespace

Example1Schedule Example1Schedule::make_default(int pairs) {
  if (pairs < 1) throw DomainError("schedule needs at least one pair");
  Example1Schedule s;
  s.theta = 0.0;
  const Complex rot = std::polar(1.0, s.theta);
  for (int m = 0; m < pairs; ++m) {
    const double r = 1.0 - kDeflectionGap * std::ldexp(1.0, -m);
    const double pos = m;
    const double beta = 2.0 * std::atan(r);
    const Complex upper = std::tanh(0.5 * Complex{pos, beta});
    s.deflections.push_back(r);
    s.positions.push_back(pos);
    s.poles.emplace_back(rot * std::conj(upper));  // z_{2m-1}
    s.poles.emplace_back(rot * upper);             // z_{2m}
  }
  for (std::size_t k = 1; k <= s.poles.size(); ++k) {
    s.radii.push_back(std::ldexp(1.0, -2 * static_cast<int>(k)));
  }
  return s;
}

double Example1Schedule::hyperbolic_diameter(std::size_t k) const {
  // The hyperbolic diameter of a Euclidean disk is attained along the
  // diameter through the origin.
  const Complex c = poles.at(k).value();
  const double e = radii.at(k);
  const Complex dir = std::abs(c) > 0.0 ? c / std::abs(c) : Complex{1.0, 0.0};
  const auto a = DiskPoint::try_make(c - e * dir);
  const auto b = DiskPoint::try_make(c + e * dir);
  if (!a || !b) return std::numeric_limits<double>::infinity();
  return hyperbolic_distance(*a, *b);
}

Example1Schedule::Conditions Example1Schedule::check() const {
  Conditions out;
  const std::size_t n = poles.size();
  if (n == 0 || radii.size() != n || deflections.size() * 2 != n || positions.size() * 2 != n) {
    return out;
  }
  out.radii_decreasing = radii.front() > 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    if (!(radii[k] < radii[k - 1] && radii[k] > 0.0)) out.radii_decreasing = false;
  }
  out.disks_inside = true;
  for (std::size_t k = 0; k < n; ++k) {
    if (poles[k].abs() + radii[k] >= 1.0) out.disks_inside = false;
  }
  out.disks_disjoint = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(poles[i].value() - poles[j].value()) <= radii[i] + radii[j]) {
        out.disks_disjoint = false;
      }
    }
  }
  // Diameters must tend to 0: the per-pair maximum decreases strictly and
  // ends far below the first one.
  out.diameters_shrink = true;
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < n; k += 2) {
    const double d = std::max(hyperbolic_diameter(k), hyperbolic_diameter(k + 1));
    if (!(d < prev)) out.diameters_shrink = false;
    prev = d;
  }
  if (!(prev < 1e-3 * hyperbolic_diameter(0))) out.diameters_shrink = false;
  // Geometric decay with ratio < 1 certifies summability.
  double ratio = 0.0;
  for (std::size_t k = 1; k < n; ++k) ratio = std::max(ratio, radii[k] / radii[k - 1]);
  out.radii_summable = ratio < 1.0;

  out.poles_on_boundary_curves = true;
  const Complex rot = std::polar(1.0, -theta);
  for (std::size_t m = 0; m < deflections.size(); ++m) {
    const double r = deflections[m];
    if (m > 0 && !(r > deflections[m - 1])) out.poles_on_boundary_curves = false;
    const Complex upper = rot * poles[2 * m + 1].value();
    const Complex lower = rot * poles[2 * m].value();
    // Back to band coordinates: s + i beta = 2 atanh(z).
    const Complex bu = 2.0 * std::atanh(upper);
    const Complex bl = 2.0 * std::atanh(lower);
    if (std::abs(std::tan(0.5 * bu.imag()) - r) > 1e-12 || bu.imag() <= 0.0) {
      out.poles_on_boundary_curves = false;
    }
    if (std::abs(std::tan(-0.5 * bl.imag()) - r) > 1e-12 || bl.imag() >= 0.0) {
      out.poles_on_boundary_curves = false;
    }
  }
  return out;
}

std::string Example1Schedule::to_json_text() const {
  nlohmann::json j;
  j["theta"] = theta;
  nlohmann::json poles_json = nlohmann::json::array();
  for (const DiskPoint& p : poles) poles_json.push_back({p.real(), p.imag()});
  j["poles"] = poles_json;
  j["radii"] = radii;
  j["deflections"] = deflections;
  j["positions"] = positions;
  return j.dump(2);
}

Example1Schedule Example1Schedule::from_json_text(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  Example1Schedule s;
  s.theta = j.at("theta").get<double>();
  for (const auto& p : j.at("poles")) {
    s.poles.emplace_back(Complex{p.at(0).get<double>(), p.at(1).get<double>()});
  }
  s.radii = j.at("radii").get<std::vector<double>>();
  s.deflections = j.at("deflections").get<std::vector<double>>();
  s.positions = j.at("positions").get<std::vector<double>>();
  return s;
}

namespace {

struct PoleSum {
  std::vector<Complex> poles;
  std::vector<double> residues;

  PoleSum(const Example1Schedule& s, int truncation) {
    const std::size_t n = truncation <= 0 ? s.size()
                                          : std::min<std::size_t>(truncation, s.size());
    for (std::size_t k = 0; k < n; ++k) {
      poles.push_back(s.poles[k].value());
      residues.push_back(s.radii[k] * s.radii[k]);
    }
  }

  // Chart of sum a_k / (z - z_k), isolating the nearest pole.
  Chart operator()(Complex z) const {
    std::size_t near = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < poles.size(); ++k) {
      const double d = std::abs(z - poles[k]);
      if (d < best) {
        best = d;
        near = k;
      }
    }
    Complex rest{};
    Complex drest{};
    for (std::size_t k = 0; k < poles.size(); ++k) {
      if (k == near) continue;
      const Complex q = 1.0 / (z - poles[k]);
      rest += residues[k] * q;
      drest -= residues[k] * q * q;
    }
    const double a = residues[near];
    Complex delta = z - poles[near];
    if (std::abs(delta) <= kPoleSnap) delta = 0.0;
    if (delta == Complex{0.0, 0.0}) return Chart::reciprocal(0.0, 1.0 / a);
    const Complex f = a / delta + rest;
    if (std::abs(f) <= FunctionHandle::kPoleThreshold) {
      return Chart::direct(f, -a / (delta * delta) + drest);
    }
    // 1/f = delta / (a + delta R).
    const Complex den = a + delta * rest;
    return Chart::reciprocal(delta / den, (a - delta * delta * drest) / (den * den));
  }
};

}  // namespace

FunctionHandle example1_f0(const Example1Schedule& s, int truncation) {
  PoleSum sum(s, truncation);
  return FunctionHandle("example1_f0", [sum](Complex z) { return sum(z); });
}

FunctionHandle example2_f1(const Example1Schedule& s, int truncation) {
  PoleSum sum(s, truncation);
  const Complex e = std::polar(1.0, s.theta);
  return FunctionHandle("example2_f1", [sum, e](Complex z) {
    const Chart c = sum(z);
    const Complex u = z - e;
    if (c.kind == ChartKind::direct) {
      return normalize_chart(Chart::direct(c.value * u, c.derivative * u + c.value));
    }
    return normalize_chart(Chart::reciprocal(c.value / u, c.derivative / u - c.value / (u * u)));
  });
}

double example1_tail_bound(const Example1Schedule& s, int truncation, Complex z) {
  double out = 0.0;
  const std::size_t from = truncation <= 0 ? s.size() : static_cast<std::size_t>(truncation);
  for (std::size_t k = from; k < s.size(); ++k) {
    out += s.radii[k] * s.radii[k] / std::abs(z - s.poles[k].value());
  }
  return out;
}

}  // namespace pblab
