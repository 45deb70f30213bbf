#include "pblab/stolz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pblab/random.hpp"

namespace pblab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const Complex kI{0.0, 1.0};

void check_half_angle(double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5 * kPi)) throw DomainError("half-angle must lie in (0, pi/2)");
}

// 1 - |1 - d| without cancellation.
double gap_from_offset(Complex d) {
  return (2.0 * d.real() - std::norm(d)) / (1.0 + std::abs(1.0 - d));
}

}  // namespace

double rho_of_alpha(double alpha) {
  check_half_angle(alpha);
  return alpha <= kPi / 3.0 ? 1.0 : 2.0 * std::cos(alpha);
}

StolzAngle::StolzAngle(double theta_, double alpha_) : StolzAngle(theta_, alpha_, rho_of_alpha(alpha_)) {}

StolzAngle::StolzAngle(double theta_, double alpha_, double rho_)
    : theta(theta_), alpha(alpha_), rho(rho_) {
  check_half_angle(alpha);
  if (!(rho > 0.0 && rho <= 1.0)) throw DomainError("Stolz radius must lie in (0, 1]");
}

bool StolzAngle::contains(Complex z) const {
  if (!(std::abs(z) < 1.0)) return false;
  const Complex d = 1.0 - std::polar(1.0, -theta) * z;
  return std::abs(std::arg(d)) < alpha && std::abs(d) < rho;
}

bool StolzAngle::contains_closed(Complex z) const {
  if (!(std::abs(z) < 1.0)) return false;
  const Complex d = 1.0 - std::polar(1.0, -theta) * z;
  if (d == Complex{0.0, 0.0}) return false;
  return std::abs(std::arg(d)) <= alpha && std::abs(d) <= rho;
}

StolzMap::StolzMap(double alpha)
    : alpha_(alpha), rho_(rho_of_alpha(alpha)), exponent_(kPi / (2.0 * alpha)) {}

std::array<Complex, 8> StolzMap::stages(Complex z) const {
  if (!StolzAngle(0.0, alpha_, rho_).contains_closed(z)) {
    std::ostringstream msg;
    msg << "point " << z << " is outside the Stolz angle";
    throw DomainError(msg.str());
  }
  std::array<Complex, 8> s;
  s[0] = z;
  s[1] = -s[0];
  s[2] = (1.0 + s[1]) / rho_;
  s[3] = std::polar(1.0, alpha_) * s[2];
  s[4] = std::pow(s[3], exponent_);
  s[5] = 0.5 * (s[4] + 1.0 / s[4]);
  s[6] = -s[5];  // e^{-pi i} z
  s[7] = (s[6] - kI) / (s[6] + kI);
  return s;
}

Complex StolzMap::forward_closed_form(Complex z) const {
  const Complex S = std::pow(1.0 - z, exponent_);
  const double R = std::pow(rho_, exponent_);
  return 1.0 - 4.0 * R * S / (2.0 * std::pow(rho_, 2.0 * exponent_) - (S - R) * (S - R));
}

Complex StolzMap::forward_printed_form(Complex z) const {
  const Complex S = std::pow(1.0 - z, exponent_);
  const double R = std::pow(rho_, exponent_);
  return 1.0 - 4.0 * R * S / ((S - R) * (S - R) + 2.0 * std::pow(rho_, 2.0 * exponent_));
}

Complex StolzMap::inverse_gap(Complex g) const {
  if (g == Complex{0.0, 0.0}) return 0.0;
  // (z - i)/(z + i) = w  <=>  z = i (1 + w)/(1 - w), with 1 + w = 2 - g.
  const Complex v6 = kI * (2.0 - g) / g;
  const Complex v5 = -v6;
  // Zhukovsky: the root of x^2 - 2 v x + 1 inside the unit disk.
  const Complex s = std::sqrt(v5 * v5 - 1.0);
  const Complex r1 = v5 + s;
  const Complex r2 = v5 - s;
  const Complex v4 = 1.0 / (std::abs(r1) >= std::abs(r2) ? r1 : r2);
  const Complex v3 = std::pow(v4, 1.0 / exponent_);
  const Complex v2 = std::polar(1.0, -alpha_) * v3;
  // z = -(rho v2 - 1), so 1 - z = rho v2.
  return rho_ * v2;
}

Lemma6Result lemma6_check(double alpha, double beta, int samples, std::uint64_t seed) {
  check_half_angle(alpha);
  check_half_angle(beta);
  if (samples < 1) throw DomainError("lemma6_check needs samples >= 1");
  const StolzMap map(alpha);
  const double rho_w = rho_of_alpha(beta);
  const double e = map.exponent();

  auto ratios = [&](std::uint64_t s) {
    Rng rng(s);
    std::vector<double> out;
    const double lo = std::log(1e-8);
    const double hi = std::log(rho_w);
    while (static_cast<int>(out.size()) < samples) {
      const double t = std::exp(rng.uniform(lo, hi));
      const double psi = rng.uniform(-beta, beta);
      const Complex g = std::polar(t, psi);  // 1 - w
      const double gap_w = gap_from_offset(g);
      if (!(gap_w > 0.0)) continue;
      const double gap_z = gap_from_offset(map.inverse_gap(g));
      out.push_back(gap_w / std::pow(gap_z, e));
    }
    return out;
  };

  Lemma6Result res;
  res.alpha = alpha;
  res.beta = beta;
  res.samples = samples;
  const std::vector<double> est = ratios(seed);
  const std::vector<double> hold = ratios(seed ^ 0x9e3779b97f4a7c15ULL);
  res.m_hat = *std::min_element(est.begin(), est.end());
  res.M_hat = *std::max_element(est.begin(), est.end());
  res.holdout_min = *std::min_element(hold.begin(), hold.end());
  res.holdout_max = *std::max_element(hold.begin(), hold.end());
  res.pass = res.m_hat > 0.0 && std::isfinite(res.M_hat) && res.holdout_min >= 0.5 * res.m_hat &&
             res.holdout_max <= 2.0 * res.M_hat;
  return res;
}

GRegion::GRegion(double theta_, double horocycle_radius_, double deflection_, double chord_angle_,
                 double arc_radius_)
    : theta(theta_),
      horocycle_radius(horocycle_radius_),
      deflection(deflection_),
      chord_angle(chord_angle_),
      arc_radius(arc_radius_),
      angle_(canonical_curve(CurveKind::horocycle, theta_, horocycle_radius_), deflection_) {
  if (!(chord_angle > 0.0 && chord_angle < 0.5 * kPi)) throw DomainError("chord angle must lie in (0, pi/2)");
  if (!(arc_radius > 0.0 && arc_radius <= 1.0)) throw DomainError("arc radius must lie in (0, 1]");
}

bool GRegion::triangle_contains(Complex z) const {
  if (!(std::abs(z) < 1.0)) return false;
  // Polar coordinates about the endpoint: e^{-i theta} z = 1 - t e^{i phi}.
  const Complex d = 1.0 - std::polar(1.0, -theta) * z;
  const double t = std::abs(d);
  if (t == 0.0 || t > arc_radius) return false;
  const double phi = std::arg(d);
  if (phi < -0.5 * kPi || phi > chord_angle) return false;
  // The horocycle is t = 2 R cos(phi) for phi in (-pi/2, 0].
  return phi >= 0.0 || t <= 2.0 * horocycle_radius * std::cos(phi);
}

bool g_region_contains(const GRegion& g, DiskPoint z) {
  if (g.triangle_contains(z.value())) return true;
  const double gap = 1.0 - z.abs();
  const int level = std::clamp(static_cast<int>(std::ceil(-std::log2(gap))) + 4, 8, 52);
  return angle_contains(g.angle(), z, level);
}

DecayProfile DecayProfile::parse(const std::string& spec, double exponent) {
  if (!(exponent >= 1.0)) throw DomainError("decay exponent must be >= 1");
  DecayProfile p;
  p.exponent = exponent;
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string tail = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "log_e_plus_inverse") {
    p.kind = Kind::log_e_plus_inverse;
  } else if (head == "log_one_plus_inverse") {
    p.kind = Kind::log_one_plus_inverse;
  } else if (head == "power" || head == "constant") {
    if (tail.empty()) throw DomainError(head + " profile needs a parameter");
    p.kind = head == "power" ? Kind::power : Kind::constant;
    p.parameter = std::stod(tail);
    if (p.kind == Kind::power && !(p.parameter > 0.0)) throw DomainError("power must be positive");
  } else {
    throw DomainError("unknown decay profile '" + spec + "'");
  }
  return p;
}

std::string DecayProfile::name() const {
  std::ostringstream s;
  s.precision(17);
  switch (kind) {
    case Kind::log_e_plus_inverse:
      return "log_e_plus_inverse";
    case Kind::log_one_plus_inverse:
      return "log_one_plus_inverse";
    case Kind::power:
      s << "power:" << parameter;
      return s.str();
    case Kind::constant:
      s << "constant:" << parameter;
      return s.str();
  }
  return "";
}

double DecayProfile::p(double t) const {
  switch (kind) {
    case Kind::log_e_plus_inverse:
      return std::log(std::exp(1.0) + 1.0 / t);
    case Kind::log_one_plus_inverse:
      return std::log1p(1.0 / t);
    case Kind::power:
      return std::pow(t, -parameter);
    case Kind::constant:
      return parameter;
  }
  return 0.0;
}

double DecayProfile::bound(double t) const { return p(t) / std::pow(t, exponent); }

bool DecayProfile::monotone_on_grid() const {
  // Walk from just below b down to 1e-12; p must never decrease.
  double prev = p(0.999 * domain_end);
  for (int i = 1; i <= 240; ++i) {
    const double t = domain_end * std::pow(1e-12 / domain_end, i / 240.0);
    const double v = p(t);
    if (v < prev) return false;
    prev = v;
  }
  return true;
}

bool DecayProfile::diverges_at_zero() const {
  double prev = p(1e-3);
  for (double t : {1e-6, 1e-9, 1e-12}) {
    const double v = p(t);
    if (!(v > prev)) return false;
    prev = v;
  }
  return true;
}

std::string to_string(DecayVerdict v) {
  switch (v) {
    case DecayVerdict::satisfied:
      return "satisfied";
    case DecayVerdict::violated:
      return "violated";
    case DecayVerdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

namespace {

int level_of_gap(double gap) {
  int k = 1;
  while (k < 1100 && gap < std::ldexp(1.0, -k)) ++k;
  return k;
}

struct MarginPoint {
  double gap;
  double log_abs;
  double bound;
  double margin;
};

MarginPoint margin_at(const FunctionHandle& f, const DecayProfile& profile, Complex zc) {
  const DiskPoint z(zc);
  MarginPoint m;
  m.gap = 1.0 - z.abs();
  m.log_abs = f.log_abs(z);
  m.bound = profile.bound(m.gap);
  m.margin = -m.log_abs - m.bound;
  return m;
}

bool non_negative(const MarginPoint& m) {
  return m.margin >= -MarginTable::kRelativeTolerance * std::max(1.0, std::abs(m.bound));
}

}  // namespace

MarginTable decay_margin(const FunctionHandle& f, const BoundaryCurve& curve,
                         const DecayProfile& profile, int level) {
  if (level < 2) throw DomainError("decay_margin needs level >= 2");
  MarginTable tab;
  tab.function_label = f.label();
  tab.curve_label = curve.label();
  tab.profile = profile.name();
  tab.exponent = profile.exponent;
  tab.level = level;

  const auto ref = curve.refine(level);
  bool pole = false;
  std::vector<bool> ok;
  for (std::size_t i = 0; i < ref->points.size(); ++i) {
    const MarginPoint m = margin_at(f, profile, ref->points[i].value());
    MarginRow row;
    row.u = ref->params[i];
    row.gap = m.gap;
    row.level = std::min(level, level_of_gap(m.gap));
    row.log_abs = m.log_abs;
    row.bound = m.bound;
    row.margin = m.margin;
    if (m.log_abs == kInf) pole = true;
    ok.push_back(non_negative(m));
    tab.rows.push_back(row);
  }

  if (pole) {
    tab.verdict = DecayVerdict::violated;
  } else {
    bool all_ok = true;
    bool tail_negative = true;
    bool tail_seen = false;
    for (std::size_t i = 0; i < tab.rows.size(); ++i) {
      if (tab.rows[i].level >= 2 && !ok[i]) all_ok = false;
      if (tab.rows[i].level >= level - 1) {
        tail_seen = true;
        if (!(tab.rows[i].margin < 0.0)) tail_negative = false;
      }
    }
    if (all_ok) {
      tab.verdict = DecayVerdict::satisfied;
    } else if (tail_seen && tail_negative) {
      tab.verdict = DecayVerdict::violated;
    }
  }

  // Threshold: walk back from the endpoint to the last non-negative sample.
  if (!tab.rows.empty() && tab.rows.back().margin < 0.0) {
    std::size_t i = tab.rows.size() - 1;
    while (i > 0 && tab.rows[i - 1].margin < 0.0) --i;
    if (i == 0) {
      tab.threshold = tab.rows.front().gap;
    } else {
      double a = tab.rows[i - 1].u;  // margin >= 0
      double b = tab.rows[i].u;      // margin < 0
      for (int it = 0; it < 200 && b - a > 0.0; ++it) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        if (margin_at(f, profile, curve.point_at(mid)).margin < 0.0) {
          b = mid;
        } else {
          a = mid;
        }
      }
      tab.threshold = margin_at(f, profile, curve.point_at(b)).gap;
    }
  }
  return tab;
}

}  // namespace pblab
