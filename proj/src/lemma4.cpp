#include <algorithm>
#include <cmath>
#include <string>

#include "pblab/curves.hpp"

namespace pblab {
namespace {

// Anchor z_k sits at hyperbolic position kScheduleScale * k^2 on the radius.
// With k up to 9 this keeps every vertex at 1 - |z| > 1e-12.
constexpr double kScheduleScale = 1.0 / 3.0;
constexpr double kWOffset = 0.25;
constexpr double kRampLength = 0.1;
constexpr double kRejoinGap = 1.0;
constexpr int kMaxZigzags = 8;

// Band model: w = s + i beta with |beta| < pi/2 maps to the disk by
// z = tanh(w/2); beta = const are hypercycles of the real diameter at
// pseudo-hyperbolic distance tan(|beta|/2).
Complex band_to_disk(Complex w) { return std::tanh(0.5 * w); }
double lane_angle(double ph_distance) { return 2.0 * std::atan(ph_distance); }

void append_segment(std::vector<Complex>& out, Complex from, Complex to, double mesh) {
  // Band metric is |dw| / cos(beta); bound the hyperbolic hop by `mesh`.
  const double beta_max = std::max(std::abs(from.imag()), std::abs(to.imag()));
  const double step = 0.9 * mesh * std::cos(beta_max);
  const double len = std::abs(to - from);
  const int pieces = std::max(1, static_cast<int>(std::ceil(len / step)));
  for (int i = 1; i <= pieces; ++i) {
    out.push_back(from + (to - from) * (static_cast<double>(i) / pieces));
  }
}

}  // namespace

Lemma4Pair build_lemma4_pair(double r, int n_zigzags, double mesh) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("deflection must lie in (0, 1)");
  if (n_zigzags < 0) throw DomainError("number of zigzags must be non-negative");
  if (n_zigzags > kMaxZigzags) {
    throw DomainError("at most " + std::to_string(kMaxZigzags) +
                      " zigzags fit in double precision near the boundary");
  }

  Lemma4Markers m;
  m.r = r;
  m.clearance = r / 4.0;
  m.outer_lane = 3.0 * r / 8.0;
  m.schedule_scale = kScheduleScale;
  m.w_offset = kWOffset;
  for (int k = 1; k <= n_zigzags + 1; ++k) m.z_positions.push_back(kScheduleScale * k * k);
  for (int k = 1; k <= n_zigzags; ++k) m.w_positions.push_back(m.z_positions[k - 1] + kWOffset);
  m.rejoin_position = m.z_positions.back() + kRejoinGap;

  const double inner = lane_angle(m.clearance);
  const double outer = lane_angle(m.outer_lane);
  std::vector<Complex>& v = m.band_polyline;
  v.push_back({0.0, 0.0});

  if (n_zigzags == 0) {
    v.push_back({m.rejoin_position, 0.0});
  } else {
    const auto& z = m.z_positions;
    const auto& w = m.w_positions;
    v.push_back({z[0], 0.0});
    m.visit_order.push_back("z1");
    // F_1 above the axis.
    v.push_back({z[0], outer});
    v.push_back({z[1], outer});
    v.push_back({z[1], 0.0});
    for (int k = 1; k <= n_zigzags; ++k) {
      m.visit_order.push_back("z" + std::to_string(k + 1));
      // B_k: back from z_{k+1} to w_k on the inner lane below the axis.
      v.push_back({z[k] - kRampLength, -inner});
      v.push_back({w[k - 1] + kRampLength, -inner});
      v.push_back({w[k - 1], 0.0});
      m.visit_order.push_back("w" + std::to_string(k));
      // F_{k+1}: forward on the outer lane, alternating sides.
      const double side = (k + 1) % 2 == 1 ? 1.0 : -1.0;
      const double end = k < n_zigzags ? z[k + 1] : m.rejoin_position;
      v.push_back({w[k - 1], side * outer});
      v.push_back({end, side * outer});
      v.push_back({end, 0.0});
    }
  }

  std::vector<DiskPoint> gamma1_prefix;
  const int steps = static_cast<int>(std::ceil(m.rejoin_position / mesh));
  for (int i = 0; i <= steps; ++i) {
    const double s = std::min(m.rejoin_position, i * mesh);
    gamma1_prefix.emplace_back(Complex{std::tanh(0.5 * s), 0.0});
  }

  std::vector<Complex> disk_samples;
  if (n_zigzags == 0) {
    // No detour: gamma2 is literally the sampled radius.
    for (const DiskPoint& p : gamma1_prefix) disk_samples.push_back(p.value());
  } else {
    std::vector<Complex> band_samples{v.front()};
    for (std::size_t i = 1; i < v.size(); ++i) append_segment(band_samples, v[i - 1], v[i], mesh);
    disk_samples.reserve(band_samples.size());
    for (const Complex& b : band_samples) disk_samples.push_back(band_to_disk(b));
  }
  std::vector<DiskPoint> gamma2_prefix;
  gamma2_prefix.reserve(disk_samples.size());
  for (const Complex& z : disk_samples) gamma2_prefix.emplace_back(z);

  BoundaryCurve gamma1 = canonical_curve(CurveKind::radius, 0.0, 0.0, mesh);
  BoundaryCurve gamma2 = BoundaryCurve::from_polyline(0.0, std::move(disk_samples),
                                                      "lemma4:" + std::to_string(n_zigzags), mesh);
  return Lemma4Pair{std::move(gamma1), std::move(gamma2), std::move(m), std::move(gamma1_prefix),
                    std::move(gamma2_prefix)};
}

std::vector<double> lemma4_frechet_profile(double r, int max_zigzags, double mesh) {
  std::vector<double> out;
  for (int n = 1; n <= max_zigzags; ++n) {
    const Lemma4Pair pair = build_lemma4_pair(r, n, mesh);
    out.push_back(discrete_frechet(pair.gamma1_prefix, pair.gamma2_prefix));
  }
  return out;
}

}  // namespace pblab
