#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "pblab/curves.hpp"

namespace pblab {
namespace {

// sinh(d_h/2) between two disk points; monotone in d_h, so the DP and the
// sup/inf can run on it and convert once at the end.
struct HalfSinh {
  std::vector<Complex> z;
  std::vector<double> w;  // sqrt(1 - |z|^2)

  explicit HalfSinh(std::span<const DiskPoint> pts) {
    z.reserve(pts.size());
    w.reserve(pts.size());
    for (const DiskPoint& p : pts) {
      z.push_back(p.value());
      w.push_back(std::sqrt(p.conformal_weight()));
    }
  }
};

inline double half_sinh(const HalfSinh& a, std::size_t i, const HalfSinh& b, std::size_t j) {
  return std::abs(a.z[i] - b.z[j]) / (a.w[i] * b.w[j]);
}

inline double to_hyperbolic(double q) { return 2.0 * std::asinh(q); }

}  // namespace

double discrete_frechet(std::span<const DiskPoint> a, std::span<const DiskPoint> b) {
  if (a.empty() || b.empty()) throw DomainError("discrete Frechet distance needs non-empty inputs");
  const HalfSinh pa(a);
  const HalfSinh pb(b);
  const std::size_t m = b.size();
  std::vector<double> prev(m);
  std::vector<double> cur(m);

  prev[0] = half_sinh(pa, 0, pb, 0);
  for (std::size_t j = 1; j < m; ++j) prev[j] = std::max(prev[j - 1], half_sinh(pa, 0, pb, j));
  for (std::size_t i = 1; i < a.size(); ++i) {
    cur[0] = std::max(prev[0], half_sinh(pa, i, pb, 0));
    for (std::size_t j = 1; j < m; ++j) {
      const double best = std::min({prev[j], prev[j - 1], cur[j - 1]});
      cur[j] = std::max(best, half_sinh(pa, i, pb, j));
    }
    std::swap(prev, cur);
  }
  return to_hyperbolic(prev[m - 1]);
}

double directed_hausdorff(std::span<const DiskPoint> a, std::span<const DiskPoint> b) {
  if (a.empty() || b.empty()) throw DomainError("directed Hausdorff distance needs non-empty inputs");
  const HalfSinh pa(a);
  const HalfSinh pb(b);
  double sup = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double inf = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      inf = std::min(inf, half_sinh(pa, i, pb, j));
      if (inf <= sup) break;  // cannot raise the sup any more
    }
    sup = std::max(sup, inf);
  }
  return to_hyperbolic(sup);
}

namespace {

int orientation(Complex a, Complex b, Complex c) {
  const long double v = static_cast<long double>(b.real() - a.real()) * (c.imag() - a.imag()) -
                        static_cast<long double>(b.imag() - a.imag()) * (c.real() - a.real());
  return (v > 0) - (v < 0);
}

bool on_segment(Complex a, Complex b, Complex p) {
  return std::min(a.real(), b.real()) <= p.real() && p.real() <= std::max(a.real(), b.real()) &&
         std::min(a.imag(), b.imag()) <= p.imag() && p.imag() <= std::max(a.imag(), b.imag());
}

bool segments_intersect(Complex p1, Complex p2, Complex q1, Complex q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

}  // namespace

bool is_simple_polyline(std::span<const Complex> v) {
  if (v.size() < 4) return true;
  const std::size_t n = v.size() - 1;  // segments
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  auto xmin = [&](std::size_t i) { return std::min(v[i].real(), v[i + 1].real()); };
  auto xmax = [&](std::size_t i) { return std::max(v[i].real(), v[i + 1].real()); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xmin(a) < xmin(b); });

  // Sweep over x; `active` holds segments whose x-range still overlaps.
  std::vector<std::size_t> active;
  for (std::size_t idx : order) {
    const double x = xmin(idx);
    active.erase(std::remove_if(active.begin(), active.end(), [&](std::size_t s) { return xmax(s) < x; }),
                 active.end());
    const double ylo = std::min(v[idx].imag(), v[idx + 1].imag());
    const double yhi = std::max(v[idx].imag(), v[idx + 1].imag());
    for (std::size_t s : active) {
      if (s + 1 == idx || idx + 1 == s) continue;
      const double slo = std::min(v[s].imag(), v[s + 1].imag());
      const double shi = std::max(v[s].imag(), v[s + 1].imag());
      if (shi < ylo || slo > yhi) continue;
      if (segments_intersect(v[s], v[s + 1], v[idx], v[idx + 1])) return false;
    }
    active.push_back(idx);
  }
  return true;
}

}  // namespace pblab
