#include "pblab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pblab/random.hpp"

namespace pblab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGolden = 0.6180339887498949;
constexpr int kGoldenIterations = 60;
constexpr int kRefineRounds = 4;

TrendVerdict trend_from_logs(const std::vector<double>& logs) {
  const int w = TrendRule::kWindow;
  if (static_cast<int>(logs.size()) < w) return TrendVerdict::inconclusive;
  const auto tail = logs.end() - w;
  const double hi = *std::max_element(tail, logs.end());
  const double lo = *std::min_element(tail, logs.end());
  if (hi == -kInf) return TrendVerdict::bounded;  // identically zero
  if (hi - lo <= std::log(TrendRule::kPlateauRatio)) return TrendVerdict::bounded;
  if (static_cast<int>(logs.size()) >= w + 1) {
    bool grows = true;
    // Rounding in log() must not reject an exact doubling.
    const double step = std::log(TrendRule::kGrowthFactor) - 1e-12;
    for (auto it = logs.end() - w; it != logs.end(); ++it) {
      if (!(*it - *(it - 1) >= step)) grows = false;
    }
    if (grows) return TrendVerdict::diverging;
  }
  return TrendVerdict::inconclusive;
}

int level_of(double gap, int max_level) {
  // Smallest k >= 1 with gap >= 2^-k; max_level + 1 when beyond the truncation.
  for (int k = 1; k <= max_level; ++k) {
    if (gap >= std::ldexp(1.0, -k)) return k;
  }
  return max_level + 1;
}

double gap_of(Complex z) {
  const double a = std::abs(z);
  return 1.0 - a;
}

// Golden-section search for the maximum of g on [a, b].
template <typename G>
std::pair<double, double> golden_max(G&& g, double a, double b) {
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = g(x1);
  double f2 = g(x2);
  for (int i = 0; i < kGoldenIterations; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = g(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = g(x1);
    }
  }
  return f1 >= f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

}  // namespace

std::string to_string(TrendVerdict v) {
  switch (v) {
    case TrendVerdict::bounded:
      return "bounded";
    case TrendVerdict::diverging:
      return "diverging";
    case TrendVerdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

TrendVerdict trend_verdict(const std::vector<double>& values) {
  std::vector<double> logs;
  logs.reserve(values.size());
  for (double v : values) logs.push_back(v > 0.0 ? std::log(v) : -kInf);
  return trend_from_logs(logs);
}

NormalityReport normality_sup(const FunctionHandle& f, const CurvilinearAngle& region, int max_level) {
  if (max_level < 4) throw DomainError("normality_sup needs max_level >= 4");
  const BoundaryCurve& curve = region.curve();
  const double r = region.deflection();
  const double rh = ph_to_h(r);
  const Complex endpoint = curve.endpoint();
  const double near_radius = 1.0 - r;

  NormalityReport rep;
  rep.function_label = f.label();
  rep.curve_label = curve.label();
  rep.deflection = r;

  std::vector<double> level_log(max_level + 1, -kInf);
  std::vector<int> level_count(max_level + 1, 0);
  std::vector<double> level_abs(max_level + 1, 0.0);

  // Returns the log value at z, recording it; -inf for points past the truncation.
  auto visit = [&](Complex zc) -> double {
    const auto z = DiskPoint::try_make(zc);
    if (!z) return -kInf;
    const int k = level_of(gap_of(zc), max_level);
    if (k > max_level) return -kInf;
    ++rep.evaluations;
    double v = -kInf;
    try {
      v = log_lehto_virtanen_value(f, *z);
      if (std::abs(zc - endpoint) < near_radius) {
        level_abs[k] = std::max(level_abs[k], std::exp(f.log_abs(*z)));
      }
    } catch (const EvaluationError&) {
      ++rep.failures;
      return -kInf;
    }
    level_log[k] = std::max(level_log[k], v);
    ++level_count[k];
    return v;
  };

  // Cover disk D_ph(c, r) = phi_c(D(r)) on rings of hyperbolic spacing <= mesh.
  const int rings = std::max(1, static_cast<int>(std::ceil(rh / NormalityReport::kCoverMesh)));
  std::vector<double> ring_radius(rings + 1);
  std::vector<int> ring_count(rings + 1, 1);
  for (int j = 0; j <= rings; ++j) {
    const double h = rh * j / rings;
    ring_radius[j] = std::tanh(0.5 * h);
    if (j > 0) {
      const double circ = 2.0 * kPi * std::sinh(h);
      ring_count[j] = std::max(8, static_cast<int>(std::ceil(circ / NormalityReport::kCoverMesh)));
    }
  }

  const auto ref = curve.refine(max_level);
  std::vector<DiskPoint> stations;
  for (std::size_t i = 0; i < ref->points.size(); i += 2) stations.push_back(ref->points[i]);
  if (ref->points.size() % 2 == 0) stations.push_back(ref->points.back());
  for (const DiskPoint& station : stations) {
    const MobiusAutomorphism phi(station);
    double best = -kInf;
    int best_ring = 0;
    double best_psi = 0.0;
    for (int j = 0; j <= rings; ++j) {
      for (int a = 0; a < ring_count[j]; ++a) {
        const double psi = 2.0 * kPi * a / ring_count[j];
        const double v = visit(phi.apply_raw(std::polar(ring_radius[j], psi)));
        if (v > best) {
          best = v;
          best_ring = j;
          best_psi = psi;
        }
      }
    }
    if (best == -kInf || !std::isfinite(best)) continue;

    // Narrow ridges escape the grid; refine around the best grid point.
    double rho = ring_radius[best_ring];
    double psi = best_psi;
    const double drho_lo = best_ring > 0 ? rho - ring_radius[best_ring - 1] : 0.0;
    const double drho_hi = best_ring < rings ? ring_radius[best_ring + 1] - rho : 0.0;
    const double dpsi = 2.0 * kPi / ring_count[std::max(best_ring, 1)];
    double lo_rho = rho - drho_lo;
    double hi_rho = rho + drho_hi;
    double lo_psi = psi - dpsi;
    double hi_psi = psi + dpsi;
    for (int round = 0; round < kRefineRounds; ++round) {
      auto by_rho = [&](double x) { return visit(phi.apply_raw(std::polar(x, psi))); };
      auto [x, fx] = golden_max(by_rho, lo_rho, hi_rho);
      if (fx > best) {
        best = fx;
        rho = x;
      }
      auto by_psi = [&](double y) { return visit(phi.apply_raw(std::polar(rho, y))); };
      auto [y, fy] = golden_max(by_psi, lo_psi, hi_psi);
      if (fy > best) {
        best = fy;
        psi = y;
      }
      // Shrink the windows around the current best.
      const double sr = 0.5 * (hi_rho - lo_rho);
      const double sp = 0.5 * (hi_psi - lo_psi);
      lo_rho = std::max(0.0, rho - 0.5 * sr);
      hi_rho = std::min(r, rho + 0.5 * sr);
      lo_psi = psi - 0.5 * sp;
      hi_psi = psi + 0.5 * sp;
    }
  }

  std::vector<double> logs;
  double run = -kInf;
  double run_abs = 0.0;
  for (int k = 1; k <= max_level; ++k) {
    run = std::max(run, level_log[k]);
    run_abs = std::max(run_abs, level_abs[k]);
    NormalityLevel lv;
    lv.level = k;
    lv.log_sup = run;
    lv.sup = std::exp(run);
    lv.samples = level_count[k];
    lv.max_abs_near_endpoint = run_abs;
    rep.levels.push_back(lv);
    logs.push_back(run);
  }
  if (rep.evaluations > 0 &&
      rep.failures > NormalityReport::kFailureFraction * rep.evaluations) {
    rep.verdict = TrendVerdict::inconclusive;
  } else {
    rep.verdict = trend_from_logs(logs);
  }
  return rep;
}

namespace {

void finish_indicator(IndicatorReport& rep) {
  const int n = static_cast<int>(rep.values.size());
  rep.positive = n > 0;
  for (double t : IndicatorReport::kThresholds) {
    int from = n;
    while (from > 0 && rep.values[from - 1] > t) --from;
    const int idx = from < n ? from : -1;
    rep.exceed_from.push_back(idx);
    if (idx < 0 || n - idx < 2) rep.positive = false;
  }
  rep.trend = trend_verdict(rep.values);
}

}  // namespace

IndicatorReport p_indicator_t8(const FunctionHandle& f, const std::vector<DiskPoint>& sequence) {
  IndicatorReport rep;
  for (const DiskPoint& z : sequence) rep.values.push_back(lehto_virtanen_value(f, z));
  finish_indicator(rep);
  return rep;
}

IndicatorReport p_indicator_t9(const FunctionHandle& f, const std::vector<DiskPoint>& sequence,
                               const std::vector<double>& radii) {
  if (radii.size() != sequence.size()) throw DomainError("one radius per sequence point required");
  IndicatorReport rep;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    const double rn = radii[i];
    if (!(rn > 0.0 && std::isfinite(rn))) throw DomainError("radii must be positive");
    const MobiusAutomorphism phi(sequence[i]);
    const double mesh = rn / 10.0;
    double best = lehto_virtanen_value(f, sequence[i]);
    for (int j = 1; j <= 10; ++j) {
      const double h = j * mesh;
      const double rho = std::tanh(0.5 * h);
      const int count = std::max(6, static_cast<int>(std::ceil(2.0 * kPi * std::sinh(h) / mesh)));
      for (int a = 0; a < count; ++a) {
        const auto z = DiskPoint::try_make(phi.apply_raw(std::polar(rho, 2.0 * kPi * a / count)));
        if (!z) continue;
        try {
          best = std::max(best, lehto_virtanen_value(f, *z));
        } catch (const EvaluationError&) {
        }
      }
    }
    rep.values.push_back(best);
  }
  finish_indicator(rep);
  return rep;
}

Theorem10Report theorem10_check(const FunctionHandle& f, const std::vector<DiskPoint>& seq_a,
                                const std::vector<DiskPoint>& seq_b, const ExtendedComplex& alpha,
                                double delta) {
  if (seq_a.size() != seq_b.size()) throw DomainError("sequences must have equal length");
  if (seq_a.size() < 3) throw DomainError("sequences need at least three points");
  Theorem10Report rep;
  for (std::size_t i = 0; i < seq_a.size(); ++i) {
    rep.ds_a.push_back(spherical_distance(f.eval(seq_a[i]), alpha));
    rep.ds_b.push_back(spherical_distance(f.eval(seq_b[i]), alpha));
    rep.dh.push_back(hyperbolic_distance(seq_a[i], seq_b[i]));
  }
  const std::size_t n = seq_a.size();
  auto tail_below = [n](const std::vector<double>& v, double bound) {
    for (std::size_t i = n - 3; i < n; ++i) {
      if (!(v[i] <= bound)) return false;
    }
    return true;
  };
  rep.values_converge = tail_below(rep.ds_a, Theorem10Report::kConvergence);
  rep.points_merge = tail_below(rep.dh, Theorem10Report::kConvergence);
  rep.values_separated = true;
  for (std::size_t i = n / 2; i < n; ++i) {
    if (!(rep.ds_b[i] >= delta)) rep.values_separated = false;
  }
  return rep;
}

ClusterEstimate cluster_estimate(const FunctionHandle& f, const ClusterRegion& region, double theta,
                                 int shells, std::uint64_t seed) {
  if (shells < 1) throw DomainError("at least one shell required");
  ClusterEstimate est;
  Rng rng(seed);
  const Complex e = std::polar(1.0, theta);
  const int target = ClusterEstimate::kTargetSamples;
  const int max_attempts = target * target;
  int empty_run = 0;

  for (int k = 1; k <= shells; ++k) {
    ClusterShell shell;
    shell.index = k;
    shell.lo = std::ldexp(1.0, -(k + 1));
    shell.hi = std::ldexp(1.0, -k);
    auto record = [&](DiskPoint z) {
      try {
        shell.values.push_back(f.eval(z));
      } catch (const EvaluationError&) {
        ++est.failures;
      }
    };
    int accepted = 0;
    for (int a = 0; a < max_attempts && accepted < target; ++a) {
      const double t = rng.uniform(shell.lo, shell.hi);
      const double psi = rng.uniform(-0.5 * kPi, 0.5 * kPi);
      const auto z = DiskPoint::try_make(e * (1.0 - std::polar(t, psi)));
      if (!z || !region.contains(*z)) continue;
      ++accepted;
      record(*z);
    }
    for (const DiskPoint& atom : region.atoms) {
      const double d = std::abs(atom.value() - e);
      if (d >= shell.lo && d < shell.hi) record(atom);
    }

    if (shell.values.empty()) {
      ++est.empty_shells;
      if (++empty_run >= ClusterEstimate::kMaxEmptyRun) est.inconclusive = true;
    } else {
      empty_run = 0;
      double sum[3] = {0.0, 0.0, 0.0};
      for (std::size_t i = 0; i < shell.values.size(); ++i) {
        double p[3];
        shell.values[i].to_sphere(p);
        for (int c = 0; c < 3; ++c) sum[c] += p[c];
        for (std::size_t j = i + 1; j < shell.values.size(); ++j) {
          shell.diameter = std::max(shell.diameter, spherical_distance(shell.values[i], shell.values[j]));
        }
      }
      const double norm = std::sqrt(sum[0] * sum[0] + sum[1] * sum[1] + sum[2] * sum[2]);
      if (norm > 1e-12) {
        for (double& c : sum) c /= norm;
        shell.mean = ExtendedComplex::from_sphere(sum);
      }
    }
    est.shells.push_back(std::move(shell));
  }

  if (!est.inconclusive) {
    const ClusterShell* last = nullptr;
    const ClusterShell* prev = nullptr;
    for (const ClusterShell& s : est.shells) {
      if (s.values.empty()) continue;
      prev = last;
      last = &s;
    }
    if (last && prev && last->mean && prev->mean &&
        last->diameter < ClusterEstimate::kConvergence &&
        spherical_distance(*last->mean, *prev->mean) < ClusterEstimate::kConvergence) {
      est.limit_candidate = last->mean;
    }
  }
  return est;
}

FamilyReport renormalized_family_check(const FunctionHandle& f, const std::vector<DiskPoint>& w,
                                       double r1, const ExtendedComplex& c) {
  if (!(r1 > 0.0 && r1 < 1.0)) throw DomainError("compact radius must lie in (0, 1)");
  FamilyReport rep;
  rep.w = w;
  rep.r1 = r1;
  rep.target = c;
  const double h = FamilyReport::kGridMesh;
  const int m = static_cast<int>(std::floor(r1 / h));
  std::vector<Complex> grid;
  for (int i = -m; i <= m; ++i) {
    for (int j = -m; j <= m; ++j) {
      const Complex z{i * h, j * h};
      if (std::abs(z) <= r1) grid.push_back(z);
    }
  }
  for (const DiskPoint& wn : w) {
    const MobiusAutomorphism phi(wn);
    double sup = 0.0;
    for (const Complex& z : grid) {
      const auto p = DiskPoint::try_make(phi.apply_raw(z));
      if (!p) {
        ++rep.failures;
        continue;
      }
      try {
        sup = std::max(sup, spherical_distance(f.eval(*p), c));
      } catch (const EvaluationError&) {
        ++rep.failures;
      }
    }
    rep.sup_ds.push_back(sup);
  }
  rep.converges = !rep.sup_ds.empty() && rep.sup_ds.back() < FamilyReport::kConvergence;
  return rep;
}

std::vector<DiskPoint> radial_sequence(double theta, int count) {
  std::vector<DiskPoint> out;
  const Complex e = std::polar(1.0, theta);
  for (int n = 1; n <= count; ++n) out.emplace_back(e * (1.0 - std::ldexp(1.0, -n)));
  return out;
}

}  // namespace pblab
