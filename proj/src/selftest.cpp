#include "pblab/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pblab/analysis.hpp"
#include "pblab/curves.hpp"
#include "pblab/functions.hpp"
#include "pblab/random.hpp"
#include "pblab/stolz.hpp"

namespace pblab {
namespace {

constexpr double kMetricSlack = 1e-12;
constexpr double kSupSlack = 1e-9;
constexpr double kStolzTolerance = 1e-9;
// Samples of the late zigzags sit within 1e-9 of the circle; double precision
// loses about seven digits of d_ph there against the 50-digit oracle.
constexpr double kLemma4OracleTolerance = 1e-6;
constexpr double kThresholdTolerance = 1e-6;
constexpr double kTwoValueTolerance = 1e-2;
constexpr double kClusterAgreement = 1e-3;

std::string describe(const std::vector<std::string>& failed) {
  if (failed.empty()) return "ok";
  std::string s = "failed:";
  for (const auto& f : failed) s += " " + f;
  return s;
}

CriterionResult finish(int id, std::string name, const std::vector<std::string>& failed, Json metrics) {
  return {id, std::move(name), failed.empty(), describe(failed), std::move(metrics)};
}

}  // namespace

CriterionResult criterion_metric_suite(std::uint64_t seed) {
  Rng rng(seed);
  double identity = 0.0, symmetry = 0.0, triangle_ph = 0.0, triangle_h = 0.0, triangle_s = 0.0;
  double invariance_ph = 0.0, invariance_h = 0.0, round_trip = 0.0;
  constexpr int kTriples = 10000;
  for (int i = 0; i < kTriples; ++i) {
    const DiskPoint a(rng.in_disk(0.99)), b(rng.in_disk(0.99)), c(rng.in_disk(0.99));
    const MobiusAutomorphism phi(DiskPoint(rng.in_disk(0.9)), rng.uniform(-kPi, kPi));
    const double dab = pseudo_hyperbolic_distance(a, b);
    identity = std::max(identity, pseudo_hyperbolic_distance(a, a));
    symmetry = std::max(symmetry, std::abs(dab - pseudo_hyperbolic_distance(b, a)));
    triangle_ph = std::max(triangle_ph, dab - pseudo_hyperbolic_distance(a, c) - pseudo_hyperbolic_distance(c, b));
    const double hab = hyperbolic_distance(a, b);
    triangle_h = std::max(triangle_h, (hab - hyperbolic_distance(a, c) - hyperbolic_distance(c, b)) / std::max(1.0, hab));
    triangle_s = std::max(triangle_s, spherical_distance(a.value(), b.value()) -
                                          spherical_distance(a.value(), c.value()) -
                                          spherical_distance(c.value(), b.value()));
    invariance_ph = std::max(invariance_ph, std::abs(pseudo_hyperbolic_distance(phi(a), phi(b)) - dab));
    invariance_h = std::max(invariance_h, std::abs(hyperbolic_distance(phi(a), phi(b)) - hab) / std::max(1.0, hab));
    const double r = rng.uniform(0.0, 0.999);
    round_trip = std::max(round_trip, std::abs(h_to_ph(ph_to_h(r)) - r));
    const double big = rng.uniform(0.0, 8.0);
    round_trip = std::max(round_trip, std::abs(ph_to_h(h_to_ph(big)) - big) / std::max(1.0, big));
  }
  std::vector<std::string> failed;
  if (identity > kMetricSlack) failed.push_back("identity");
  if (symmetry > kMetricSlack) failed.push_back("symmetry");
  if (triangle_ph > kMetricSlack) failed.push_back("triangle_ph");
  if (triangle_h > kMetricSlack) failed.push_back("triangle_h");
  if (triangle_s > kMetricSlack) failed.push_back("triangle_s");
  if (invariance_ph > kMetricSlack) failed.push_back("invariance_ph");
  if (invariance_h > kMetricSlack) failed.push_back("invariance_h");
  if (round_trip > kMetricSlack) failed.push_back("round_trip");
  Json m;
  m["triples"] = kTriples;
  m["slack"] = kMetricSlack;
  m["max_identity"] = identity;
  m["max_symmetry"] = symmetry;
  m["max_triangle_excess_ph"] = triangle_ph;
  m["max_triangle_excess_h"] = triangle_h;
  m["max_triangle_excess_s"] = triangle_s;
  m["max_invariance_ph"] = invariance_ph;
  m["max_invariance_h"] = invariance_h;
  m["max_round_trip"] = round_trip;
  return finish(1, "metric suite", failed, m);
}

CriterionResult criterion_disk_image(std::uint64_t seed) {
  Rng rng(seed);
  constexpr int kPairs = 100;
  constexpr int kSamples = 10000;
  int passed = 0;
  for (int i = 0; i < kPairs; ++i) {
    const DiskPoint w(rng.in_disk(0.95));
    const double r = rng.uniform(0.01, 0.95);
    if (disk_image_check(w, r, kSamples, rng.next())) ++passed;
  }
  std::vector<std::string> failed;
  if (passed != kPairs) failed.push_back("disk_image_check");
  return finish(2, "disk image oracle", failed, {{"pairs", kPairs}, {"samples", kSamples}, {"passed", passed}});
}

CriterionResult criterion_equivalence(std::uint64_t) {
  constexpr int kMaxLevel = 12;
  struct Named {
    std::string name;
    BoundaryCurve curve;
  };
  std::vector<Named> curves;
  curves.push_back({"radius:0", canonical_curve(CurveKind::radius, 0.0, 0.0)});
  for (double a : {-kPi / 4, kPi / 6, kPi / 3}) {
    curves.push_back({"chord:0:" + std::to_string(a), canonical_curve(CurveKind::chord, 0.0, a)});
  }
  for (double a : {0.3, -0.5}) {
    curves.push_back({"hypercycle:0:" + std::to_string(a), canonical_curve(CurveKind::hypercycle, 0.0, a)});
  }
  const std::size_t n = curves.size();
  std::vector<std::vector<Equivalence>> v(n, std::vector<Equivalence>(n));
  Json pairs = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto res = are_equivalent(curves[i].curve, curves[j].curve, kMaxLevel);
      v[i][j] = res.verdict;
      if (i <= j) {
        pairs.push_back({{"curve1", curves[i].name},
                         {"curve2", curves[j].name},
                         {"verdict", to_string(res.verdict)},
                         {"final_distance", json_number(res.symmetric.back().value)}});
      }
    }
  }
  bool all_equivalent = true, reflexive = true, symmetric = true, transitive = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i][i] != Equivalence::equivalent) reflexive = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (v[i][j] != Equivalence::equivalent) all_equivalent = false;
      if (v[i][j] != v[j][i]) symmetric = false;
      for (std::size_t k = 0; k < n; ++k) {
        if (v[i][j] == Equivalence::equivalent && v[j][k] == Equivalence::equivalent &&
            v[i][k] != Equivalence::equivalent) {
          transitive = false;
        }
      }
    }
  }

  const auto radius = canonical_curve(CurveKind::radius, 0.0, 0.0);
  const auto horo = canonical_curve(CurveKind::horocycle, 0.0, 0.5);
  const auto rh = are_equivalent(radius, horo, kMaxLevel);
  bool increasing = true;
  Json directed = Json::array();
  double prev = -1.0;
  for (const LevelValue& lv : rh.forward) {
    if (lv.level < 4) continue;
    directed.push_back({{"level", lv.level}, {"value", json_number(lv.value)}});
    if (!(lv.value > prev)) increasing = false;
    prev = lv.value;
  }

  std::vector<std::string> failed;
  if (!all_equivalent) failed.push_back("non_tangential_family");
  if (!reflexive) failed.push_back("reflexive");
  if (!symmetric) failed.push_back("symmetric");
  if (!transitive) failed.push_back("transitive");
  if (!increasing) failed.push_back("horocycle_growth");
  if (rh.verdict != Equivalence::not_equivalent) failed.push_back("horocycle_verdict");
  Json m;
  m["max_level"] = kMaxLevel;
  m["pairs"] = pairs;
  m["reflexive"] = reflexive;
  m["symmetric"] = symmetric;
  m["transitive"] = transitive;
  m["radius_horocycle_verdict"] = to_string(rh.verdict);
  m["radius_horocycle_directed"] = directed;
  return finish(3, "equivalence relation", failed, m);
}

CriterionResult criterion_lemma4(std::uint64_t) {
  constexpr double kR = 0.5;
  constexpr int kMax = 8;
  constexpr int kContainLevel = 44;
  const auto profile = lemma4_frechet_profile(kR, kMax);
  bool increasing = true;
  double oracle_error = 0.0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (i > 0 && !(profile[i] > profile[i - 1])) increasing = false;
    oracle_error = std::max(oracle_error, std::abs(profile[i] - frozen::kLemma4Frechet[i]));
  }
  int outside = 0;
  int checked = 0;
  bool simple = true;
  for (int n = 1; n <= kMax; ++n) {
    const auto pair = build_lemma4_pair(kR, n);
    if (!is_simple_polyline(pair.markers.band_polyline)) simple = false;
    const CurvilinearAngle host(pair.gamma1, kR);
    for (const DiskPoint& z : pair.gamma2.points(kContainLevel)) {
      ++checked;
      if (!angle_contains(host, z, kContainLevel + 2)) ++outside;
    }
  }
  const double at5 = profile[4];
  const bool above_threshold = at5 >= frozen::kLemma4Frechet[4] - kLemma4OracleTolerance;

  std::vector<std::string> failed;
  if (outside != 0) failed.push_back("containment");
  if (!simple) failed.push_back("simplicity");
  if (!increasing) failed.push_back("strictly_increasing");
  if (oracle_error > kLemma4OracleTolerance) failed.push_back("oracle_agreement");
  if (!above_threshold) failed.push_back("threshold_at_5");
  Json m;
  m["r"] = kR;
  Json prof = Json::array();
  for (std::size_t i = 0; i < profile.size(); ++i) {
    prof.push_back({{"n", static_cast<int>(i + 1)}, {"frechet", profile[i]}});
  }
  m["frechet"] = prof;
  m["max_oracle_error"] = oracle_error;
  m["threshold_at_5"] = frozen::kLemma4Frechet[4];
  m["exceeds_10_at_5"] = at5 > 10.0;
  m["samples_checked"] = checked;
  m["samples_outside"] = outside;
  m["simple"] = simple;
  return finish(4, "zigzag construction", failed, m);
}

CriterionResult criterion_normality(std::uint64_t seed) {
  const auto radius = canonical_curve(CurveKind::radius, 0.0, 0.0);
  const CurvilinearAngle host(radius, 0.5);
  std::vector<std::string> failed;
  Json m;

  // Global sup of (1 - |z|^2) f# for automorphisms is 1; sample the disk and the angle.
  Rng rng(seed);
  std::vector<FunctionHandle> automorphisms = {identity_function()};
  for (int i = 0; i < 4; ++i) {
    automorphisms.push_back(mobius_function(DiskPoint(rng.in_disk(0.9)), rng.uniform(-kPi, kPi)));
  }
  double sup = 0.0;
  for (const auto& f : automorphisms) {
    sup = std::max(sup, normality_sup(f, host, 14).levels.back().sup);
    for (int i = 0; i < 2000; ++i) sup = std::max(sup, lehto_virtanen_value(f, DiskPoint(rng.in_disk(0.999))));
  }
  if (!(sup <= 1.0 + kSupSlack)) failed.push_back("automorphism_sup");
  m["automorphism_sup"] = sup;

  const auto schedule = Example1Schedule::make_default();
  const auto f0 = example1_f0(schedule);
  const auto rep = normality_sup(f0, host, 14);
  if (rep.verdict != TrendVerdict::bounded) failed.push_back("example1_bounded");
  Json levels = Json::array();
  for (const auto& l : rep.levels) {
    if (l.level >= 4) levels.push_back({{"level", l.level}, {"sup", json_number(l.sup)}});
  }
  m["example1_verdict"] = to_string(rep.verdict);
  m["example1_levels"] = levels;

  std::vector<double> radii;
  for (std::size_t k = 0; k < schedule.size(); ++k) radii.push_back(schedule.hyperbolic_diameter(k));
  const auto t9 = p_indicator_t9(f0, schedule.poles, radii);
  if (t9.trend != TrendVerdict::diverging) failed.push_back("pole_sequence_diverging");
  m["pole_sequence"] = to_json(t9);
  return finish(5, "normality", failed, m);
}

CriterionResult criterion_cluster_family(std::uint64_t seed) {
  constexpr int kShells = 16;
  constexpr int kLevel = kShells + 4;
  constexpr int kFamilyCount = 16;
  const auto radius = canonical_curve(CurveKind::radius, 0.0, 0.0);
  const auto schedule = Example1Schedule::make_default();
  struct Case {
    std::string name;
    FunctionHandle f;
    ExtendedComplex c;
  };
  const std::vector<Case> cases = {{"identity", identity_function(), ExtendedComplex(1.0)},
                                   {"example2_f1", example2_f1(schedule), ExtendedComplex(0.0)}};
  std::vector<std::string> failed;
  Json rows = Json::array();
  for (const Case& cs : cases) {
    for (double r : {0.2, 0.5}) {
      const CurvilinearAngle host(radius, r);
      const ClusterRegion region{[&host](DiskPoint z) { return angle_contains(host, z, kLevel); }, {}};
      const auto est = cluster_estimate(cs.f, region, 0.0, kShells, seed);
      const auto fam = renormalized_family_check(cs.f, radial_sequence(0.0, kFamilyCount), r, cs.c);
      double gap = std::numeric_limits<double>::infinity();
      if (est.limit_candidate && fam.converges) gap = spherical_distance(*est.limit_candidate, fam.target);
      const bool ok = gap < kClusterAgreement;
      if (!ok) failed.push_back(cs.name + "@" + std::to_string(r));
      rows.push_back({{"function", cs.name},
                      {"r", r},
                      {"cluster_candidate", est.limit_candidate ? to_json(*est.limit_candidate) : Json(nullptr)},
                      {"family_target", to_json(fam.target)},
                      {"family_converges", fam.converges},
                      {"family_final_sup", json_number(fam.sup_ds.back())},
                      {"agreement", json_number(gap)}});
    }
  }

  // Poles of f1 lie outside Delta_0.3 but their centres are added as atoms.
  const auto f1 = example2_f1(schedule);
  const CurvilinearAngle narrow(radius, 0.3);
  const ClusterRegion with_poles{[&narrow](DiskPoint z) { return angle_contains(narrow, z, kLevel); },
                                 schedule.poles};
  const auto est = cluster_estimate(f1, with_poles, 0.0, kShells, seed);
  int two_value_shells = 0;
  Json shells = Json::array();
  for (const ClusterShell& s : est.shells) {
    double to_zero = 2.0, to_inf = 2.0;
    for (const auto& v : s.values) {
      to_zero = std::min(to_zero, spherical_distance(v, ExtendedComplex(0.0)));
      to_inf = std::min(to_inf, spherical_distance(v, ExtendedComplex::infinity()));
    }
    const bool both = to_zero < kTwoValueTolerance && to_inf < kTwoValueTolerance;
    if (both) ++two_value_shells;
    shells.push_back({{"shell", s.index}, {"min_ds_zero", to_zero}, {"min_ds_infinity", to_inf}, {"both", both}});
  }
  if (two_value_shells < 2) failed.push_back("two_value_cluster");
  Json m;
  m["shells"] = kShells;
  m["agreement"] = rows;
  m["two_value_shells"] = two_value_shells;
  m["two_value_detail"] = shells;
  return finish(6, "cluster and family limits", failed, m);
}

CriterionResult criterion_stolz(std::uint64_t seed) {
  std::vector<std::string> failed;
  Json per_alpha = Json::array();
  Rng rng(seed);
  for (double alpha : {kPi / 4, kPi / 3}) {
    const StolzMap map(alpha);
    const double at_vertex_side = std::abs(map.forward(1.0 - map.rho()) + 1.0);
    const double near_one = std::abs(map.forward(1.0 - 1e-14 * map.rho()) - 1.0);
    double closed = 0.0, printed = 0.0, round_trip = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double t = map.rho() * std::exp(rng.uniform(std::log(1e-8), 0.0));
      const double psi = rng.uniform(-0.999 * alpha, 0.999 * alpha);
      const Complex z = 1.0 - std::polar(std::min(t, 0.999 * map.rho()), psi);
      const Complex w = map.forward(z);
      closed = std::max(closed, std::abs(map.forward_closed_form(z) - w));
      printed = std::max(printed, std::abs(map.forward_printed_form(z) - w));
      const Complex target = rng.in_disk(0.999);
      round_trip = std::max(round_trip, std::abs(map.forward(map.inverse(target)) - target));
    }
    if (at_vertex_side > kStolzTolerance) failed.push_back("phi(1-rho)");
    if (near_one > kStolzTolerance) failed.push_back("phi->1");
    if (closed > kStolzTolerance) failed.push_back("closed_form");
    if (round_trip > kStolzTolerance) failed.push_back("round_trip");
    per_alpha.push_back({{"alpha", alpha},
                         {"rho", map.rho()},
                         {"phi_one_minus_rho_error", at_vertex_side},
                         {"phi_near_vertex_error", near_one},
                         {"closed_form_max_error", closed},
                         {"printed_form_max_error", printed},
                         {"round_trip_max_error", round_trip}});
  }
  Json lemma6 = Json::array();
  for (double alpha : {kPi / 4, kPi / 3}) {
    for (double beta : {kPi / 6, kPi / 4}) {
      const auto res = lemma6_check(alpha, beta, 10000, seed);
      if (!res.pass) failed.push_back("lemma6");
      lemma6.push_back(to_json(res));
    }
  }
  Json m;
  m["tolerance"] = kStolzTolerance;
  m["maps"] = per_alpha;
  m["ratio_bounds"] = lemma6;
  return finish(7, "stolz map", failed, m);
}

CriterionResult criterion_decay(std::uint64_t) {
  std::vector<std::string> failed;
  const auto radius = canonical_curve(CurveKind::radius, 0.0, 0.0);
  const auto h = gallery("saginjan_h");
  double identity = 0.0;
  for (const DiskPoint& z : radius.points(30)) {
    const double t = 1.0 - z.real();
    if (t <= 0.0) continue;
    identity = std::max(identity, std::abs(-h.log_abs(z) * t - 1.0));
  }
  if (identity > kSupSlack) failed.push_back("saginjan_identity");

  constexpr int kLevel = 20;
  const auto log_e = decay_margin(h, radius, DecayProfile::parse("log_e_plus_inverse", 1.0), kLevel);
  const auto log_one = decay_margin(h, radius, DecayProfile::parse("log_one_plus_inverse", 1.0), kLevel);
  auto threshold_error = [](const MarginTable& t, double expected) {
    return t.threshold ? std::abs(*t.threshold - expected) : std::numeric_limits<double>::infinity();
  };
  const double err_e = threshold_error(log_e, frozen::kSaginjanThresholdLogE);
  const double err_one = threshold_error(log_one, frozen::kSaginjanThresholdLogOne);
  if (log_e.verdict != DecayVerdict::violated || !(err_e <= kThresholdTolerance)) failed.push_back("threshold_log_e");
  if (log_one.verdict != DecayVerdict::violated || !(err_one <= kThresholdTolerance)) {
    failed.push_back("threshold_log_one");
  }

  const auto sq = gallery("square_exp");
  const auto sq_margin = decay_margin(sq, radius, DecayProfile::parse("constant:1", 2.0), kLevel);
  if (sq_margin.verdict != DecayVerdict::satisfied) failed.push_back("square_exp_decay");
  const auto sq_norm = normality_sup(sq, CurvilinearAngle(radius, 0.5), 14);
  if (sq_norm.verdict != TrendVerdict::diverging) failed.push_back("square_exp_not_normal");

  Json m;
  m["saginjan_identity_max_error"] = identity;
  m["log_e_plus_inverse"] = to_json(log_e);
  m["log_e_plus_inverse_threshold_error"] = json_number(err_e);
  m["log_one_plus_inverse"] = to_json(log_one);
  m["log_one_plus_inverse_threshold_error"] = json_number(err_one);
  m["square_exp_decay"] = to_json(sq_margin);
  m["square_exp_normality_verdict"] = to_string(sq_norm.verdict);
  return finish(8, "decay hypotheses", failed, m);
}

std::vector<CriterionResult> run_selftest(std::uint64_t seed) {
  return {criterion_metric_suite(seed), criterion_disk_image(seed), criterion_equivalence(seed),
          criterion_lemma4(seed),       criterion_normality(seed),  criterion_cluster_family(seed),
          criterion_stolz(seed),        criterion_decay(seed)};
}

Json to_json(const CriterionResult& r) {
  Json j;
  j["id"] = r.id;
  j["name"] = r.name;
  j["pass"] = r.pass;
  j["detail"] = r.detail;
  j["metrics"] = r.metrics;
  return j;
}

}  // namespace pblab
