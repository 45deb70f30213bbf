#include "pblab/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

#include "pblab/analysis.hpp"
#include "pblab/functions.hpp"
#include "pblab/report.hpp"
#include "pblab/selftest.hpp"
#include "pblab/stolz.hpp"

namespace pblab {

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> defaults = {
      {"cluster_convergence", ClusterEstimate::kConvergence},
      {"failure_fraction", NormalityReport::kFailureFraction},
      {"family_convergence", FamilyReport::kConvergence},
      {"theorem10_convergence", Theorem10Report::kConvergence},
  };
  return defaults;
}

double tolerance(const RunConfig& config, const std::string& name) {
  const auto& defaults = default_tolerances();
  const auto it = defaults.find(name);
  if (it == defaults.end()) throw DomainError("unknown tolerance '" + name + "'");
  const auto o = config.tolerances.find(name);
  if (o == config.tolerances.end()) return it->second;
  if (!(o->second > 0.0 && o->second <= it->second)) {
    throw DomainError("tolerance " + name + " may only be tightened (default " + std::to_string(it->second) + ")");
  }
  return o->second;
}

namespace {

double parse_double(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw DomainError("not a number: '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) throw DomainError("not a finite number: '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(path + ": " + e.what());
  }
}

std::vector<Complex> complex_array(const Json& arr, const std::string& where) {
  if (!arr.is_array()) throw DomainError(where + ": expected an array of [re, im] pairs");
  std::vector<Complex> out;
  for (const Json& p : arr) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw DomainError(where + ": expected [re, im]");
    }
    out.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return out;
}

}  // namespace

Complex parse_complex(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() == 1) return {parse_double(parts[0]), 0.0};
  if (parts.size() == 2) return {parse_double(parts[0]), parse_double(parts[1])};
  throw DomainError("expected re,im but got '" + text + "'");
}

ExtendedComplex parse_extended(const std::string& text) {
  if (text == "inf" || text == "infinity") return ExtendedComplex::infinity();
  return parse_complex(text);
}

BoundaryCurve curve_from_spec(const std::string& spec) {
  if (spec.rfind("file:", 0) == 0) {
    const std::string path = spec.substr(5);
    const Json j = read_json_file(path);
    if (!j.is_object() || !j.contains("endpoint_angle") || !j.contains("samples")) {
      throw DomainError(path + ": curve files need endpoint_angle and samples");
    }
    return BoundaryCurve::from_polyline(j["endpoint_angle"].get<double>(), complex_array(j["samples"], path),
                                        spec);
  }
  const auto parts = split(spec, ':');
  if (parts.empty() || parts.size() > 3) throw DomainError("curve must be kind:theta[:param]");
  if (parts[0] == "zigzag") {
    if (parts.size() < 2) throw DomainError("zigzag curve needs zigzag:n[:r]");
    const double n = parse_double(parts[1]);
    if (n != std::floor(n) || n < 0) throw DomainError("zigzag count must be a non-negative integer");
    const double r = parts.size() == 3 ? parse_double(parts[2]) : 0.5;
    return build_lemma4_pair(r, static_cast<int>(n)).gamma2;
  }
  const CurveKind kind = curve_kind_from_string(parts[0]);
  if (parts.size() < 2) throw DomainError("curve must be kind:theta[:param]");
  const double theta = parse_double(parts[1]);
  const double param = parts.size() == 3 ? parse_double(parts[2]) : default_curve_parameter(kind);
  return canonical_curve(kind, theta, param);
}

std::string curve_to_json_text(double endpoint_angle, const std::vector<DiskPoint>& samples) {
  Json j;
  j["endpoint_angle"] = endpoint_angle;
  Json arr = Json::array();
  for (const DiskPoint& z : samples) arr.push_back(to_json(z));
  j["samples"] = arr;
  return j.dump(2) + "\n";
}

std::vector<DiskPoint> sequence_from_spec(const std::string& spec) {
  std::vector<DiskPoint> out;
  if (spec.rfind("radial:", 0) == 0) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) throw DomainError("radial sequence needs radial:theta:count");
    const double count = parse_double(parts[2]);
    if (count < 1 || count > 50 || count != std::floor(count)) throw DomainError("radial count must be in 1..50");
    return radial_sequence(parse_double(parts[1]), static_cast<int>(count));
  }
  if (spec == "example1_poles") return Example1Schedule::make_default().poles;
  if (spec == "example1_offset") {
    const auto s = Example1Schedule::make_default();
    for (std::size_t k = 0; k < s.size(); ++k) {
      out.emplace_back(s.poles[k].value() + s.radii[k]);
    }
    return out;
  }
  if (spec.rfind("points:", 0) == 0) {
    for (const std::string& p : split(spec.substr(7), ';')) out.emplace_back(parse_complex(p));
    return out;
  }
  if (spec.rfind("file:", 0) == 0) {
    for (const Complex& c : complex_array(read_json_file(spec.substr(5)), spec)) out.emplace_back(c);
    return out;
  }
  throw DomainError("unknown sequence '" + spec + "'");
}

std::filesystem::path report_path(const std::filesystem::path& dir, const std::string& subcommand,
                                  const std::string& format) {
  const auto now = std::chrono::system_clock::now();
  const std::time_t secs = std::chrono::system_clock::to_time_t(now);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&secs, &tm);
  std::ostringstream stamp;
  stamp << std::put_time(&tm, "%Y%m%dT%H%M%S") << std::setw(3) << std::setfill('0') << ms << "Z";
  const std::string base = subcommand + "-" + stamp.str();
  std::filesystem::path p = dir / (base + "." + format);
  for (int k = 1; std::filesystem::exists(p); ++k) {
    p = dir / (base + "-" + std::to_string(k) + "." + format);
  }
  return p;
}

namespace {

struct Outcome {
  Json result = Json::object();
  Table table;
  std::vector<std::string> lines;
  int code = exit_code::kOk;
};

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(15) << v;
  return s.str();
}

std::string fmt(const ExtendedComplex& v) { return v.to_string(); }

struct Args {
  // shared
  std::string curve1 = "radius:0", curve2 = "horocycle:0";
  std::string function = "identity";
  std::string curve = "radius:0";
  double deflection = 0.5;
  int level = -1;
  // metric
  std::string kind = "ph", z = "0", w = "0";
  // lemma4
  double r = 0.5;
  int zigzags = 8;
  double mesh = BoundaryCurve::kDefaultMesh;
  std::string export_curve;
  // pseq / family / cluster
  std::string test = "t9", sequence = "example1_poles", sequence_b = "example1_offset";
  std::string radius = "pole_disks", alpha_value = "0";
  double delta = 0.5;
  int shells = -1;
  std::string atoms;
  std::string w_sequence;
  double r1 = 0.5;
  std::string target = "0";
  // stolz / lemma6
  double alpha = kPi / 4, beta = kPi / 6;
  bool inverse = false;
  int samples = 10000;
  // decay
  std::string profile = "log_e_plus_inverse";
  double exponent = 1.0;
  // gallery
  bool list = false;
};

Table single_row(const std::vector<std::string>& columns, std::vector<Json> row) {
  Table t{columns, {}};
  t.rows.push_back(std::move(row));
  return t;
}

int level_or(const Args& a, const RunConfig& c) { return a.level > 0 ? a.level : c.max_level; }

Outcome do_metric(const Args& a, const RunConfig&) {
  Outcome o;
  double v = 0.0;
  if (a.kind == "s") {
    v = spherical_distance(parse_extended(a.z), parse_extended(a.w));
  } else {
    const DiskPoint z(parse_complex(a.z)), w(parse_complex(a.w));
    v = a.kind == "ph" ? pseudo_hyperbolic_distance(z, w) : hyperbolic_distance(z, w);
  }
  o.result = {{"kind", a.kind}, {"value", json_number(v)}};
  o.table = single_row({"index", "value", "kind"}, {0, json_number(v), a.kind});
  o.lines.push_back(fmt(v));
  return o;
}

Outcome do_curve_dist(const Args& a, const RunConfig& c) {
  Outcome o;
  const auto g1 = curve_from_spec(a.curve1), g2 = curve_from_spec(a.curve2);
  std::vector<LevelValue> fwd, bwd;
  for (int k = 1; k <= level_or(a, c); ++k) {
    fwd.push_back({k, directed_curve_distance(g1, g2, k)});
    bwd.push_back({k, directed_curve_distance(g2, g1, k)});
  }
  o.result = {{"forward", to_json(fwd)}, {"backward", to_json(bwd)}};
  o.table = level_table(fwd, bwd);
  o.lines.push_back("forward " + fmt(fwd.back().value) + " backward " + fmt(bwd.back().value));
  return o;
}

Outcome do_frechet(const Args& a, const RunConfig& c) {
  Outcome o;
  const auto g1 = curve_from_spec(a.curve1), g2 = curve_from_spec(a.curve2);
  const int k = level_or(a, c);
  const auto p1 = g1.points(k), p2 = g2.points(k);
  const double v = discrete_frechet(p1, p2);
  o.result = {{"level", k}, {"samples1", p1.size()}, {"samples2", p2.size()}, {"frechet", json_number(v)}};
  o.table = single_row({"level", "value", "samples1", "samples2"}, {k, json_number(v), p1.size(), p2.size()});
  o.lines.push_back(fmt(v));
  return o;
}

Outcome do_equiv(const Args& a, const RunConfig& c) {
  Outcome o;
  const auto v = are_equivalent(curve_from_spec(a.curve1), curve_from_spec(a.curve2), level_or(a, c));
  o.result = to_json(v);
  o.table = level_table(v.forward, v.backward);
  o.lines.push_back(to_string(v.verdict));
  if (v.verdict == Equivalence::not_equivalent) o.code = exit_code::kNotSatisfied;
  return o;
}

Outcome do_lemma4(const Args& a, const RunConfig& c) {
  Outcome o;
  const auto pair = build_lemma4_pair(a.r, a.zigzags, a.mesh);
  const auto profile = lemma4_frechet_profile(a.r, a.zigzags, a.mesh);
  const CurvilinearAngle host(pair.gamma1, a.r);
  const int k = std::max(level_or(a, c), 44);
  int outside = 0;
  const auto samples = pair.gamma2.points(k);
  for (const DiskPoint& z : samples) {
    if (!angle_contains(host, z, k + 2)) ++outside;
  }
  bool increasing = true;
  for (std::size_t i = 1; i < profile.size(); ++i) increasing = increasing && profile[i] > profile[i - 1];
  Json prof = Json::array();
  o.table = Table{{"zigzags", "frechet", "r"}, {}};
  for (std::size_t i = 0; i < profile.size(); ++i) {
    prof.push_back({{"n", static_cast<int>(i + 1)}, {"frechet", json_number(profile[i])}});
    o.table.rows.push_back({static_cast<int>(i + 1), json_number(profile[i]), a.r});
  }
  o.result = {{"markers", to_json(pair.markers)},
              {"frechet_profile", prof},
              {"strictly_increasing", increasing},
              {"containment_level", k},
              {"samples_checked", samples.size()},
              {"samples_outside", outside},
              {"simple", is_simple_polyline(pair.markers.band_polyline)}};
  if (!a.export_curve.empty()) {
    write_atomic(a.export_curve, curve_to_json_text(0.0, pair.gamma2_prefix));
    o.result["exported_curve"] = a.export_curve;
  }
  o.lines.push_back("frechet " + (profile.empty() ? std::string("n/a") : fmt(profile.back())) + " outside " +
                    std::to_string(outside));
  if (outside > 0 || !increasing) o.code = exit_code::kNotSatisfied;
  return o;
}

Outcome do_normality(const Args& a, const RunConfig& c) {
  Outcome o;
  const auto f = function_from_spec(a.function);
  const auto rep = normality_sup(f, CurvilinearAngle(curve_from_spec(a.curve), a.deflection), level_or(a, c));
  o.result = to_json(rep);
  o.table = normality_table(rep);
  o.lines.push_back(to_string(rep.verdict));
  const double fraction = rep.evaluations ? static_cast<double>(rep.failures) / rep.evaluations : 0.0;
  if (fraction > tolerance(c, "failure_fraction")) {
    o.code = exit_code::kEvaluationFailure;
  } else if (rep.verdict == TrendVerdict::diverging) {
    o.code = exit_code::kNotSatisfied;
  }
  return o;
}

Outcome do_pseq(const Args& a, const RunConfig& c) {
  Outcome o;
  const auto f = function_from_spec(a.function);
  const auto seq = sequence_from_spec(a.sequence);
  if (a.test == "t10") {
    const auto seq_b = sequence_from_spec(a.sequence_b);
    auto rep = theorem10_check(f, seq, seq_b, parse_extended(a.alpha_value), a.delta);
    const double tol = tolerance(c, "theorem10_convergence");
    auto tail_below = [tol](const std::vector<double>& v) {
      for (std::size_t i = v.size() - 3; i < v.size(); ++i) {
        if (!(v[i] <= tol)) return false;
      }
      return true;
    };
    rep.values_converge = tail_below(rep.ds_a);
    rep.points_merge = tail_below(rep.dh);
    o.result = to_json(rep);
    o.result["constants"]["convergence"] = tol;
    o.table = Table{{"index", "ds_a", "ds_b", "dh"}, {}};
    for (std::size_t i = 0; i < rep.dh.size(); ++i) {
      o.table.rows.push_back({static_cast<int>(i + 1), json_number(rep.ds_a[i]), json_number(rep.ds_b[i]),
                              json_number(rep.dh[i])});
    }
    o.lines.push_back(rep.flagged() ? "p_sequence_witnesses" : "not_flagged");
    return o;
  }
  IndicatorReport rep;
  if (a.test == "t8") {
    rep = p_indicator_t8(f, seq);
  } else if (a.test == "t9") {
    std::vector<double> radii;
    if (a.radius == "pole_disks") {
      const auto s = Example1Schedule::make_default();
      if (seq.size() > s.size()) throw DomainError("pole_disks radii cover at most " + std::to_string(s.size()) + " points");
      for (std::size_t k = 0; k < seq.size(); ++k) radii.push_back(s.hyperbolic_diameter(k));
    } else {
      radii.assign(seq.size(), parse_double(a.radius));
    }
    rep = p_indicator_t9(f, seq, radii);
  } else {
    throw DomainError("unknown test '" + a.test + "'");
  }
  o.result = to_json(rep);
  o.result["test"] = a.test;
  o.table = indicator_table(rep);
  o.lines.push_back(to_string(rep.trend) + (rep.positive ? " indicator_positive" : ""));
  return o;
}

Outcome do_cluster(const Args& a, const RunConfig& c) {
  Outcome o;
  const auto f = function_from_spec(a.function);
  const auto curve = curve_from_spec(a.curve);
  const int shells = a.shells > 0 ? a.shells : c.max_level;
  const int level = shells + 4;
  const CurvilinearAngle host(curve, a.deflection);
  ClusterRegion region{[&host, level](DiskPoint z) { return angle_contains(host, z, level); }, {}};
  if (!a.atoms.empty()) region.atoms = sequence_from_spec(a.atoms);
  auto est = cluster_estimate(f, region, curve.endpoint_angle(), shells, c.seed);
  const double tol = tolerance(c, "cluster_convergence");
  if (est.limit_candidate) {
    const ClusterShell* last = nullptr;
    const ClusterShell* prev = nullptr;
    for (const auto& s : est.shells) {
      if (s.values.empty()) continue;
      prev = last;
      last = &s;
    }
    if (!(last->diameter < tol && spherical_distance(*last->mean, *prev->mean) < tol)) est.limit_candidate.reset();
  }
  o.result = to_json(est);
  o.result["constants"]["convergence"] = tol;
  o.table = cluster_table(est);
  o.lines.push_back(est.limit_candidate ? "limit " + fmt(*est.limit_candidate)
                                        : std::string(est.inconclusive ? "inconclusive" : "no_limit"));
  if (est.failures > 0) o.code = exit_code::kEvaluationFailure;
  return o;
}

Outcome do_family(const Args& a, const RunConfig& c) {
  Outcome o;
  const auto f = function_from_spec(a.function);
  const std::string wspec = a.w_sequence.empty() ? "radial:0:" + std::to_string(c.max_level) : a.w_sequence;
  auto rep = renormalized_family_check(f, sequence_from_spec(wspec), a.r1, parse_extended(a.target));
  const double tol = tolerance(c, "family_convergence");
  rep.converges = !rep.sup_ds.empty() && rep.sup_ds.back() < tol;
  o.result = to_json(rep);
  o.result["constants"]["convergence"] = tol;
  o.table = family_table(rep);
  o.lines.push_back(rep.converges ? "converges" : "not_converged");
  if (rep.failures > 0) o.code = exit_code::kEvaluationFailure;
  return o;
}

Outcome do_stolz_map(const Args& a, const RunConfig&) {
  Outcome o;
  const StolzMap map(a.alpha);
  const Complex input = parse_complex(a.z);
  const Complex z = a.inverse ? map.inverse(input) : input;
  const auto st = map.stages(z);
  Json stages = Json::array();
  o.table = Table{{"stage", "re", "im"}, {}};
  for (int i = 0; i < 8; ++i) {
    stages.push_back(to_json(ExtendedComplex::from_possibly_infinite(st[i])));
    o.table.rows.push_back({i, json_number(st[i].real()), json_number(st[i].imag())});
  }
  o.result = {{"alpha", a.alpha},
              {"rho", map.rho()},
              {"direction", a.inverse ? "inverse" : "forward"},
              {"z", to_json(ExtendedComplex(z))},
              {"w", to_json(ExtendedComplex::from_possibly_infinite(st[7]))},
              {"closed_form", to_json(ExtendedComplex::from_possibly_infinite(map.forward_closed_form(z)))},
              {"printed_form", to_json(ExtendedComplex::from_possibly_infinite(map.forward_printed_form(z)))},
              {"stages", stages}};
  o.lines.push_back(a.inverse ? fmt(ExtendedComplex(z)) : fmt(ExtendedComplex::from_possibly_infinite(st[7])));
  return o;
}

Outcome do_lemma6(const Args& a, const RunConfig& c) {
  Outcome o;
  const auto res = lemma6_check(a.alpha, a.beta, a.samples, c.seed);
  o.result = to_json(res);
  o.table = single_row({"index", "m_hat", "M_hat", "holdout_min", "holdout_max", "pass"},
                       {0, json_number(res.m_hat), json_number(res.M_hat), json_number(res.holdout_min),
                        json_number(res.holdout_max), res.pass});
  o.lines.push_back(res.pass ? "pass" : "fail");
  if (!res.pass) o.code = exit_code::kNotSatisfied;
  return o;
}

Outcome do_decay(const Args& a, const RunConfig& c) {
  Outcome o;
  const auto f = function_from_spec(a.function);
  const auto t = decay_margin(f, curve_from_spec(a.curve), DecayProfile::parse(a.profile, a.exponent),
                              level_or(a, c));
  o.result = to_json(t);
  o.table = margin_table(t);
  o.lines.push_back(to_string(t.verdict) + (t.threshold ? " threshold " + fmt(*t.threshold) : std::string()));
  if (t.verdict == DecayVerdict::violated) o.code = exit_code::kNotSatisfied;
  return o;
}

Outcome do_gallery(const Args& a, const RunConfig&) {
  Outcome o;
  if (a.list) {
    Json names = Json::array();
    o.table = Table{{"index", "name"}, {}};
    int i = 0;
    for (const auto& n : gallery_names()) {
      names.push_back(n);
      o.table.rows.push_back({i++, n});
      o.lines.push_back(n);
    }
    o.result = {{"gallery", names}};
    return o;
  }
  const auto f = function_from_spec(a.function);
  const DiskPoint z(parse_complex(a.z));
  bool saturated = false;
  const auto value = chart_value(f.chart(z), &saturated);
  const double lv = lehto_virtanen_value(f, z);
  o.result = {{"function", f.label()},
              {"z", to_json(z)},
              {"value", to_json(value)},
              {"saturated", saturated},
              {"log_abs", json_number(f.log_abs(z))},
              {"spherical_derivative", json_number(spherical_derivative(f, z))},
              {"lehto_virtanen", json_number(lv)}};
  o.table = single_row({"index", "value", "log_abs", "lehto_virtanen"},
                       {0, value.to_string(), json_number(f.log_abs(z)), json_number(lv)});
  o.lines.push_back(value.to_string());
  return o;
}

Outcome do_selftest(const Args&, const RunConfig& c) {
  Outcome o;
  const auto results = run_selftest(c.seed);
  Json criteria = Json::array();
  o.table = Table{{"criterion", "pass", "name", "detail"}, {}};
  bool all = true;
  for (const auto& r : results) {
    criteria.push_back(to_json(r));
    o.table.rows.push_back({r.id, r.pass, r.name, r.detail});
    o.lines.push_back(std::to_string(r.id) + " " + (r.pass ? "PASS" : "FAIL") + " " + r.name + ": " + r.detail);
    all = all && r.pass;
  }
  o.result = {{"all_pass", all}, {"criteria", criteria}};
  if (!all) o.code = exit_code::kNotSatisfied;
  return o;
}

Json recorded_arguments(const CLI::App* sub) {
  Json args = Json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_name() == "--help") continue;
    std::string name = opt->get_name(false, true);
    name.erase(0, name.find_first_not_of('-'));
    if (opt->count() > 0) {
      const auto& res = opt->results();
      args[name] = res.size() == 1 ? Json(res.front()) : Json(res);
    } else {
      args[name] = opt->get_default_str();
    }
  }
  return args;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Boundary behaviour lab for the Poincare disk", "pblab"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  RunConfig config;
  std::string output_dir = ".";
  std::vector<std::string> tolerance_args;
  app.set_config("--config", "", "Flat key=value configuration file");
  app.add_option("--seed", config.seed, "Random seed recorded in the report")->capture_default_str();
  app.add_option("--max-level", config.max_level, "Truncation level")->check(CLI::Range(1, 60))->capture_default_str();
  app.add_option("--output-dir", output_dir, "Report directory")->envname("PBLAB_OUTPUT_DIR")->capture_default_str();
  app.add_option("--format", config.format, "Report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--tolerance", tolerance_args, "name=value, only tighter than the default");

  Args a;
  std::map<std::string, std::function<Outcome(const Args&, const RunConfig&)>> handlers;
  auto sub = [&](const std::string& name, const std::string& desc, auto handler) {
    handlers[name] = handler;
    return app.add_subcommand(name, desc);
  };
  auto curve_pair = [&](CLI::App* s) {
    s->add_option("--curve1", a.curve1, "kind:theta[:param], zigzag:n[:r] or file:path.json")->capture_default_str();
    s->add_option("--curve2", a.curve2, "Second curve")->capture_default_str();
  };
  auto level_opt = [&](CLI::App* s) {
    s->add_option("--level", a.level, "Level (defaults to --max-level)")->check(CLI::Range(1, 60));
  };

  auto* metric = sub("metric", "Distance between two points", do_metric);
  metric->add_option("--kind", a.kind, "ph, h or s")->check(CLI::IsMember({"ph", "h", "s"}))->capture_default_str();
  metric->add_option("--z", a.z, "re,im")->required();
  metric->add_option("--w", a.w, "re,im")->required();

  auto* cdist = sub("curve-dist", "Directed curve distances per level", do_curve_dist);
  curve_pair(cdist);
  level_opt(cdist);

  auto* frechet = sub("frechet", "Discrete Frechet distance at one level", do_frechet);
  curve_pair(frechet);
  level_opt(frechet);

  auto* equiv = sub("equiv", "Equivalence verdict for two curves", do_equiv);
  curve_pair(equiv);
  level_opt(equiv);

  auto* lemma4 = sub("lemma4", "Zigzag construction inside a curvilinear angle", do_lemma4);
  lemma4->add_option("--r", a.r, "Pseudo-hyperbolic deflection")->capture_default_str();
  lemma4->add_option("--zigzags", a.zigzags, "Number of zigzags")->check(CLI::Range(0, 8))->capture_default_str();
  lemma4->add_option("--mesh", a.mesh, "Hyperbolic mesh")->capture_default_str();
  lemma4->add_option("--export-curve", a.export_curve, "Write the zigzag curve as JSON");
  level_opt(lemma4);

  auto* normality = sub("normality", "Sup of (1-|z|^2) f# over a curvilinear angle", do_normality);
  normality->add_option("--function", a.function, "Function descriptor")->capture_default_str();
  normality->add_option("--curve", a.curve, "Curve descriptor")->capture_default_str();
  normality->add_option("--deflection", a.deflection, "Pseudo-hyperbolic deflection")->capture_default_str();
  level_opt(normality);

  auto* pseq = sub("pseq", "P-sequence indicators", do_pseq);
  pseq->add_option("--function", a.function, "Function descriptor")->capture_default_str();
  pseq->add_option("--test", a.test, "t8, t9 or t10")->check(CLI::IsMember({"t8", "t9", "t10"}))->capture_default_str();
  pseq->add_option("--sequence", a.sequence, "Sequence descriptor")->capture_default_str();
  pseq->add_option("--sequence-b", a.sequence_b, "Second sequence for t10")->capture_default_str();
  pseq->add_option("--radius", a.radius, "Hyperbolic radius or pole_disks (t9)")->capture_default_str();
  pseq->add_option("--alpha", a.alpha_value, "Limit value for t10, re,im or inf")->capture_default_str();
  pseq->add_option("--delta", a.delta, "Separation for t10")->capture_default_str();

  auto* cluster = sub("cluster", "Cluster set estimate over shells", do_cluster);
  cluster->add_option("--function", a.function, "Function descriptor")->capture_default_str();
  cluster->add_option("--curve", a.curve, "Curve descriptor")->capture_default_str();
  cluster->add_option("--deflection", a.deflection, "Pseudo-hyperbolic deflection")->capture_default_str();
  cluster->add_option("--shells", a.shells, "Number of shells (defaults to --max-level)")->check(CLI::Range(1, 40));
  cluster->add_option("--atoms", a.atoms, "Extra region points, sequence descriptor");

  auto* family = sub("family", "Renormalized family f o phi_w on a compact disk", do_family);
  family->add_option("--function", a.function, "Function descriptor")->capture_default_str();
  family->add_option("--w", a.w_sequence, "Sequence descriptor (default radial:0:max-level)");
  family->add_option("--r1", a.r1, "Compact radius")->capture_default_str();
  family->add_option("--target", a.target, "Limit value, re,im or inf")->capture_default_str();

  auto* stolz = sub("stolz-map", "Stolz angle to disk map with all stages", do_stolz_map);
  stolz->add_option("--alpha", a.alpha, "Half-opening in (0, pi/2)")->capture_default_str();
  stolz->add_option("--z", a.z, "re,im")->required();
  stolz->add_flag("--inverse", a.inverse, "Treat --z as a disk point and map back");

  auto* lemma6 = sub("lemma6", "Boundary ratio bounds of the Stolz map", do_lemma6);
  lemma6->add_option("--alpha", a.alpha, "Angle of the map")->capture_default_str();
  lemma6->add_option("--beta", a.beta, "Angle of the sampled region")->capture_default_str();
  lemma6->add_option("--samples", a.samples, "Samples per set")->check(CLI::Range(1, 10000000))->capture_default_str();

  auto* decay = sub("decay", "Decay margin table along a curve", do_decay);
  decay->add_option("--function", a.function, "Function descriptor")->capture_default_str();
  decay->add_option("--curve", a.curve, "Curve descriptor")->capture_default_str();
  decay->add_option("--profile", a.profile, "Decay profile")->capture_default_str();
  decay->add_option("--exponent", a.exponent, "Exponent e >= 1")->capture_default_str();
  level_opt(decay);

  auto* gallery_cmd = sub("gallery", "List or evaluate gallery functions", do_gallery);
  gallery_cmd->add_flag("--list", a.list, "List the gallery");
  gallery_cmd->add_option("--function", a.function, "Function descriptor")->capture_default_str();
  gallery_cmd->add_option("--z", a.z, "re,im")->capture_default_str();

  sub("selftest", "Acceptance criteria 1 to 8", do_selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return exit_code::kInvalidArguments;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  config.output_dir = output_dir;

  Json report;
  Outcome outcome;
  try {
    for (const std::string& t : tolerance_args) {
      const auto eq = t.find('=');
      if (eq == std::string::npos) throw DomainError("tolerance must be name=value");
      config.tolerances[t.substr(0, eq)] = parse_double(t.substr(eq + 1));
    }
    for (const auto& [k, v] : config.tolerances) tolerance(config, k);
    Json tolerances = Json::object();
    for (const auto& [k, v] : default_tolerances()) tolerances[k] = tolerance(config, k);
    outcome = handlers.at(name)(a, config);
    report["tool"] = "pblab";
    report["schema_version"] = 1;
    report["subcommand"] = name;
    report["seed"] = config.seed;
    report["max_level"] = config.max_level;
    report["arguments"] = recorded_arguments(chosen);
    report["tolerances"] = tolerances;
    report["result"] = outcome.result;
    report["table"] = to_json(outcome.table);
    report["exit_code"] = outcome.code;
  } catch (const std::invalid_argument& e) {
    err << "pblab " << name << ": " << e.what() << "\n";
    return exit_code::kInvalidArguments;
  } catch (const EvaluationError& e) {
    err << "pblab " << name << ": evaluation failed: " << e.what() << "\n";
    return exit_code::kEvaluationFailure;
  }

  try {
    std::filesystem::create_directories(config.output_dir);
    const auto path = report_path(config.output_dir, name, config.format);
    std::string content;
    if (config.format == "json") {
      content = report.dump(2) + "\n";
    } else {
      Table t = outcome.table;
      t.columns.push_back("seed");
      for (auto& row : t.rows) row.push_back(config.seed);
      content = to_csv(t);
    }
    write_atomic(path, content);
    for (const auto& line : outcome.lines) out << line << "\n";
    out << path.string() << "\n";
  } catch (const std::exception& e) {
    err << "pblab " << name << ": cannot write report: " << e.what() << "\n";
    return exit_code::kInvalidArguments;
  }
  return outcome.code;
}

}  // namespace pblab
