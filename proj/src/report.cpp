#include "pblab/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

namespace pblab {

Json json_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

Json to_json(const ExtendedComplex& v) {
  if (v.is_infinite()) return "inf";
  return Json::array({json_number(v.value().real()), json_number(v.value().imag())});
}

Json to_json(const DiskPoint& z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const std::vector<LevelValue>& values) {
  Json out = Json::array();
  for (const LevelValue& v : values) out.push_back({{"level", v.level}, {"value", json_number(v.value)}});
  return out;
}

Json to_json(const EquivalenceVerdict& v) {
  Json j;
  j["verdict"] = to_string(v.verdict);
  j["forward"] = to_json(v.forward);
  j["backward"] = to_json(v.backward);
  j["symmetric"] = to_json(v.symmetric);
  j["constants"] = {{"plateau_ratio", EquivalenceVerdict::kPlateauRatio},
                    {"growth_levels", EquivalenceVerdict::kGrowthLevels},
                    {"growth_floor", EquivalenceVerdict::kGrowthFloor}};
  return j;
}

Json to_json(const Lemma4Markers& m) {
  Json j;
  j["r"] = m.r;
  j["clearance"] = m.clearance;
  j["outer_lane"] = m.outer_lane;
  j["schedule_scale"] = m.schedule_scale;
  j["w_offset"] = m.w_offset;
  j["z_positions"] = m.z_positions;
  j["w_positions"] = m.w_positions;
  j["visit_order"] = m.visit_order;
  j["rejoin_position"] = m.rejoin_position;
  Json band = Json::array();
  for (const Complex& b : m.band_polyline) band.push_back({b.real(), b.imag()});
  j["band_polyline"] = band;
  return j;
}

Json to_json(const NormalityReport& r) {
  Json j;
  j["function"] = r.function_label;
  j["curve"] = r.curve_label;
  j["deflection"] = r.deflection;
  j["verdict"] = to_string(r.verdict);
  j["evaluations"] = r.evaluations;
  j["failures"] = r.failures;
  Json levels = Json::array();
  for (const NormalityLevel& l : r.levels) {
    levels.push_back({{"level", l.level},
                      {"sup", json_number(l.sup)},
                      {"log_sup", json_number(l.log_sup)},
                      {"samples", l.samples},
                      {"max_abs_near_endpoint", json_number(l.max_abs_near_endpoint)}});
  }
  j["levels"] = levels;
  j["constants"] = {{"plateau_ratio", TrendRule::kPlateauRatio},
                    {"growth_factor", TrendRule::kGrowthFactor},
                    {"window", TrendRule::kWindow},
                    {"failure_fraction", NormalityReport::kFailureFraction},
                    {"cover_mesh", NormalityReport::kCoverMesh}};
  return j;
}

Json to_json(const IndicatorReport& r) {
  Json j;
  Json values = Json::array();
  for (double v : r.values) values.push_back(json_number(v));
  j["values"] = values;
  Json thresholds = Json::array();
  for (std::size_t i = 0; i < r.exceed_from.size(); ++i) {
    thresholds.push_back({{"threshold", IndicatorReport::kThresholds[i]}, {"exceed_from", r.exceed_from[i]}});
  }
  j["thresholds"] = thresholds;
  j["trend"] = to_string(r.trend);
  j["indicator_positive"] = r.positive;
  return j;
}

Json to_json(const Theorem10Report& r) {
  Json j;
  auto arr = [](const std::vector<double>& v) {
    Json a = Json::array();
    for (double x : v) a.push_back(json_number(x));
    return a;
  };
  j["ds_a"] = arr(r.ds_a);
  j["ds_b"] = arr(r.ds_b);
  j["dh"] = arr(r.dh);
  j["values_converge"] = r.values_converge;
  j["values_separated"] = r.values_separated;
  j["points_merge"] = r.points_merge;
  j["p_sequence_witnesses"] = r.flagged();
  j["constants"] = {{"convergence", Theorem10Report::kConvergence}};
  return j;
}

Json to_json(const ClusterEstimate& e) {
  Json j;
  Json shells = Json::array();
  for (const ClusterShell& s : e.shells) {
    Json values = Json::array();
    for (const ExtendedComplex& v : s.values) values.push_back(to_json(v));
    shells.push_back({{"shell", s.index},
                      {"lo", s.lo},
                      {"hi", s.hi},
                      {"count", s.values.size()},
                      {"diameter", json_number(s.diameter)},
                      {"mean", s.mean ? to_json(*s.mean) : Json(nullptr)},
                      {"values", values}});
  }
  j["shells"] = shells;
  j["limit_candidate"] = e.limit_candidate ? to_json(*e.limit_candidate) : Json(nullptr);
  j["inconclusive"] = e.inconclusive;
  j["empty_shells"] = e.empty_shells;
  j["failures"] = e.failures;
  j["constants"] = {{"target_samples", ClusterEstimate::kTargetSamples},
                    {"convergence", ClusterEstimate::kConvergence},
                    {"max_empty_run", ClusterEstimate::kMaxEmptyRun}};
  return j;
}

Json to_json(const FamilyReport& r) {
  Json j;
  Json w = Json::array();
  for (const DiskPoint& p : r.w) w.push_back(to_json(p));
  j["w"] = w;
  j["r1"] = r.r1;
  j["target"] = to_json(r.target);
  Json sup = Json::array();
  for (double v : r.sup_ds) sup.push_back(json_number(v));
  j["sup_ds"] = sup;
  j["converges"] = r.converges;
  j["failures"] = r.failures;
  j["constants"] = {{"convergence", FamilyReport::kConvergence}, {"grid_mesh", FamilyReport::kGridMesh}};
  return j;
}

Json to_json(const Lemma6Result& r) {
  return {{"alpha", r.alpha},           {"beta", r.beta},
          {"samples", r.samples},       {"m_hat", json_number(r.m_hat)},
          {"M_hat", json_number(r.M_hat)}, {"holdout_min", json_number(r.holdout_min)},
          {"holdout_max", json_number(r.holdout_max)}, {"pass", r.pass}};
}

Json to_json(const MarginTable& t) {
  Json j;
  j["function"] = t.function_label;
  j["curve"] = t.curve_label;
  j["profile"] = t.profile;
  j["exponent"] = t.exponent;
  j["level"] = t.level;
  j["verdict"] = to_string(t.verdict);
  j["threshold"] = t.threshold ? json_number(*t.threshold) : Json(nullptr);
  j["samples"] = t.rows.size();
  j["constants"] = {{"relative_tolerance", MarginTable::kRelativeTolerance}};
  return j;
}

Json to_json(const Table& t) {
  Json j;
  j["columns"] = t.columns;
  Json rows = Json::array();
  for (const auto& r : t.rows) rows.push_back(r);
  j["rows"] = rows;
  return j;
}

std::string to_csv(const Table& t) {
  std::ostringstream out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      const Json& cell = row[i];
      if (cell.is_string()) {
        const std::string s = cell.get<std::string>();
        if (s.find_first_of(",\"\n") != std::string::npos) {
          out << '"';
          for (char c : s) out << (c == '"' ? "\"\"" : std::string(1, c));
          out << '"';
        } else {
          out << s;
        }
      } else if (!cell.is_null()) {
        out << cell.dump();
      }
    }
    out << "\n";
  }
  return out.str();
}

Table level_table(const std::vector<LevelValue>& forward, const std::vector<LevelValue>& backward) {
  Table t{{"level", "forward", "backward"}, {}};
  for (std::size_t i = 0; i < forward.size(); ++i) {
    const Json b = i < backward.size() ? json_number(backward[i].value) : Json(nullptr);
    t.rows.push_back({forward[i].level, json_number(forward[i].value), b});
  }
  return t;
}

Table normality_table(const NormalityReport& r) {
  Table t{{"level", "sup", "log_sup", "samples", "max_abs_near_endpoint", "function", "deflection"}, {}};
  for (const NormalityLevel& l : r.levels) {
    t.rows.push_back({l.level, json_number(l.sup), json_number(l.log_sup), l.samples,
                      json_number(l.max_abs_near_endpoint), r.function_label, r.deflection});
  }
  return t;
}

Table indicator_table(const IndicatorReport& r) {
  Table t{{"index", "value"}, {}};
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    t.rows.push_back({static_cast<int>(i + 1), json_number(r.values[i])});
  }
  return t;
}

Table cluster_table(const ClusterEstimate& e) {
  Table t{{"shell", "lo", "hi", "count", "diameter", "mean"}, {}};
  for (const ClusterShell& s : e.shells) {
    t.rows.push_back({s.index, s.lo, s.hi, s.values.size(), json_number(s.diameter),
                      s.mean ? s.mean->to_string() : std::string("none")});
  }
  return t;
}

Table family_table(const FamilyReport& r) {
  Table t{{"index", "w_re", "w_im", "sup_ds", "r1"}, {}};
  for (std::size_t i = 0; i < r.sup_ds.size(); ++i) {
    t.rows.push_back({static_cast<int>(i + 1), r.w[i].real(), r.w[i].imag(),
                      json_number(r.sup_ds[i]), r.r1});
  }
  return t;
}

Table margin_table(const MarginTable& m) {
  Table t{{"level", "u", "gap", "log_abs", "bound", "margin", "profile"}, {}};
  for (const MarginRow& r : m.rows) {
    t.rows.push_back({r.level, r.u, json_number(r.gap), json_number(r.log_abs),
                      json_number(r.bound), json_number(r.margin), m.profile});
  }
  return t;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

}  // namespace pblab
