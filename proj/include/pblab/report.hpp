#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pblab/analysis.hpp"
#include "pblab/curves.hpp"
#include "pblab/stolz.hpp"

namespace pblab {

using Json = nlohmann::ordered_json;

/// Finite numbers as numbers; inf, -inf and nan as strings.
Json json_number(double v);
Json to_json(const ExtendedComplex& v);
Json to_json(const DiskPoint& z);
Json to_json(const std::vector<LevelValue>& values);
Json to_json(const EquivalenceVerdict& v);
Json to_json(const Lemma4Markers& m);
Json to_json(const NormalityReport& r);
Json to_json(const IndicatorReport& r);
Json to_json(const Theorem10Report& r);
Json to_json(const ClusterEstimate& e);
Json to_json(const FamilyReport& r);
Json to_json(const Lemma6Result& r);
Json to_json(const MarginTable& t);

/// Plot table: the first column is always the level or shell index.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
};

Json to_json(const Table& t);
std::string to_csv(const Table& t);

Table level_table(const std::vector<LevelValue>& forward, const std::vector<LevelValue>& backward);
Table normality_table(const NormalityReport& r);
Table indicator_table(const IndicatorReport& r);
Table cluster_table(const ClusterEstimate& e);
Table family_table(const FamilyReport& r);
Table margin_table(const MarginTable& t);

/// Writes to a temporary file in the same directory and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace pblab
