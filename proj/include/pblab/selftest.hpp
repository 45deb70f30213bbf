#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pblab/report.hpp"

namespace pblab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  Json metrics;
};

/// Frozen reference values produced by the independent oracles under tests/oracles.
namespace frozen {
/// Discrete Frechet distance of the zigzag pair, r = 0.5, mesh 0.05, n = 1..8.
inline constexpr std::array<double, 8> kLemma4Frechet = {
    0.545778385691579, 0.825361162666906, 1.138128524458856, 1.462360267373107,
    1.791356531118353, 2.122545679057860, 2.454799138044655, 2.787583476088204};
/// Largest gap where -log|saginjan_h| falls short of log(e + 1/t)/t along the radius.
inline constexpr double kSaginjanThresholdLogE = 1.0;
/// The same for log(1 + 1/t): 1/(e - 1).
inline constexpr double kSaginjanThresholdLogOne = 0.5819767068693265;
}  // namespace frozen

CriterionResult criterion_metric_suite(std::uint64_t seed);
CriterionResult criterion_disk_image(std::uint64_t seed);
CriterionResult criterion_equivalence(std::uint64_t seed);
CriterionResult criterion_lemma4(std::uint64_t seed);
CriterionResult criterion_normality(std::uint64_t seed);
CriterionResult criterion_cluster_family(std::uint64_t seed);
CriterionResult criterion_stolz(std::uint64_t seed);
CriterionResult criterion_decay(std::uint64_t seed);

/// Criteria 1..8 in order.
std::vector<CriterionResult> run_selftest(std::uint64_t seed);
Json to_json(const CriterionResult& r);

}  // namespace pblab
