#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "pblab/curves.hpp"
#include "pblab/geometry.hpp"

namespace pblab {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kInvalidArguments = 2;
inline constexpr int kEvaluationFailure = 3;
inline constexpr int kNotSatisfied = 4;
}  // namespace exit_code

struct RunConfig {
  std::uint64_t seed = 1;
  int max_level = 12;
  std::filesystem::path output_dir = ".";
  std::string format = "json";
  /// Only names from default_tolerances(), each no larger than its default.
  std::map<std::string, double> tolerances;
};

/// failure_fraction, family_convergence, theorem10_convergence, cluster_convergence.
const std::map<std::string, double>& default_tolerances();
/// Throws DomainError on an unknown name or a value that loosens the default.
double tolerance(const RunConfig& config, const std::string& name);

/// "re,im" or "re"; "inf" is accepted by parse_extended only.
Complex parse_complex(const std::string& text);
ExtendedComplex parse_extended(const std::string& text);

/// kind:theta[:param] for the canonical families, zigzag:n[:r] for the
/// zigzag curve, or file:path.json in the curve exchange format
/// {"endpoint_angle": theta, "samples": [[re, im], ...]}.
BoundaryCurve curve_from_spec(const std::string& spec);
std::string curve_to_json_text(double endpoint_angle, const std::vector<DiskPoint>& samples);

/// radial:theta:count, example1_poles, example1_offset, points:re,im;re,im;...
/// or file:path.json holding [[re, im], ...].
std::vector<DiskPoint> sequence_from_spec(const std::string& spec);

/// <dir>/<subcommand>-<UTC timestamp with milliseconds>[-k].<format>, not yet existing.
std::filesystem::path report_path(const std::filesystem::path& dir, const std::string& subcommand,
                                  const std::string& format);

/// Parses and runs one invocation; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pblab
