#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>
#include <unistd.h>

#include "pblab/selftest.hpp"

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

constexpr std::uint64_t kSeed = 20240601;
constexpr double kTotalBudgetSeconds = 600.0;

struct Criterion {
  int id;
  double budget_seconds;
  std::function<pblab::CriterionResult(std::uint64_t)> run;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<fs::path> files_in(const fs::path& d) {
  std::vector<fs::path> out;
  if (fs::exists(d)) {
    for (const auto& e : fs::directory_iterator(d)) out.push_back(e.path());
  }
  return out;
}

// Runs the installed binary twice with the same seed and compares the reports byte for byte.
pblab::CriterionResult determinism(std::uint64_t seed) {
  pblab::CriterionResult r{9, "determinism", false, "", pblab::Json::object()};
  const fs::path root = fs::temp_directory_path() / ("pblab_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  std::vector<int> codes;
  for (const char* name : {"a", "b"}) {
    const fs::path dir = root / name;
    fs::create_directories(dir);
    const std::string cmd = std::string("'") + PBLAB_CLI_PATH + "' selftest --seed " + std::to_string(seed) +
                            " --output-dir '" + dir.string() + "' > '" + (root / (std::string(name) + ".out")).string() +
                            "' 2>&1";
    const int status = std::system(cmd.c_str());
    codes.push_back(WIFEXITED(status) ? WEXITSTATUS(status) : -1);
  }
  const auto a = files_in(root / "a"), b = files_in(root / "b");
  r.metrics["exit_codes"] = codes;
  if (a.size() != 1 || b.size() != 1) {
    r.detail = "expected one report per run";
  } else {
    const std::string ja = slurp(a[0]), jb = slurp(b[0]);
    r.metrics["bytes"] = ja.size();
    r.pass = !ja.empty() && ja == jb && codes[0] == codes[1];
    r.detail = r.pass ? "reports identical (" + std::to_string(ja.size()) + " bytes)" : "reports differ";
  }
  fs::remove_all(root);
  return r;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, 5.0, pblab::criterion_metric_suite},  {2, 30.0, pblab::criterion_disk_image},
      {3, 60.0, pblab::criterion_equivalence},  {4, 60.0, pblab::criterion_lemma4},
      {5, 120.0, pblab::criterion_normality},   {6, 120.0, pblab::criterion_cluster_family},
      {7, 60.0, pblab::criterion_stolz},        {8, 60.0, pblab::criterion_decay},
      {9, 600.0, determinism},
  };
  const auto start = Clock::now();
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    pblab::CriterionResult r;
    try {
      r = c.run(kSeed);
    } catch (const std::exception& e) {
      r = {c.id, "exception", false, e.what(), pblab::Json::object()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    const bool in_time = secs <= c.budget_seconds;
    const bool pass = r.pass && in_time;
    failures += !pass;
    std::cout << "criterion " << c.id << " " << (pass ? "PASS" : "FAIL") << " " << r.name << ": " << r.detail
              << (in_time ? "" : " [over time budget]") << " (" << std::fixed << std::setprecision(2) << secs
              << " s of " << c.budget_seconds << " s)" << std::defaultfloat << std::endl;
  }
  const double total = std::chrono::duration<double>(Clock::now() - start).count();
  const bool total_ok = total <= kTotalBudgetSeconds;
  failures += !total_ok;
  std::cout << "total " << std::fixed << std::setprecision(2) << total << " s " << (total_ok ? "within" : "over")
            << " budget; " << failures << " failing" << std::endl;
  return failures == 0 ? 0 : 1;
}
