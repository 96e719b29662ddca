#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace smk {

struct SuiteRow {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<SuiteRow> rows;
  bool all_pass() const;
};

struct SuiteOptions {
  double p = 2.0;
  double q = 2.0;
  int seeds = 50;  // instance count for randomized suites
  std::uint64_t seed = 42;
};

/// Named verification suites; each returns per-check rows for rendering.
SuiteResult run_metric_suite(const SuiteOptions& opt);
SuiteResult run_comparison_suite(const SuiteOptions& opt);
SuiteResult run_nongeodesic_suite(const SuiteOptions& opt);
SuiteResult run_linear_geodesic_suite(const SuiteOptions& opt);
SuiteResult run_duality_suite(const SuiteOptions& opt);
SuiteResult run_remark_suite(const SuiteOptions& opt);
SuiteResult run_density_suite(const SuiteOptions& opt);

/// Dispatch by name ("metric", "comparison", "nongeodesic",
/// "linear-geodesic", "duality", "remark", "density").
SuiteResult run_suite(const std::string& name, const SuiteOptions& opt);
std::vector<std::string> suite_names();

}  // namespace smk
