#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "elroc/rng.hpp"
#include "elroc/scenarios.hpp"

namespace elroc {

enum class CoverageMethod { region3d, ci_tcf2, ci_vus, region2d };

std::string to_string(CoverageMethod m);
CoverageMethod coverage_method_from_string(const std::string& name);

struct SampleSizes {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::size_t n3 = 0;
  bool operator==(const SampleSizes&) const = default;
};

struct ExperimentPlan {
  CoverageMethod method = CoverageMethod::region3d;
  std::vector<int> scenarios;
  std::vector<SampleSizes> sizes;
  std::vector<double> levels{0.90, 0.95, 0.99};
  std::size_t replications = 1000;
  std::size_t bootstrap_B = 200;
  // Overrides of the scenario truth used to fix the method's parameters:
  // theta1/theta3 for ci_tcf2 (and region3d), theta1/t2 for region2d.
  std::optional<double> theta1;
  std::optional<double> theta3;
  std::optional<double> t2;
  bool ties = false;
  std::size_t mc_draws = 1000;
  RngSeed seed{1};
  std::size_t threads = 0;  // 0: default_thread_count()
  // Scenario definitions consulted before the builtin ones.
  std::vector<ScenarioSpec> custom_scenarios;

  // Throws Error(validation) describing the first inconsistency.
  void validate() const;
};

struct FailureCounts {
  std::size_t ordering_infeasible = 0;
  std::size_t degenerate_scale = 0;
  std::size_t domain = 0;
  std::size_t boundary_estimate = 0;
  std::size_t total() const {
    return ordering_infeasible + degenerate_scale + domain + boundary_estimate;
  }
  bool operator==(const FailureCounts&) const = default;
};

// One scenario x sample-size cell, all levels.
struct CoverageCell {
  int scenario = 0;
  SampleSizes sizes;
  // Parameter values the replicates are scored against.
  ScenarioTruth target;
  std::vector<double> levels;
  std::vector<std::size_t> covered;
  std::vector<std::size_t> empty_interval;  // ci_tcf2 only; counted as not covered
  std::vector<double> coverage;
  std::vector<double> standard_error;
  std::size_t replications = 0;
  std::size_t effective = 0;  // replications minus failures
  FailureCounts failures;
  std::size_t rejected_ordering = 0;  // discarded bootstrap draws, all replicates
};

struct CoverageResult {
  ExperimentPlan plan;
  std::vector<CoverageCell> cells;
};

// Monte Carlo coverage of the chosen interval/region procedure. Coverage is
// decided by comparing the pivot at the true parameter with the cutoff.
// Replicates that fail (ordering-infeasible, degenerate scale, domain) are
// excluded from the denominator and counted.
CoverageResult run_coverage(const ExperimentPlan& plan);

// Parameter values a plan scores against for one scenario.
ScenarioTruth coverage_target(const ExperimentPlan& plan, const ScenarioSpec& spec);

enum class TableFormat { text, csv, json };

std::string render_table(const std::vector<CoverageResult>& results, TableFormat format);

// Plans as JSON.
ExperimentPlan plan_from_json(const std::string& text);
std::string plan_to_json(const ExperimentPlan& plan);

// Parses output of render_table(..., csv). Doubles are written in shortest
// round-trip form, so the result renders back to identical text.
std::vector<CoverageResult> load_coverage_csv(const std::string& text);

}  // namespace elroc
