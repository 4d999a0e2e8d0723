#pragma once

#include "walkgroup/finiteness_criterion.hpp"
#include "walkgroup/kernel_algebra.hpp"
#include "walkgroup/walk_model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace walkgroup {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InconsistentVerdicts : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CatalogEntry {
  std::string name;
  StepWeights weights;
  int expected_order = 0;  // 0 = infinite expected, -1 = no expectation
  std::string note;        // where the expectation comes from
  GenusClass genus;
};

// simple, gessel, kreweras, krsp4 (parametrized by n), case2..case5
// exemplars, delta0-genus1. krsp4 ignores n for the others.
const std::vector<std::string>& catalog_names();
CatalogEntry catalog_entry(const std::string& name, int n = 4);

struct VerdictReport {
  bool ran = false;
  std::string skipped_reason;
  GroupOrderResult result;
};

struct AnalysisReport {
  std::string input_json;  // echo of the weights
  std::string name;
  Moments moments;
  Rat delta;
  GenusClass genus = GenusClass::Singular;
  std::optional<double> theta;
  std::optional<double> theta_over_pi;
  std::optional<Fraction> theta_exact;
  std::optional<LambdaValue> lambda;
  VerdictReport criterion;
  VerdictReport oracle;
  VerdictReport orbit;    // numeric orbit, order = 2 * period
  std::optional<double> period_ratio;  // omega3/omega2 or alpha3/alpha2
  std::vector<std::string> consistency;  // human-readable flag lines
  bool consistent = true;
  double elapsed_ms = 0.0;
};

struct AnalyzeOptions {
  long bound = 10000;   // orbit iteration / denominator caps
  double tol = 1e-9;    // numeric orbit tolerance
  bool fast = false;    // skip quadrature-heavy parts
};

// Full cross-validated report for one walk. Throws SingularWalk for
// singular input; InconsistentVerdicts when two concluded verdicts clash.
AnalysisReport analyze(const StepWeights& w, const AnalyzeOptions& opts = {});

std::string report_text(const AnalysisReport& r);
std::string report_json(const AnalysisReport& r);  // carries "schema": 1

struct BatchRow {
  std::string name;
  bool ok = false;
  std::string error;
  std::string genus;
  std::string theta_over_pi;
  std::string verdict;
  std::string order;
  std::string oracle;
  std::string agreement;
};

// One row per walk, computed concurrently, emitted in input order.
std::vector<BatchRow> batch_analyze(const std::vector<std::pair<std::string, StepWeights>>& walks,
                                    const AnalyzeOptions& opts = {});
std::string batch_csv(const std::vector<BatchRow>& rows);

// Entry point used by tools/walkcli.cpp; returns the process exit code.
int run_cli(int argc, char** argv);

}  // namespace walkgroup
