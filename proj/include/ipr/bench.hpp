#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ipr/solver.hpp"
#include "ipr/state.hpp"

namespace ipr {

/// One solve outcome inside a suite run.
struct SuiteRecord {
  std::string problem;
  SolveStatus status = SolveStatus::max_iters;
  int iterations = 0;
  long f_evals = 0;
  long grad_evals = 0;
  double wall_time = 0.0;
  double final_error = 0.0;
  double final_f = 0.0;
};

struct SuiteResult {
  std::string label;
  std::vector<SuiteRecord> records;
};

enum class ProfileMetric { iterations, f_evals, grad_evals, wall_time };

ProfileMetric profile_metric_from_string(const std::string& name);

/// One solver's Dolan–Moré curve: points (tau, fraction) with fraction the
/// share of problems whose performance ratio is at most tau. Nondecreasing;
/// the limit value equals the solver's success rate.
struct ProfileCurve {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

/// Runs one solve per requested problem with a shared configuration.
/// Individual failures are recorded in-status and never abort the suite.
/// num_threads <= 0 selects hardware concurrency; the IPR_NUM_THREADS
/// environment variable caps parallelism either way. Records are returned in
/// input order.
SuiteResult run_suite(const std::vector<std::string>& problems,
                      const SolverConfig& cfg, const std::string& label,
                      int num_threads = 0);

/// Performance-profile curves over a common problem list. A problem counts
/// toward a solver's curve at tau when its ratio t / min_t over successful
/// solvers is at most tau; failed solves have infinite ratio. Requires at
/// least two result sets over identical problem lists.
std::vector<ProfileCurve> performance_profile(
    const std::vector<SuiteResult>& results, ProfileMetric metric);

// --- trace / suite documents ---

/// Comma-separated trace in the k, mu, x..., s..., f, v, phi, E column
/// schema, values printed with 17 significant digits.
void write_trace_csv(std::ostream& out, const SolveReport& report);

/// Parses write_trace_csv output back into rows.
std::vector<TraceRow> parse_trace_csv(std::istream& in);

void write_trace_json(std::ostream& out, const std::string& problem,
                      const SolveReport& report);

void write_suite_json(std::ostream& out, const SuiteResult& result);
SuiteResult read_suite_json(std::istream& in);

void write_profile_csv(std::ostream& out,
                       const std::vector<ProfileCurve>& curves);

}  // namespace ipr
