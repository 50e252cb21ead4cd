#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pylang/corpus.hpp"
#include "pylang/runtime.hpp"

namespace pylang {

enum class ScoreStatus { AllPass, Partial, AllFail, SyntaxError };

const char* to_string(ScoreStatus status);

struct ProblemScore {
  std::string problem_id;
  int tests_total = 0;
  int tests_passed = 0;
  ScoreStatus status = ScoreStatus::AllFail;
  std::vector<std::pair<std::string, RunStatus>> per_test;

  // Fractional reward: tests_passed / tests_total, 1.0 when everything
  // passes, 0.0 for syntax errors and full failure.
  double reward() const {
    return tests_total > 0 ? static_cast<double>(tests_passed) / tests_total : 0.0;
  }
};

// What the scorer is given for one problem. Missing solutions score AllFail;
// transcripts that yielded no code at all score SyntaxError.
struct SolutionInput {
  enum class Kind { Missing, ExtractionFailed, Code };
  Kind kind = Kind::Missing;
  std::string code;

  static SolutionInput missing() { return {}; }
  static SolutionInput extraction_failed() { return {Kind::ExtractionFailed, {}}; }
  static SolutionInput of(std::string source) { return {Kind::Code, std::move(source)}; }
};

struct GroupStats {
  int problems = 0;
  int all_pass = 0;
  int syntax_errors = 0;
  long long tests_total = 0;
  long long tests_passed = 0;

  double problem_pass_rate() const {
    return problems > 0 ? static_cast<double>(all_pass) / problems : 0.0;
  }
  double test_pass_rate() const {
    return tests_total > 0 ? static_cast<double>(tests_passed) / tests_total : 0.0;
  }
};

struct MetricsReport {
  double problem_pass_rate = 0.0;
  double test_pass_rate = 0.0;  // micro-averaged over all test cases
  double syntax_error_rate = 0.0;
  std::optional<std::string> grouping_key;
  std::map<std::string, GroupStats> by_group;
  std::vector<ProblemScore> per_problem;
};

struct GapReport {
  double overall_points = 0.0;  // (b - a) problem pass rate, percentage points
  std::map<std::string, double> by_group_points;
};

// Judges every test of one problem with fresh interpreter state. A source
// that fails to lex or parse short-circuits all tests to failure.
ProblemScore score_solution(const Problem& problem, const SolutionInput& solution,
                            const ExecLimits& limits, bool strict_compare = false);

// Serial reference implementation; kept as the comparison baseline for the
// parallel path and used directly when jobs <= 1.
std::vector<ProblemScore> score_batch_serial(const std::vector<Problem>& problems,
                                             const std::vector<SolutionInput>& solutions,
                                             const ExecLimits& limits,
                                             bool strict_compare = false);

// OpenMP-parallel judging over independent (problem, solution) pairs.
// Results are written by index, so the report is identical for any jobs
// count. jobs <= 1 falls back to the serial path.
std::vector<ProblemScore> score_batch(const std::vector<Problem>& problems,
                                      const std::vector<SolutionInput>& solutions,
                                      const ExecLimits& limits, int jobs,
                                      bool strict_compare = false);

// grouping maps problem id -> label (e.g. stdlib dependence); scores without
// a label fall into "untagged". Rejects an empty score list.
MetricsReport aggregate(std::vector<ProblemScore> scores,
                        const std::map<std::string, std::string>* grouping = nullptr,
                        std::optional<std::string> grouping_key = std::nullopt);

// Signed differences (b - a) in problem pass rate, overall and per group.
// Both reports must cover the same problem ids and the same group labels.
GapReport compare_reports(const MetricsReport& a, const MetricsReport& b);

// Deterministic plain-text rendering with stable field order; percentages
// use one decimal place.
std::string render_report(const MetricsReport& report);
std::string render_gap_report(const GapReport& gap);

// One-line summary: `problems=N pass=P% testpass=T% syntax_err=S%`.
std::string summary_line(const MetricsReport& report);

}  // namespace pylang
