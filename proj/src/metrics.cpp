#include "pylang/metrics.hpp"

#include <omp.h>

#include <cstdio>
#include <exception>
#include <set>
#include <sstream>
#include <stdexcept>

#include "pylang/lexer.hpp"
#include "pylang/parser.hpp"

namespace pylang {

namespace {

std::string pct(double rate) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f%%", rate * 100.0);
  return buf;
}

std::string signed_points(double points) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%+.1f", points);
  return buf;
}

std::string reward_text(double reward) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", reward);
  return buf;
}

bool parses(const std::string& source) {
  try {
    parse_program(tokenize(source));
    return true;
  } catch (const LexError&) {
    return false;
  } catch (const ParseError&) {
    return false;
  }
}

}  // namespace

const char* to_string(ScoreStatus status) {
  switch (status) {
    case ScoreStatus::AllPass: return "all_pass";
    case ScoreStatus::Partial: return "partial";
    case ScoreStatus::AllFail: return "all_fail";
    case ScoreStatus::SyntaxError: return "syntax_error";
  }
  return "unknown";
}

ProblemScore score_solution(const Problem& problem, const SolutionInput& solution,
                            const ExecLimits& limits, bool strict_compare) {
  ProblemScore score;
  score.problem_id = problem.id;
  score.tests_total = static_cast<int>(problem.tests.size());

  if (solution.kind == SolutionInput::Kind::Missing) {
    score.status = ScoreStatus::AllFail;
    return score;
  }
  if (solution.kind == SolutionInput::Kind::ExtractionFailed ||
      !parses(solution.code)) {
    score.status = ScoreStatus::SyntaxError;
    for (const auto& t : problem.tests)
      score.per_test.emplace_back(t.id, RunStatus::SyntaxError);
    return score;
  }

  // Every test gets a completely fresh run; programs may mutate globals.
  for (const auto& test : problem.tests) {
    RunOutcome outcome = judge_test(solution.code, test, limits, strict_compare);
    score.per_test.emplace_back(test.id, outcome.status);
    if (outcome.status == RunStatus::Pass) ++score.tests_passed;
  }

  if (score.tests_total > 0 && score.tests_passed == score.tests_total)
    score.status = ScoreStatus::AllPass;
  else if (score.tests_passed == 0)
    score.status = ScoreStatus::AllFail;
  else
    score.status = ScoreStatus::Partial;
  return score;
}

std::vector<ProblemScore> score_batch_serial(const std::vector<Problem>& problems,
                                             const std::vector<SolutionInput>& solutions,
                                             const ExecLimits& limits,
                                             bool strict_compare) {
  if (problems.size() != solutions.size())
    throw std::invalid_argument("score_batch: problems and solutions differ in size");
  std::vector<ProblemScore> out;
  out.reserve(problems.size());
  for (size_t i = 0; i < problems.size(); ++i)
    out.push_back(score_solution(problems[i], solutions[i], limits, strict_compare));
  return out;
}

std::vector<ProblemScore> score_batch(const std::vector<Problem>& problems,
                                      const std::vector<SolutionInput>& solutions,
                                      const ExecLimits& limits, int jobs,
                                      bool strict_compare) {
  if (problems.size() != solutions.size())
    throw std::invalid_argument("score_batch: problems and solutions differ in size");
  if (jobs <= 1) return score_batch_serial(problems, solutions, limits, strict_compare);

  std::vector<ProblemScore> out(problems.size());
  std::exception_ptr first_error = nullptr;
  const long n = static_cast<long>(problems.size());

  // Each (problem, solution) pair is judged in isolation; results land at
  // their own index, so the outcome is independent of the thread count.
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = score_solution(problems[i], solutions[i], limits, strict_compare);
    } catch (...) {
#pragma omp critical
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

MetricsReport aggregate(std::vector<ProblemScore> scores,
                        const std::map<std::string, std::string>* grouping,
                        std::optional<std::string> grouping_key) {
  if (scores.empty()) throw std::invalid_argument("aggregate: empty score list");

  MetricsReport report;
  report.grouping_key = std::move(grouping_key);
  int all_pass = 0;
  int syntax_errors = 0;
  long long tests_total = 0;
  long long tests_passed = 0;

  for (const auto& s : scores) {
    if (s.status == ScoreStatus::AllPass) ++all_pass;
    if (s.status == ScoreStatus::SyntaxError) ++syntax_errors;
    tests_total += s.tests_total;
    tests_passed += s.tests_passed;
    if (grouping) {
      auto it = grouping->find(s.problem_id);
      std::string label = it != grouping->end() ? it->second : "untagged";
      GroupStats& g = report.by_group[label];
      ++g.problems;
      if (s.status == ScoreStatus::AllPass) ++g.all_pass;
      if (s.status == ScoreStatus::SyntaxError) ++g.syntax_errors;
      g.tests_total += s.tests_total;
      g.tests_passed += s.tests_passed;
    }
  }

  report.problem_pass_rate = static_cast<double>(all_pass) / scores.size();
  report.test_pass_rate =
      tests_total > 0 ? static_cast<double>(tests_passed) / tests_total : 0.0;
  report.syntax_error_rate = static_cast<double>(syntax_errors) / scores.size();
  report.per_problem = std::move(scores);
  return report;
}

GapReport compare_reports(const MetricsReport& a, const MetricsReport& b) {
  std::set<std::string> ids_a, ids_b;
  for (const auto& s : a.per_problem) ids_a.insert(s.problem_id);
  for (const auto& s : b.per_problem) ids_b.insert(s.problem_id);
  for (const auto& id : ids_a)
    if (!ids_b.count(id))
      throw std::invalid_argument("compare_reports: problem '" + id +
                                  "' present in only one report");
  for (const auto& id : ids_b)
    if (!ids_a.count(id))
      throw std::invalid_argument("compare_reports: problem '" + id +
                                  "' present in only one report");
  for (const auto& [label, stats] : a.by_group)
    if (!b.by_group.count(label))
      throw std::invalid_argument("compare_reports: group '" + label +
                                  "' present in only one report");
  for (const auto& [label, stats] : b.by_group)
    if (!a.by_group.count(label))
      throw std::invalid_argument("compare_reports: group '" + label +
                                  "' present in only one report");

  GapReport gap;
  gap.overall_points = (b.problem_pass_rate - a.problem_pass_rate) * 100.0;
  for (const auto& [label, stats_a] : a.by_group) {
    const GroupStats& stats_b = b.by_group.at(label);
    gap.by_group_points[label] =
        (stats_b.problem_pass_rate() - stats_a.problem_pass_rate()) * 100.0;
  }
  return gap;
}

std::string render_report(const MetricsReport& report) {
  std::ostringstream os;
  os << "pylang evaluation report\n";
  os << "problems=" << report.per_problem.size() << '\n';
  os << "problem_pass_rate=" << pct(report.problem_pass_rate) << '\n';
  os << "test_pass_rate=" << pct(report.test_pass_rate) << '\n';
  os << "syntax_error_rate=" << pct(report.syntax_error_rate) << '\n';

  if (report.grouping_key) {
    os << '\n' << "grouping=" << *report.grouping_key << '\n';
    for (const auto& [label, g] : report.by_group) {
      os << "group " << label << " problems=" << g.problems
         << " all_pass=" << g.all_pass << " syntax_errors=" << g.syntax_errors
         << " tests_passed=" << g.tests_passed << " tests_total=" << g.tests_total
         << " problem_pass_rate=" << pct(g.problem_pass_rate())
         << " test_pass_rate=" << pct(g.test_pass_rate()) << '\n';
    }
  }

  os << '\n';
  for (const auto& s : report.per_problem) {
    os << "problem " << s.problem_id << ' ' << to_string(s.status) << ' '
       << s.tests_passed << '/' << s.tests_total << " reward=" << reward_text(s.reward())
       << '\n';
  }
  return os.str();
}

std::string render_gap_report(const GapReport& gap) {
  std::ostringstream os;
  os << "gap report (b - a, percentage points)\n";
  os << "overall=" << signed_points(gap.overall_points) << '\n';
  for (const auto& [label, points] : gap.by_group_points)
    os << "group " << label << '=' << signed_points(points) << '\n';
  return os.str();
}

std::string summary_line(const MetricsReport& report) {
  std::ostringstream os;
  os << "problems=" << report.per_problem.size() << " pass="
     << pct(report.problem_pass_rate) << " testpass=" << pct(report.test_pass_rate)
     << " syntax_err=" << pct(report.syntax_error_rate);
  return os.str();
}

}  // namespace pylang
