// Compares the serial and OpenMP-parallel judging paths on a synthetic
// corpus and verifies that both produce the identical report.

#include <chrono>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "pylang/corpus.hpp"
#include "pylang/metrics.hpp"

namespace {

using namespace pylang;

// A loop-heavy program: sums 0..n-1 with explicit counters.
std::string make_program(long n) {
  std::string s = std::to_string(n);
  return "function solve(input) {\n"
         "    total = 0;\n"
         "    i = 0;\n"
         "    while (i < " + s + ") {\n"
         "        total = total + i;\n"
         "        i = i + 1;\n"
         "    }\n"
         "    print(total);\n"
         "    return 0;\n"
         "}\n";
}

std::vector<Problem> make_corpus(int count, long loop_iters) {
  std::vector<Problem> problems;
  for (int i = 0; i < count; ++i) {
    long n = loop_iters + i;
    Problem p;
    p.id = "bench" + std::to_string(i);
    p.statement = "sum the first n integers";
    p.source = ProblemSource::Other;
    TestCase t;
    t.id = "t0";
    t.stdin_text = "";
    t.expected_stdout = std::to_string(n * (n - 1) / 2) + "\n";
    p.tests.push_back(std::move(t));
    problems.push_back(std::move(p));
  }
  return problems;
}

double run_timed(const char* label, std::vector<ProblemScore>& out,
                 const std::function<std::vector<ProblemScore>()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  out = fn();
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  std::cout << label << ": " << ms << " ms\n";
  return static_cast<double>(ms);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark: serial vs parallel judging"};
  int problems = 64;
  long loop_iters = 40000;
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  bool quick = false;
  app.add_option("--problems", problems, "Synthetic problem count");
  app.add_option("--loop-iters", loop_iters, "Loop iterations per judged program");
  app.add_option("--jobs", jobs, "Parallel worker count");
  app.add_flag("--quick", quick, "Small sizes for CI");
  CLI11_PARSE(app, argc, argv);

  if (quick) {
    problems = 8;
    loop_iters = 4000;
  }
  if (jobs < 2) jobs = 2;

  auto corpus = make_corpus(problems, loop_iters);
  std::vector<SolutionInput> solutions;
  for (int i = 0; i < problems; ++i)
    solutions.push_back(SolutionInput::of(make_program(loop_iters + i)));

  ExecLimits limits;
  std::cout << "problems=" << problems << " loop_iters=" << loop_iters
            << " jobs=" << jobs << "\n";

  std::vector<ProblemScore> serial_scores, parallel_scores;
  double serial_ms = run_timed("serial  ", serial_scores, [&] {
    return score_batch_serial(corpus, solutions, limits);
  });
  double parallel_ms = run_timed("parallel", parallel_scores, [&] {
    return score_batch(corpus, solutions, limits, jobs);
  });

  std::string serial_report = render_report(aggregate(std::move(serial_scores)));
  std::string parallel_report = render_report(aggregate(std::move(parallel_scores)));
  if (serial_report != parallel_report) {
    std::cerr << "FAIL: serial and parallel reports differ\n";
    return 1;
  }
  std::cout << "reports identical\n";
  if (parallel_ms > 0)
    std::cout << "speedup: " << serial_ms / parallel_ms << "x\n";
  return 0;
}
