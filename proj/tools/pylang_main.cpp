#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "pylang/corpus.hpp"
#include "pylang/lexer.hpp"
#include "pylang/metrics.hpp"
#include "pylang/parser.hpp"
#include "pylang/prelude.hpp"
#include "pylang/runtime.hpp"

namespace {

using namespace pylang;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream content;
  content << in.rdbuf();
  return content.str();
}

std::string read_all_stdin() {
  std::ostringstream content;
  content << std::cin.rdbuf();
  return content.str();
}

void print_diagnostic(const std::string& file, Span span, const std::string& category,
                      const std::string& message) {
  std::cerr << file << ':' << span.line << ':' << span.column << ": " << category
            << ": " << message << '\n';
}

struct LimitFlags {
  std::int64_t max_steps = 0;
  std::int64_t max_wall_ms = 0;
  std::int64_t max_output_bytes = 0;
  int max_recursion = 0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--max-steps", max_steps, "Step budget (PYLANG_MAX_STEPS overrides the default)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-wall-ms", max_wall_ms, "Wall clock limit in milliseconds")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-output-bytes", max_output_bytes, "Captured output limit")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-recursion", max_recursion, "Nested call limit")
        ->check(CLI::PositiveNumber);
  }

  // Flags win over the environment; the environment wins over defaults.
  ExecLimits resolve() const {
    ExecLimits limits;
    if (const char* env = std::getenv("PYLANG_MAX_STEPS")) {
      char* end = nullptr;
      long long v = std::strtoll(env, &end, 10);
      if (end == env || *end != '\0' || v <= 0)
        throw CLI::ValidationError("PYLANG_MAX_STEPS",
                                   "must be a positive integer, got '" +
                                       std::string(env) + "'");
      limits.max_steps = v;
    }
    if (max_steps > 0) limits.max_steps = max_steps;
    if (max_wall_ms > 0) limits.max_wall_millis = max_wall_ms;
    if (max_output_bytes > 0) limits.max_output_bytes = max_output_bytes;
    if (max_recursion > 0) limits.max_recursion = max_recursion;
    return limits;
  }
};

int cmd_run(const std::string& program_path, const std::optional<std::string>& input_path,
            const std::optional<std::string>& stdin_literal, const ExecLimits& limits) {
  auto source = read_file(program_path);
  if (!source) {
    std::cerr << "error: cannot read program file '" << program_path << "'\n";
    return 1;
  }
  std::string stdin_text;
  if (stdin_literal) {
    stdin_text = *stdin_literal;
  } else if (input_path) {
    auto data = read_file(*input_path);
    if (!data) {
      std::cerr << "error: cannot read input file '" << *input_path << "'\n";
      return 1;
    }
    stdin_text = *data;
  } else {
    stdin_text = read_all_stdin();
  }

  RunOutcome outcome = run_source(*source, stdin_text, limits);
  std::cout << outcome.stdout_text;
  std::cout.flush();
  if (outcome.status != RunStatus::Completed)
    print_diagnostic(program_path, outcome.error_span, to_string(outcome.status),
                     outcome.error_detail);
  return exit_code_for(outcome.status);
}

int cmd_check(const std::string& program_path, bool show_tokens, bool show_ast) {
  auto source = read_file(program_path);
  if (!source) {
    std::cerr << "error: cannot read program file '" << program_path << "'\n";
    return 1;
  }
  try {
    auto tokens = tokenize(*source);
    if (show_tokens) std::cout << dump_tokens(tokens);
    Program program = parse_program(tokens);
    if (show_ast) std::cout << dump_ast(program);
  } catch (const LexError& e) {
    print_diagnostic(program_path, e.span, "syntax error", e.what());
    return 2;
  } catch (const ParseError& e) {
    print_diagnostic(program_path, e.span, "syntax error", e.what());
    return 2;
  }
  return 0;
}

int cmd_eval(const std::string& corpus_path, const std::string& solutions_path,
             const std::string& report_path, const std::optional<std::string>& group_key,
             int jobs, bool strict, const ExecLimits& limits) {
  std::vector<Problem> problems;
  std::vector<SolutionRecord> records;
  try {
    problems = load_corpus(corpus_path);
    records = load_solutions(solutions_path);
  } catch (const CorpusError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  if (problems.empty()) {
    std::cerr << "error: corpus is empty\n";
    return 1;
  }

  std::map<std::string, const SolutionRecord*> by_id;
  for (const auto& rec : records) {
    if (!by_id.emplace(rec.problem_id, &rec).second) {
      std::cerr << "error: duplicate solution for problem '" << rec.problem_id << "'\n";
      return 1;
    }
  }
  for (const auto& [id, rec] : by_id) {
    bool known = false;
    for (const auto& p : problems)
      if (p.id == id) {
        known = true;
        break;
      }
    if (!known) {
      std::cerr << "error: solution references unknown problem id '" << id << "'\n";
      return 1;
    }
  }

  // Missing solutions score as full failures; transcripts that yield no code
  // score as syntax errors.
  std::vector<SolutionInput> inputs;
  inputs.reserve(problems.size());
  for (const auto& p : problems) {
    auto it = by_id.find(p.id);
    if (it == by_id.end()) {
      inputs.push_back(SolutionInput::missing());
      continue;
    }
    const SolutionRecord& rec = *it->second;
    if (rec.extracted_source) {
      inputs.push_back(SolutionInput::of(*rec.extracted_source));
      continue;
    }
    auto extracted = extract_code(rec.raw_model_output);
    inputs.push_back(extracted ? SolutionInput::of(*extracted)
                               : SolutionInput::extraction_failed());
  }

  std::map<std::string, std::string> grouping;
  if (group_key) {
    for (const auto& p : problems) {
      if (*group_key == "stdlib_dependence")
        grouping[p.id] =
            p.stdlib_dependence ? to_string(*p.stdlib_dependence) : "untagged";
      else if (*group_key == "source")
        grouping[p.id] = to_string(p.source);
    }
  }

  auto scores = score_batch(problems, inputs, limits, jobs, strict);
  MetricsReport report =
      aggregate(std::move(scores), group_key ? &grouping : nullptr, group_key);

  std::ofstream out(report_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write report to '" << report_path << "'\n";
    return 1;
  }
  out << render_report(report);
  out.close();

  std::cout << summary_line(report) << '\n';
  return 0;
}

int cmd_prelude_list() {
  for (const auto& r : prelude_routines())
    std::cout << r.name << " (arity " << r.arity << "): " << r.doc << '\n';
  return 0;
}

int cmd_prelude_cat(const std::string& name) {
  const PreludeRoutine* routine = find_prelude_routine(name);
  if (!routine) {
    std::cerr << "error: no prelude routine named '" << name << "'\n";
    return 1;
  }
  std::cout << routine->source;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PyLang interpreter and evaluation harness"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Execute a program against one stdin");
  std::string run_program;
  std::optional<std::string> run_input, run_literal;
  LimitFlags run_limits;
  run->add_option("program", run_program, "Program file (.pyl)")->required();
  auto* input_opt = run->add_option("--input", run_input, "Read stdin from this file");
  run->add_option("--stdin-literal", run_literal, "Use this string as stdin")
      ->excludes(input_opt);
  run_limits.add_to(run);

  // check
  auto* check = app.add_subcommand("check", "Parse a program without running it");
  std::string check_program;
  bool check_tokens = false, check_ast = false;
  check->add_option("program", check_program, "Program file (.pyl)")->required();
  check->add_flag("--tokens", check_tokens, "Print the token stream");
  check->add_flag("--ast", check_ast, "Print the syntax tree");

  // eval
  auto* eval = app.add_subcommand("eval", "Judge solutions against a corpus");
  std::string eval_corpus, eval_solutions, eval_report;
  std::optional<std::string> eval_group;
  int eval_jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (eval_jobs < 1) eval_jobs = 1;
  bool eval_strict = false;
  LimitFlags eval_limits;
  eval->add_option("--corpus", eval_corpus, "Corpus file (JSONL)")->required();
  eval->add_option("--solutions", eval_solutions,
                   "Directory of <problemId>.txt files or a JSONL file")
      ->required();
  eval->add_option("--report", eval_report, "Report output path")->required();
  eval->add_option("--group", eval_group,
                   "Group results by this key: stdlib_dependence or source")
      ->check(CLI::IsMember({"stdlib_dependence", "source"}));
  eval->add_option("--jobs", eval_jobs, "Judging worker count")->check(CLI::PositiveNumber);
  eval->add_flag("--strict", eval_strict, "Byte-exact output comparison");
  eval_limits.add_to(eval);

  // prelude
  auto* prelude = app.add_subcommand("prelude", "Inspect the routine library");
  prelude->require_subcommand(1);
  auto* plist = prelude->add_subcommand("list", "List available routines");
  auto* pcat = prelude->add_subcommand("cat", "Print a routine's source");
  std::string pcat_name;
  pcat->add_option("name", pcat_name, "Routine name")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_program, run_input, run_literal, run_limits.resolve());
    if (check->parsed()) return cmd_check(check_program, check_tokens, check_ast);
    if (eval->parsed())
      return cmd_eval(eval_corpus, eval_solutions, eval_report, eval_group, eval_jobs,
                      eval_strict, eval_limits.resolve());
    if (plist->parsed()) return cmd_prelude_list();
    if (pcat->parsed()) return cmd_prelude_cat(pcat_name);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
