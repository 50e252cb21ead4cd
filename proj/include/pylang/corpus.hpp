#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pylang {

struct TestCase {
  std::string id;
  std::string stdin_text;
  std::optional<std::string> expected_stdout;
  std::optional<long long> expected_return;
};

enum class ProblemSource { Codeforces, Mbpp, Other };
enum class StdlibDependence { Low, Medium, High };

const char* to_string(ProblemSource s);
const char* to_string(StdlibDependence d);

struct Problem {
  std::string id;
  std::string statement;
  std::vector<TestCase> tests;  // non-empty
  ProblemSource source = ProblemSource::Other;
  std::optional<StdlibDependence> stdlib_dependence;  // manual tag
  std::optional<std::string> reference_solution;
};

struct SolutionRecord {
  std::string problem_id;
  std::string raw_model_output;
  std::optional<std::string> extracted_source;
};

// Schema violations carry the offending record number (1-based) and field.
struct CorpusError : std::runtime_error {
  int record = 0;
  std::string field;
  CorpusError(const std::string& message, int record_number, std::string field_name)
      : std::runtime_error(message), record(record_number), field(std::move(field_name)) {}
};

// Corpus files are UTF-8, one JSON record per line:
//   {"id": ..., "statement": ..., "tests": [{"id", "stdin",
//    "expected_stdout"?, "expected_return"?}], "source": "codeforces"|"mbpp"|"other",
//    "stdlib_dependence"?: "low"|"medium"|"high", "reference_solution"?: ...}
// Unknown fields and duplicate ids are rejected.
std::vector<Problem> load_corpus(const std::filesystem::path& path);
std::vector<Problem> parse_corpus(std::istream& in);
void save_corpus(const std::vector<Problem>& problems, std::ostream& out);
void save_corpus(const std::vector<Problem>& problems, const std::filesystem::path& path);

// Pulls PyLang source out of a raw model transcript: first fenced code block
// if one exists, else the suffix from the first `function solve(input)`,
// else the whole trimmed text. Empty/whitespace-only input is the only
// failure (nullopt); downstream it is judged as a syntax error.
std::optional<std::string> extract_code(const std::string& raw_model_output);

// Solutions are either a directory of `<problemId>.txt` files with raw model
// output, or a single JSONL file of records
// {"problem_id": ..., "raw_model_output": ..., "extracted_source"?: ...}.
std::vector<SolutionRecord> load_solutions(const std::filesystem::path& path);

}  // namespace pylang
