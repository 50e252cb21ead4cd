#include "pylang/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace pylang {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void schema_error(int record, const std::string& field,
                               const std::string& why) {
  std::ostringstream os;
  os << "record " << record;
  if (!field.empty()) os << ", field '" << field << "'";
  os << ": " << why;
  throw CorpusError(os.str(), record, field);
}

void reject_unknown_fields(const json& obj, std::initializer_list<const char*> allowed,
                           int record, const std::string& context) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = std::any_of(allowed.begin(), allowed.end(),
                             [&](const char* name) { return it.key() == name; });
    if (!known)
      schema_error(record, it.key(), "unknown field" +
                                         (context.empty() ? "" : " in " + context));
  }
}

std::string require_string(const json& obj, const char* field, int record) {
  auto it = obj.find(field);
  if (it == obj.end()) schema_error(record, field, "missing required field");
  if (!it->is_string()) schema_error(record, field, "must be a string");
  return it->get<std::string>();
}

TestCase parse_test(const json& j, int record, std::set<std::string>& seen_ids) {
  if (!j.is_object()) schema_error(record, "tests", "each test must be an object");
  reject_unknown_fields(j, {"id", "stdin", "expected_stdout", "expected_return"},
                        record, "test");
  TestCase t;
  t.id = require_string(j, "id", record);
  if (t.id.empty()) schema_error(record, "id", "test id must be non-empty");
  if (!seen_ids.insert(t.id).second)
    schema_error(record, "id", "duplicate test id '" + t.id + "'");
  t.stdin_text = require_string(j, "stdin", record);
  if (auto it = j.find("expected_stdout"); it != j.end()) {
    if (!it->is_string()) schema_error(record, "expected_stdout", "must be a string");
    t.expected_stdout = it->get<std::string>();
  }
  if (auto it = j.find("expected_return"); it != j.end()) {
    if (!it->is_number_integer())
      schema_error(record, "expected_return", "must be an integer");
    t.expected_return = it->get<long long>();
  }
  if (!t.expected_stdout && !t.expected_return)
    schema_error(record, "tests",
                 "test '" + t.id +
                     "' needs expected_stdout or expected_return (or both)");
  return t;
}

Problem parse_problem(const json& j, int record) {
  if (!j.is_object()) schema_error(record, "", "record must be a JSON object");
  reject_unknown_fields(j,
                        {"id", "statement", "tests", "source", "stdlib_dependence",
                         "reference_solution"},
                        record, "");
  Problem p;
  p.id = require_string(j, "id", record);
  if (p.id.empty()) schema_error(record, "id", "problem id must be non-empty");
  p.statement = require_string(j, "statement", record);

  auto tests = j.find("tests");
  if (tests == j.end()) schema_error(record, "tests", "missing required field");
  if (!tests->is_array() || tests->empty())
    schema_error(record, "tests", "must be a non-empty array");
  std::set<std::string> test_ids;
  for (const auto& tj : *tests) p.tests.push_back(parse_test(tj, record, test_ids));

  std::string source = require_string(j, "source", record);
  if (source == "codeforces") p.source = ProblemSource::Codeforces;
  else if (source == "mbpp") p.source = ProblemSource::Mbpp;
  else if (source == "other") p.source = ProblemSource::Other;
  else schema_error(record, "source", "must be one of codeforces, mbpp, other");

  if (auto it = j.find("stdlib_dependence"); it != j.end()) {
    if (!it->is_string()) schema_error(record, "stdlib_dependence", "must be a string");
    std::string dep = it->get<std::string>();
    if (dep == "low") p.stdlib_dependence = StdlibDependence::Low;
    else if (dep == "medium") p.stdlib_dependence = StdlibDependence::Medium;
    else if (dep == "high") p.stdlib_dependence = StdlibDependence::High;
    else schema_error(record, "stdlib_dependence", "must be one of low, medium, high");
  }
  if (auto it = j.find("reference_solution"); it != j.end()) {
    if (!it->is_string()) schema_error(record, "reference_solution", "must be a string");
    p.reference_solution = it->get<std::string>();
  }
  return p;
}

json test_to_json(const TestCase& t) {
  json j;
  j["id"] = t.id;
  j["stdin"] = t.stdin_text;
  if (t.expected_stdout) j["expected_stdout"] = *t.expected_stdout;
  if (t.expected_return) j["expected_return"] = *t.expected_return;
  return j;
}

json problem_to_json(const Problem& p) {
  json j;
  j["id"] = p.id;
  j["statement"] = p.statement;
  j["tests"] = json::array();
  for (const auto& t : p.tests) j["tests"].push_back(test_to_json(t));
  j["source"] = to_string(p.source);
  if (p.stdlib_dependence) j["stdlib_dependence"] = to_string(*p.stdlib_dependence);
  if (p.reference_solution) j["reference_solution"] = *p.reference_solution;
  return j;
}

}  // namespace

const char* to_string(ProblemSource s) {
  switch (s) {
    case ProblemSource::Codeforces: return "codeforces";
    case ProblemSource::Mbpp: return "mbpp";
    case ProblemSource::Other: return "other";
  }
  return "other";
}

const char* to_string(StdlibDependence d) {
  switch (d) {
    case StdlibDependence::Low: return "low";
    case StdlibDependence::Medium: return "medium";
    case StdlibDependence::High: return "high";
  }
  return "low";
}

std::vector<Problem> parse_corpus(std::istream& in) {
  std::vector<Problem> out;
  std::set<std::string> ids;
  std::string line;
  int record = 0;
  while (std::getline(in, line)) {
    ++record;
    if (trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      schema_error(record, "", std::string("invalid JSON: ") + e.what());
    }
    Problem p = parse_problem(j, record);
    if (!ids.insert(p.id).second)
      schema_error(record, "id", "duplicate problem id '" + p.id + "'");
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Problem> load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot open corpus file: " + path.string(), 0, "");
  return parse_corpus(in);
}

void save_corpus(const std::vector<Problem>& problems, std::ostream& out) {
  for (const auto& p : problems) out << problem_to_json(p).dump() << '\n';
}

void save_corpus(const std::vector<Problem>& problems,
                 const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CorpusError("cannot open file for writing: " + path.string(), 0, "");
  save_corpus(problems, out);
}

std::optional<std::string> extract_code(const std::string& raw_model_output) {
  std::string whole = trim(raw_model_output);
  if (whole.empty()) return std::nullopt;

  // First fenced code block, if the fence is closed. The language tag on the
  // opening fence line is ignored.
  {
    std::vector<std::pair<size_t, size_t>> lines;  // [begin, end) offsets
    size_t start = 0;
    while (start <= raw_model_output.size()) {
      size_t end = raw_model_output.find('\n', start);
      if (end == std::string::npos) end = raw_model_output.size();
      lines.emplace_back(start, end);
      if (end == raw_model_output.size()) break;
      start = end + 1;
    }
    auto is_fence = [&](size_t idx) {
      size_t b = lines[idx].first, e = lines[idx].second;
      while (b < e && (raw_model_output[b] == ' ' || raw_model_output[b] == '\t')) ++b;
      return e - b >= 3 && raw_model_output.compare(b, 3, "```") == 0;
    };
    size_t open = lines.size();
    for (size_t i = 0; i < lines.size(); ++i) {
      if (!is_fence(i)) continue;
      if (open == lines.size()) {
        open = i;
      } else {
        size_t content_begin = lines[open].second + 1;
        size_t content_end = lines[i].first;
        if (content_begin >= content_end) return std::nullopt;  // empty block
        return trim(raw_model_output.substr(content_begin, content_end - content_begin));
      }
    }
  }

  size_t marker = raw_model_output.find("function solve(input)");
  if (marker != std::string::npos) return trim(raw_model_output.substr(marker));

  return whole;
}

std::vector<SolutionRecord> load_solutions(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  std::vector<SolutionRecord> out;
  std::set<std::string> ids;

  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt")
        files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      std::ifstream in(file, std::ios::binary);
      if (!in) throw CorpusError("cannot open solution file: " + file.string(), 0, "");
      std::ostringstream content;
      content << in.rdbuf();
      SolutionRecord rec;
      rec.problem_id = file.stem().string();
      rec.raw_model_output = content.str();
      out.push_back(std::move(rec));
    }
    return out;
  }

  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot open solutions file: " + path.string(), 0, "");
  std::string line;
  int record = 0;
  while (std::getline(in, line)) {
    ++record;
    if (trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      schema_error(record, "", std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) schema_error(record, "", "record must be a JSON object");
    reject_unknown_fields(j, {"problem_id", "raw_model_output", "extracted_source"},
                          record, "");
    SolutionRecord rec;
    rec.problem_id = require_string(j, "problem_id", record);
    rec.raw_model_output = require_string(j, "raw_model_output", record);
    if (auto it = j.find("extracted_source"); it != j.end()) {
      if (!it->is_string()) schema_error(record, "extracted_source", "must be a string");
      rec.extracted_source = it->get<std::string>();
    }
    if (!ids.insert(rec.problem_id).second)
      schema_error(record, "problem_id",
                   "duplicate solution for problem '" + rec.problem_id + "'");
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace pylang
