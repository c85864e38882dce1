#pragma once
#include <map>
#include <string>
#include <vector>

namespace cycfuse {

enum class ReportFormat { json, csv, text };

ReportFormat parse_format(const std::string& name);

// One CLI run. Everything except `seconds` is deterministic for fixed inputs
// and version; `seconds` is informational and excluded from equality.
struct RunReport {
  int version = 1;
  std::string command;
  std::string identifier;
  std::map<std::string, bool> verdicts;        // asserted checks
  std::map<std::string, std::string> data;     // scalar payloads
  std::vector<std::vector<std::string>> matrix;  // eigenmatrix rows, rendered
  std::vector<std::map<std::string, std::string>> records;  // search/registry rows
  std::string detail;  // first failure, empty when clean
  double seconds = 0;

  bool all_pass() const;
};

bool operator==(const RunReport& a, const RunReport& b);
inline bool operator!=(const RunReport& a, const RunReport& b) { return !(a == b); }

std::string emit_report(const RunReport& r, ReportFormat fmt);
// Inverse of emit_report(., json); raises ParseError on malformed input.
RunReport parse_report_json(const std::string& text);

}  // namespace cycfuse
