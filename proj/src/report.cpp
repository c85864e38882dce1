#include "cycfuse/report.hpp"

#include <sstream>

#include "cycfuse/error.hpp"
#include "json.hpp"

namespace cycfuse {

ReportFormat parse_format(const std::string& name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  if (name == "text") return ReportFormat::text;
  raise(errc::parse_error, "format must be json, csv or text, not '" + name + "'");
}

bool RunReport::all_pass() const {
  for (const auto& [key, ok] : verdicts)
    if (!ok) return false;
  return true;
}

bool operator==(const RunReport& a, const RunReport& b) {
  return a.version == b.version && a.command == b.command && a.identifier == b.identifier &&
         a.verdicts == b.verdicts && a.data == b.data && a.matrix == b.matrix &&
         a.records == b.records && a.detail == b.detail;
}

namespace {

std::string emit_json_str(const RunReport& r) {
  nlohmann::json j{{"version", r.version},
                   {"command", r.command},
                   {"identifier", r.identifier},
                   {"verdicts", r.verdicts},
                   {"data", r.data},
                   {"matrix", r.matrix},
                   {"records", r.records},
                   {"detail", r.detail},
                   {"seconds", r.seconds}};
  return j.dump(2) + "\n";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string emit_csv_str(const RunReport& r) {
  std::ostringstream os;
  os << "section,key,value\n";
  os << "meta,version," << r.version << "\n";
  os << "meta,command," << csv_field(r.command) << "\n";
  os << "meta,identifier," << csv_field(r.identifier) << "\n";
  for (const auto& [k, v] : r.verdicts)
    os << "verdict," << csv_field(k) << "," << (v ? "pass" : "FAIL") << "\n";
  for (const auto& [k, v] : r.data) os << "data," << csv_field(k) << "," << csv_field(v) << "\n";
  for (std::size_t i = 0; i < r.matrix.size(); ++i) {
    std::string row;
    for (std::size_t j = 0; j < r.matrix[i].size(); ++j)
      row += (j ? "; " : "") + r.matrix[i][j];
    os << "matrix," << i << "," << csv_field(row) << "\n";
  }
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    std::string row;
    for (const auto& [k, v] : r.records[i]) row += k + "=" + v + "; ";
    if (!row.empty()) row.resize(row.size() - 2);
    os << "record," << i << "," << csv_field(row) << "\n";
  }
  if (!r.detail.empty()) os << "meta,detail," << csv_field(r.detail) << "\n";
  os << "meta,seconds," << r.seconds << "\n";
  return os.str();
}

std::string emit_text_str(const RunReport& r) {
  std::ostringstream os;
  os << "cycfuse report v" << r.version << "\n";
  os << "command: " << r.command << "\n";
  if (!r.identifier.empty()) os << "identifier: " << r.identifier << "\n";
  for (const auto& [k, v] : r.verdicts)
    os << "  verdict " << k << ": " << (v ? "pass" : "FAIL") << "\n";
  for (const auto& [k, v] : r.data) os << "  " << k << " = " << v << "\n";
  for (const auto& row : r.matrix) {
    os << "  [";
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? ", " : "") << row[j];
    os << "]\n";
  }
  for (const auto& rec : r.records) {
    os << " ";
    for (const auto& [k, v] : rec) os << " " << k << "=" << v;
    os << "\n";
  }
  if (!r.detail.empty()) os << "detail: " << r.detail << "\n";
  os << "seconds: " << r.seconds << "\n";
  return os.str();
}

}  // namespace

std::string emit_report(const RunReport& r, ReportFormat fmt) {
  switch (fmt) {
    case ReportFormat::json: return emit_json_str(r);
    case ReportFormat::csv: return emit_csv_str(r);
    default: return emit_text_str(r);
  }
}

RunReport parse_report_json(const std::string& text) {
  try {
    nlohmann::json j = nlohmann::json::parse(text);
    RunReport r;
    r.version = j.at("version").get<int>();
    r.command = j.at("command").get<std::string>();
    r.identifier = j.at("identifier").get<std::string>();
    r.verdicts = j.at("verdicts").get<std::map<std::string, bool>>();
    r.data = j.at("data").get<std::map<std::string, std::string>>();
    r.matrix = j.at("matrix").get<std::vector<std::vector<std::string>>>();
    r.records = j.at("records").get<std::vector<std::map<std::string, std::string>>>();
    r.detail = j.at("detail").get<std::string>();
    r.seconds = j.at("seconds").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    raise(errc::parse_error, std::string("report: ") + e.what());
  }
}

}  // namespace cycfuse
