#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cycfuse/report.hpp"
#include "cycfuse/scheme.hpp"
#include "doctest.h"
#include "reference.hpp"

using namespace cycfuse;
using refimpl::thrown_code;

namespace {

RunReport sample_report() {
  RunReport r;
  r.command = "verify";
  r.identifier = "B:2,7 m=1";
  r.verdicts = {{"bannai_muzychuk", true}, {"pseudocyclic", true}};
  r.data = {{"q", "8"}, {"b", "-1"}, {"note", "a,b \"quoted\""}};
  r.matrix = {{"1", "1"}, {"1", "-1"}};
  r.records = {{{"tag", "B:2,7"}, {"p", "2"}}};
  r.detail = "";
  r.seconds = 0.25;
  return r;
}

struct CliResult {
  int status = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

CliResult run_cli(const std::string& args) {
  namespace fs = std::filesystem;
  static int seq = 0;
  fs::path base = fs::temp_directory_path() / ("cycfuse_cli_" + std::to_string(getpid()) + "_" +
                                               std::to_string(seq++));
  fs::path of = base.string() + ".out", ef = base.string() + ".err";
  std::string cmd = std::string(CYCFUSE_BIN) + " " + args + " >" + of.string() + " 2>" + ef.string();
  int rc = std::system(cmd.c_str());
  CliResult res;
  res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  res.out = slurp(of);
  res.err = slurp(ef);
  fs::remove(of);
  fs::remove(ef);
  return res;
}

}  // namespace

TEST_CASE("report equality ignores timing") {
  RunReport a = sample_report();
  RunReport b = a;
  b.seconds = 99.0;
  CHECK(a == b);
  b.verdicts["pseudocyclic"] = false;
  CHECK(a != b);
}

TEST_CASE("json round-trip") {
  RunReport r = sample_report();
  std::string text = emit_report(r, ReportFormat::json);
  RunReport back = parse_report_json(text);
  CHECK(back == r);
  CHECK(back.seconds == r.seconds);  // carried, just not compared by ==

  CHECK(thrown_code([] { parse_report_json("{"); }) == errc::parse_error);
  CHECK(thrown_code([] { parse_report_json("{}"); }) == errc::parse_error);
  CHECK(thrown_code([&] { parse_report_json("[1,2]"); }) == errc::parse_error);
  std::string wrong_type = text;
  wrong_type.replace(wrong_type.find("\"version\": 1"), 12, "\"version\": \"x\"");
  CHECK(thrown_code([&] { parse_report_json(wrong_type); }) == errc::parse_error);
}

TEST_CASE("csv and text forms") {
  RunReport r = sample_report();
  std::string csv = emit_report(r, ReportFormat::csv);
  CHECK(csv.find("verdict,bannai_muzychuk,pass") != std::string::npos);
  CHECK(csv.find("\"a,b \"\"quoted\"\"\"") != std::string::npos);  // RFC 4180 quoting
  std::string text = emit_report(r, ReportFormat::text);
  CHECK(text.find("verdict bannai_muzychuk: pass") != std::string::npos);
  CHECK(text.find("b = -1") != std::string::npos);

  CHECK(parse_format("json") == ReportFormat::json);
  CHECK(parse_format("csv") == ReportFormat::csv);
  CHECK(parse_format("text") == ReportFormat::text);
  CHECK(thrown_code([] { parse_format("xml"); }) == errc::parse_error);
}

TEST_CASE("cli verify on a family") {
  CliResult res = run_cli("verify --family B:2,7 --m 1 --format json");
  REQUIRE(res.status == 0);
  RunReport rep = parse_report_json(res.out);
  CHECK(rep.command.find("verify --family B:2,7") != std::string::npos);
  CHECK(rep.identifier == "B:2,7 m=1");
  CHECK(rep.all_pass());
  CHECK(rep.verdicts.at("bannai_muzychuk"));
  CHECK(rep.verdicts.at("pseudocyclic"));
  CHECK(rep.verdicts.at("group_ring"));
  CHECK(rep.verdicts.at("closed_form_grid"));
  CHECK(rep.data.at("b") == "-1");
  CHECK(rep.data.at("q") == "8");

  // determinism: a second run differs only in seconds
  CliResult again = run_cli("verify --family B:2,7 --m 1 --format json");
  REQUIRE(again.status == 0);
  CHECK(parse_report_json(again.out) == rep);
}

TEST_CASE("cli enumeration cap refusal") {
  CliResult res = run_cli("verify --family A:2,3,5 --m 9");
  CHECK(res.status == 2);
  CHECK(res.err.find("FieldTooLarge") != std::string::npos);
}

TEST_CASE("cli scheme-file verify and refutation exit code") {
  namespace fs = std::filesystem;
  auto F8 = build_field_shared(2, 3);
  fs::path good = fs::temp_directory_path() / ("cycfuse_good_" + std::to_string(getpid()));
  {
    TranslationScheme S = cyclotomic_scheme(F8, 7);
    std::ofstream(good) << serialize_scheme(S);
  }
  CliResult res = run_cli("verify --scheme-file " + good.string() + " --format json");
  CHECK(res.status == 0);
  RunReport rep = parse_report_json(res.out);
  CHECK(rep.all_pass());
  fs::remove(good);

  fs::path bad = fs::temp_directory_path() / ("cycfuse_bad_" + std::to_string(getpid()));
  {
    TranslationScheme S(F8, 7, {{0}, {1, 2}, {3, 4, 5, 6}});
    std::ofstream(bad) << serialize_scheme(S);
  }
  res = run_cli("verify --scheme-file " + bad.string() + " --format json");
  CHECK(res.status == 1);  // refutation, not a usage error
  rep = parse_report_json(res.out);
  CHECK_FALSE(rep.all_pass());
  CHECK_FALSE(rep.verdicts.at("bannai_muzychuk"));
  CHECK_FALSE(rep.detail.empty());
  fs::remove(bad);

  res = run_cli("verify --scheme-file /nonexistent/scheme.txt");
  CHECK(res.status == 2);
}

TEST_CASE("cli search and registry") {
  CliResult res = run_cli("search --p-max 5 --p1-max 20 --p2-max 20 --format json");
  REQUIRE(res.status == 0);
  RunReport rep = parse_report_json(res.out);
  bool found = false;
  for (const auto& rec : rep.records) found = found || rec.at("tag") == "A:2,3,5";
  CHECK(found);

  // empty bounds are not an error, just an empty table
  res = run_cli("search --p-max 0 --format json");
  REQUIRE(res.status == 0);
  CHECK(parse_report_json(res.out).records.empty());

  res = run_cli("registry --format csv");
  REQUIRE(res.status == 0);
  CHECK(res.out.find("A:3,7,5") != std::string::npos);
  CHECK(res.out.find("B:41,163") != std::string::npos);
}

TEST_CASE("cli eigenmatrix") {
  CliResult res = run_cli("eigenmatrix --p 2 --f 4 --base-N 5 --format json");
  REQUIRE(res.status == 0);
  RunReport rep = parse_report_json(res.out);
  REQUIRE(rep.matrix.size() == 6);
  CHECK(rep.matrix[0] == std::vector<std::string>{"1", "3", "3", "3", "3", "3"});
  CHECK(rep.matrix[5] == std::vector<std::string>{"1", "3", "-1", "-1", "-1", "-1"});
  // scheme files need this exact digit string
  CHECK(rep.data.at("modulus") == "1 1 0 0 1");
}

TEST_CASE("cli usage errors") {
  CHECK(run_cli("").status == 2);
  CHECK(run_cli("frobnicate").status == 2);
  CHECK(run_cli("verify").status == 2);  // needs --family or --scheme-file
  CHECK(run_cli("verify --family A:2,3,5 --scheme-file x").status == 2);
  CHECK(run_cli("verify --family Q:1").status == 2);
  CHECK(run_cli("search --p-max banana").status == 2);
  CHECK(run_cli("--help").status == 0);
  CHECK(run_cli("eigenmatrix --base-N 5").status == 2);  // no field given
}
