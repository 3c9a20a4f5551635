#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hardedge/cli.hpp"
#include "json.hpp"

using namespace hardedge;
using namespace hardedge::cli;

namespace {
std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("hardedge_test_" + name);
}

RunConfig finite_config() {
  RunConfig c;
  c.subcommand = "finite";
  c.alpha = 1;
  c.beta = 2;
  c.n = 6;
  c.t = GridSpec::parse("0.1:0.9:9");
  c.bits = 256;
  return c;
}
}  // namespace

TEST_CASE("grid parsing") {
  const auto lin = GridSpec::parse("0.1:0.9:9");
  CHECK(lin.count == 9);
  CHECK_FALSE(lin.log);
  const auto v = lin.values();
  REQUIRE(v.size() == 9);
  CHECK(v[2] == 0.3);
  CHECK(v.front() == 0.1);
  CHECK(v.back() == 0.9);

  const auto lg = GridSpec::parse("400:900:5:log");
  CHECK(lg.log);
  const auto w = lg.values();
  CHECK(w.front() == 400.0);
  CHECK(w.back() == 900.0);
  CHECK(w[2] == doctest::Approx(600.0));
  CHECK(w[1] / w[0] == doctest::Approx(w[2] / w[1]));

  const auto one = GridSpec::parse("25");
  CHECK(one.values() == std::vector<double>{25.0});
  CHECK(one.str() == "25");
  CHECK(lg.str() == "400:900:5:log");
  CHECK(GridSpec::parse("1:2:3:lin").values().size() == 3);

  for (const char* bad : {"", "1:2", "a:2:3", "2:1:3", "1:2:0", "1:2:2.5", "0:1:3:log", "1:2:3:cubic", "1:2:3:log:x"}) {
    CHECK_THROWS_AS(GridSpec::parse(bad), UsageError);
  }
}

TEST_CASE("config validation and canonical json") {
  RunConfig c = finite_config();
  CHECK_NOTHROW(c.validate());
  const auto j = nlohmann::json::parse(c.to_json());
  CHECK(j["subcommand"] == "finite");
  CHECK(j["t"] == "0.1:0.9:9");
  CHECK(j["bits"] == 256);
  // Keys are emitted sorted with no whitespace.
  CHECK(c.to_json() == j.dump());
  CHECK(c.to_json().find(' ') == std::string::npos);

  auto broken = [&](auto mutate) {
    RunConfig d = finite_config();
    mutate(d);
    return d;
  };
  CHECK_THROWS_AS(broken([](RunConfig& d) { d.subcommand = "nope"; }).validate(), UsageError);
  CHECK_THROWS_AS(broken([](RunConfig& d) { d.bits = 40; }).validate(), UsageError);
  CHECK_THROWS_AS(broken([](RunConfig& d) { d.alpha = -1; }).validate(), UsageError);
  CHECK_THROWS_AS(broken([](RunConfig& d) { d.n = 0; }).validate(), UsageError);
  CHECK_THROWS_AS(broken([](RunConfig& d) { d.t = GridSpec::parse("0.5:1.5:3"); }).validate(), UsageError);
  CHECK_THROWS_AS(broken([](RunConfig& d) { d.subcommand = "validate"; }).validate(), UsageError);
  CHECK_THROWS_AS(broken([](RunConfig& d) { d.subcommand = "mc"; d.alpha = 0.5; }).validate(), UsageError);
  CHECK_THROWS_AS(broken([](RunConfig& d) { d.subcommand = "constant"; d.s = GridSpec::parse("50:900:5"); }).validate(),
                  UsageError);
}

TEST_CASE("finite report shape and exit status") {
  const RunConfig c = finite_config();
  const Report r = build_report(c);
  CHECK(r.columns == std::vector<std::string>{"t", "log_p", "h_n"});
  REQUIRE(r.rows.size() == 9);
  CHECK(r.all_pass());
  CHECK(r.digits == report_digits(256));
  CHECK(report_digits(256) == 30);
  CHECK(report_digits(128) == 30);
  CHECK(report_digits(64) == 19);
  CHECK(report_digits(53) == 16);

  std::ostringstream os;
  r.write(os, c);
  std::istringstream lines(os.str());
  std::string header, cols, first;
  std::getline(lines, header);
  std::getline(lines, cols);
  std::getline(lines, first);
  CHECK(header == "# hardedge v1.0 config=" + c.to_json());
  CHECK(cols == "t,log_p,h_n,pass,error");
  CHECK(first.rfind("0.1,", 0) == 0);
  CHECK(first.find(",true,") != std::string::npos);

  RunConfig json_cfg = c;
  json_cfg.format = Format::json;
  std::ostringstream js;
  r.write(js, json_cfg);
  const auto doc = nlohmann::json::parse(js.str());
  CHECK(doc["version"] == "1.0");
  CHECK(doc["rows"].size() == 9);
  CHECK(doc["rows"][0]["pass"] == true);
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
  RunConfig c = finite_config();
  c.out = temp_file("a.csv").string();
  CHECK(run(c) == 0);
  RunConfig d = c;
  d.out = temp_file("b.csv").string();
  CHECK(run(d) == 0);
  CHECK(slurp(c.out) == slurp(d.out));

  // Thread count is part of the config header; the rows must not change.
  RunConfig e = c;
  e.threads = 4;
  e.out = temp_file("c.csv").string();
  CHECK(run(e) == 0);
  auto body = [](const std::string& s) { return s.substr(s.find('\n')); };
  CHECK(body(slurp(c.out)) == body(slurp(e.out)));
  for (const auto& p : {c.out, d.out, e.out}) std::filesystem::remove(p);
}

TEST_CASE("exit codes") {
  RunConfig bad = finite_config();
  bad.n = 0;
  CHECK(run(bad) == 2);

  // A numerical failure is a row with pass=false and exit 1: a doubling
  // check with far too few points.
  RunConfig f;
  f.subcommand = "fredholm";
  f.alpha = 0.5;
  f.s = GridSpec::parse("400");
  f.m = 6;
  f.check_doubling = true;
  f.out = temp_file("fail.csv").string();
  CHECK(run(f) == 1);
  CHECK(slurp(f.out).find(",false,") != std::string::npos);
  std::filesystem::remove(f.out);
}

TEST_CASE("discrepancy columns are differences of their value columns") {
  RunConfig c;
  c.subcommand = "validate";
  c.suite = "closed-form";
  c.alpha = 1;
  c.beta = 2;
  c.n = 5;
  const Report r = build_report(c);
  REQUIRE(r.rows.size() == 5);
  PrecisionScope scope(PrecisionCtx(256).guarded());
  for (const auto& row : r.rows) {
    CHECK(row.cells[3].real == row.cells[1].real - row.cells[2].real);
    CHECK(row.pass);
  }
}

TEST_CASE("constant extraction at alpha = 1/2") {
  const auto est = constant_extract(0.5, 400, 900, 3, 0, PrecisionCtx(200));
  CHECK(est.s_values.size() == 3);
  CHECK(est.points.front() == 54);
  CHECK(est.error.to_double() < 1e-3);
  CHECK_THROWS(constant_extract(0.5, 50, 900, 3, 0, PrecisionCtx(200)));
}
