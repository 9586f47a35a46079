#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <sstream>

#include "snlw/config.hpp"
#include "snlw/errors.hpp"
#include "snlw/io.hpp"

using namespace snlw;

namespace {

std::vector<std::string> violations_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.violations();
  }
  return {};
}

bool mentions(const std::vector<std::string>& v, const std::string& needle) {
  return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("defaults and round trip") {
  const auto c = parse_config("");
  CHECK(c.grid.L == 32.0);
  CHECK(c.grid.n == 128);
  CHECK(c.noise.seed == 1);
  const auto p = c.schedule_params();
  CHECK(p.alpha == 0.6);
  CHECK(p.beta == 0.3);
  CHECK(c.schedule.alpha == 0.6);
  CHECK(parse_config(c.to_text()).schedule_params().alpha == 0.6);

  const auto edited = parse_config("[noise]\nseed = 17\nN = 3.5\n; comment\n[schedule]\ns = 0.85\n[run]\nout = here\n");
  CHECK(edited.noise.seed == 17);
  CHECK(edited.noise.N == 3.5);
  CHECK(edited.run.out == "here");
  const auto again = parse_config(edited.to_text());
  CHECK(again.to_text() == edited.to_text());
  CHECK(again.schedule_params().beta == doctest::Approx(ScheduleParams::centered(0.85).beta));
}

TEST_CASE("violations are collected together") {
  const auto v = violations_of("[grid]\nn = 7\n[solver]\ndt = -1\n[bogus]\nx = 1\n[noise]\ncolour = red\n");
  CHECK(v.size() >= 4);
  CHECK(mentions(v, "[grid] n"));
  CHECK(mentions(v, "[solver] dt"));
  CHECK(mentions(v, "unknown section [bogus]"));
  CHECK(mentions(v, "unknown key 'colour'"));
  CHECK(mentions(violations_of("[grid]\nL = abc\n"), "L"));
}

TEST_CASE("schedule and geometry messages") {
  const auto v = violations_of("[schedule]\ns = 0.7\n");
  CHECK(mentions(v, "InfeasibleSchedule"));
  CHECK(mentions(v, "4/5"));
  CHECK(mentions(violations_of("[grid]\nL = 8\nn = 64\n"), "cone-wrap"));
  CHECK(mentions(violations_of("[schedule]\nalpha = 0.6\n"), "together"));
  CHECK_THROWS_AS(load_config("/nonexistent/snlw.ini"), ConfigError);
}

TEST_CASE("field dump round trip") {
  const GridSpec g(8.0, 16);
  const RealField f = RealField::sample(g, [](double x, double y) { return x * 0.25 - y * y; });
  const auto bytes = field_dump(f, 0.75, "[grid]\nL = 8\n");
  CHECK(std::string(bytes.begin(), bytes.begin() + 7) == "SNLWFLD");
  const auto back = read_field_dump(bytes);
  CHECK(back.field.values == f.values);
  CHECK(back.field.grid == g);
  CHECK(back.t == 0.75);
  CHECK(back.config_text == "[grid]\nL = 8\n");

  auto broken = bytes;
  broken[0] = 'X';
  CHECK_THROWS_AS(read_field_dump(broken), Error);
  broken = bytes;
  broken.resize(broken.size() - 8);
  CHECK_THROWS_AS(read_field_dump(broken), Error);
}

TEST_CASE("report and trajectory formats") {
  std::vector<TestReport> reports{TestReport::make("first", 0.5, 0.0, 1.0, 10),
                                  TestReport::make("second", -1.0, 0.0, INFINITY, 4)};
  reports[0].note("l", 2.0);
  const auto j = nlohmann::json::parse(reports_json(reports, "cfg"));
  CHECK(j["format_version"] == kArtifactFormatVersion);
  CHECK(j["config"] == "cfg");
  REQUIRE(j["reports"].size() == 2);
  CHECK(j["reports"][0]["pass"] == true);
  CHECK(j["reports"][1]["band_high"] == "inf");
  CHECK(j["reports"][1]["pass"] == false);

  const std::string csv = reports_csv(reports, "a = 1\n");
  CHECK(csv.find("name,statistic,band_low,band_high,samples,pass") != std::string::npos);
  CHECK(csv.rfind('#', 0) == 0);

  StepRecord r;
  r.t = 0.5;
  r.energy.total = 1.0;
  const std::string traj = trajectory_csv({r}, "x");
  std::istringstream lines(traj);
  std::string line, last;
  int data = 0;
  bool header = false;
  while (std::getline(lines, line)) {
    if (line.rfind("t,hs_norm,E_total", 0) == 0) header = true;
    else if (!line.empty() && line[0] != '#') {
      ++data;
      last = line;
    }
  }
  CHECK(header);
  CHECK(data == 1);
  CHECK(last.back() == ',');  // unsmoothed energy leaves log2_N empty
}
