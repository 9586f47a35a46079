#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "snlw/cli.hpp"
#include "snlw/io.hpp"

using namespace snlw;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("snlw_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

int cli(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "snlw");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str() + err.str();
  return code;
}

const char* kSmall =
    "[grid]\nL = 16\nn = 64\n[noise]\nN = 3\namplitude = 0.2\n[solver]\ndt = 0.125\n"
    "[cutoff]\nR = 1\n[run]\nT = 0.5\n";

}  // namespace

TEST_CASE("simulate is reproducible byte for byte") {
  const fs::path dir = fresh_dir("repro");
  write_text(dir / "small.ini", kSmall);
  const std::string cfg = (dir / "small.ini").string();
  const char* files[] = {"trajectory.csv", "schedule.csv", "final_v.bin", "final_v_t.bin"};
  REQUIRE(cli({"simulate", "--config", cfg, "--out", (dir / "a").string()}) == kExitPass);
  std::vector<std::string> first;
  for (const char* file : files) first.push_back(slurp(dir / "a" / file));
  REQUIRE(cli({"simulate", "--config", cfg, "--out", (dir / "a").string()}) == kExitPass);
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK_MESSAGE(!first[i].empty(), files[i]);
    CHECK_MESSAGE(first[i] == slurp(dir / "a" / files[i]), files[i]);
  }
  REQUIRE(cli({"simulate", "--config", cfg, "--seed-override", "99", "--out", (dir / "c").string()}) == kExitPass);
  CHECK(slurp(dir / "a" / "final_v.bin") != slurp(dir / "c" / "final_v.bin"));
  const auto dump = read_field_dump(
      [&] {
        const std::string s = slurp(dir / "a" / "final_v.bin");
        return std::vector<unsigned char>(s.begin(), s.end());
      }());
  CHECK(dump.t == doctest::Approx(0.5));
}

TEST_CASE("exit codes") {
  const fs::path dir = fresh_dir("codes");
  std::string text;
  CHECK(cli({"no-such-command"}) == kExitConfigError);
  CHECK(cli({}) == kExitConfigError);
  CHECK(cli({"--help"}) == kExitPass);

  write_text(dir / "bad.ini", "[schedule]\ns = 0.7\n");
  CHECK(cli({"simulate", "--config", (dir / "bad.ini").string(), "--out", dir.string()}, &text) == kExitConfigError);
  CHECK(text.find("InfeasibleSchedule") != std::string::npos);
  CHECK(cli({"schedule", "--config", (dir / "missing.ini").string()}) == kExitConfigError);

  write_text(dir / "blow.ini",
             "[grid]\nL = 16\nn = 64\n[solver]\ndt = 0.125\nblowup_threshold = 1e-3\n[cutoff]\nR = 1\n[run]\nT = 0.5\n");
  CHECK(cli({"simulate", "--config", (dir / "blow.ini").string(), "--out", dir.string()}) == kExitRuntimeError);

  write_text(dir / "sched.ini", "[schedule]\ns = 0.95\n");
  CHECK(cli({"schedule", "--config", (dir / "sched.ini").string(), "--out", (dir / "s").string()}) == kExitPass);
  CHECK(fs::exists(dir / "s" / "schedule.json"));
}

TEST_CASE("corrupted counterterm is flagged by verify-noise") {
  const fs::path dir = fresh_dir("fault");
  const std::string base = "[verify]\nseeds = 60\nN = 8\nn = 32\n";
  write_text(dir / "fault.ini", base + "inject_sigma_fault = true\n");
  std::string text;
  CHECK(cli({"verify-noise", "--config", (dir / "fault.ini").string(), "--out", (dir / "f").string()}, &text) ==
        kExitTestFailure);
  CHECK(fs::exists(dir / "f" / "reports.json"));
  CHECK(fs::exists(dir / "f" / "summary.csv"));
}
